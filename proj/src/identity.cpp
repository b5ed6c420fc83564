// SPDX-License-Identifier: Apache-2.0
#include "ibc/identity.hpp"

#include <cctype>

#include "ibc/errors.hpp"

namespace ibc {

std::string normalize_identity(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    if (c == ' ' || c == '-' || c == '(' || c == ')') continue;
    out.push_back(c);
  }
  if (out.size() < 2 || out[0] != '+') {
    throw InvalidIdentity("identity must start with '+' and a country code");
  }
  std::size_t digits = out.size() - 1;
  if (digits < 7 || digits > 15) {
    throw InvalidIdentity("identity must contain 7..15 digits");
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(out[i]))) {
      throw InvalidIdentity("identity contains a non-digit");
    }
  }
  return out;
}

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace ibc {

/// Canonicalizes a phone-number identity: strips spaces, hyphens and
/// parentheses, then requires '+' followed by 7..15 digits (E.164 shape).
/// Throws InvalidIdentity otherwise.
std::string normalize_identity(const std::string& raw);

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ibc/ibe.hpp"

namespace ibc {

namespace pkgwire {
inline constexpr std::uint8_t kOpExtract = 0x01;
inline constexpr std::uint8_t kOpGetParams = 0x02;

inline constexpr std::uint8_t kStatusOk = 0x00;
inline constexpr std::uint8_t kStatusAuthFail = 0x01;
inline constexpr std::uint8_t kStatusBadIdentity = 0x02;
inline constexpr std::uint8_t kStatusMalformed = 0x03;

/// Frames larger than this are rejected as malformed before any parsing.
inline constexpr std::uint32_t kMaxFrameLen = 1 << 20;
}  // namespace pkgwire

struct IssueRecord {
  std::string identity;
  std::uint64_t seq;  // logical timestamp; monotone per state
};

/// The Private Key Generator: system parameters, the master key, the accepted
/// requestor tokens, and the append-only issuance log. The master key never
/// appears in any response frame.
struct PkgState {
  SystemParams params;
  MasterKey master;
  std::vector<std::vector<std::uint8_t>> auth_tokens;
  std::vector<IssueRecord> issue_log;
  std::uint64_t next_seq = 0;
};

PkgState pkg_init(unsigned q_bits, unsigned p_bits,
                  std::vector<std::vector<std::uint8_t>> tokens, RandomSource& rng);

/// State blob: magic "IBCS", version, params blob, 4-byte-length-prefixed
/// master key, token count + length-prefixed tokens. The issue log is runtime
/// state and is not persisted.
std::vector<std::uint8_t> encode_pkg_state(const PkgState& state);
PkgState decode_pkg_state(std::span<const std::uint8_t> blob);

/// Request frame: 4-byte big-endian body length, opcode, length-prefixed
/// fields. Response frame: 4-byte length, status byte, length-prefixed
/// payload. Never throws on hostile input; all failures are in-band statuses.
std::vector<std::uint8_t> handle_request(PkgState& state,
                                         std::span<const std::uint8_t> frame);

std::vector<std::uint8_t> build_extract_request(std::span<const std::uint8_t> token,
                                                const std::string& identity);
std::vector<std::uint8_t> build_get_params_request();

struct PkgResponse {
  std::uint8_t status;
  std::vector<std::uint8_t> payload;
};
PkgResponse parse_pkg_response(std::span<const std::uint8_t> frame);

}  // namespace ibc

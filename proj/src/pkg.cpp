// SPDX-License-Identifier: Apache-2.0
#include "ibc/pkg.hpp"

#include <algorithm>

#include "ibc/identity.hpp"
#include "ibc/wire.hpp"

namespace ibc {

PkgState pkg_init(unsigned q_bits, unsigned p_bits,
                  std::vector<std::vector<std::uint8_t>> tokens, RandomSource& rng) {
  if (tokens.empty()) throw Error("pkg_init: at least one auth token required");
  auto [params, master] = setup(q_bits, p_bits, rng);
  return PkgState{std::move(params), std::move(master), std::move(tokens), {}, 0};
}

std::vector<std::uint8_t> encode_pkg_state(const PkgState& state) {
  std::vector<std::uint8_t> out = {'I', 'B', 'C', 'S', 0x01};
  wire::put_bytes(out, state.params.encode());
  wire::put_lp(out, state.master.s.to_bytes_be_min());
  wire::put_u32(out, static_cast<std::uint32_t>(state.auth_tokens.size()));
  for (const auto& t : state.auth_tokens) wire::put_lp(out, t);
  return out;
}

PkgState decode_pkg_state(std::span<const std::uint8_t> blob) {
  wire::Reader header(blob);
  header.expect_magic("IBCS");
  if (header.u8() != 0x01) throw MalformedEncoding("pkg state: unsupported version");

  std::size_t params_len = 0;
  SystemParams params = SystemParams::decode(blob.subspan(5), &params_len);
  wire::Reader r(blob.subspan(5 + params_len));
  Bignum s = Bignum::from_bytes_be(r.lp());
  if (s.is_zero() || s >= params.modulus->q) {
    throw MalformedEncoding("pkg state: master key out of range");
  }
  std::uint32_t count = r.u32();
  std::vector<std::vector<std::uint8_t>> tokens;
  tokens.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto t = r.lp();
    tokens.emplace_back(t.begin(), t.end());
  }
  r.expect_end();
  if (tokens.empty()) throw MalformedEncoding("pkg state: no tokens");
  if (!(mul_to_affine(s, params.generator) == params.public_point)) {
    throw MalformedEncoding("pkg state: master key does not match P_pub");
  }
  return PkgState{std::move(params), MasterKey{std::move(s)}, std::move(tokens), {}, 0};
}

namespace {

std::vector<std::uint8_t> response_frame(std::uint8_t status,
                                         std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> body;
  body.reserve(5 + payload.size());
  wire::put_u8(body, status);
  wire::put_lp(body, payload);
  std::vector<std::uint8_t> out;
  wire::put_u32(out, static_cast<std::uint32_t>(body.size()));
  wire::put_bytes(out, body);
  return out;
}

std::vector<std::uint8_t> status_only(std::uint8_t status) {
  return response_frame(status, {});
}

}  // namespace

std::vector<std::uint8_t> handle_request(PkgState& state,
                                         std::span<const std::uint8_t> frame) {
  using namespace pkgwire;
  std::uint32_t declared = 0;
  std::uint8_t opcode = 0;
  std::vector<std::uint8_t> token;
  std::string identity;
  try {
    wire::Reader r(frame);
    declared = r.u32();
    if (declared > kMaxFrameLen) return status_only(kStatusMalformed);
    if (declared != r.remaining()) return status_only(kStatusMalformed);
    opcode = r.u8();
    if (opcode == kOpGetParams) {
      r.expect_end();
      return response_frame(kStatusOk, state.params.encode());
    }
    if (opcode != kOpExtract) return status_only(kStatusMalformed);
    auto t = r.lp();
    token.assign(t.begin(), t.end());
    identity = r.lp_str();
    r.expect_end();
  } catch (const MalformedEncoding&) {
    return status_only(kStatusMalformed);
  }

  bool authed = std::any_of(state.auth_tokens.begin(), state.auth_tokens.end(),
                            [&token](const auto& t) { return t == token; });
  if (!authed) return status_only(kStatusAuthFail);

  std::string normalized;
  try {
    normalized = normalize_identity(identity);
  } catch (const InvalidIdentity&) {
    return status_only(kStatusBadIdentity);
  }

  try {
    IdentityPrivateKey key = extract(state.params, state.master, normalized);
    state.issue_log.push_back({normalized, state.next_seq++});
    return response_frame(kStatusOk, key.encode(state.params));
  } catch (const Error&) {
    // the handler never aborts; derivation failures surface in-band
    return status_only(kStatusMalformed);
  }
}

std::vector<std::uint8_t> build_extract_request(std::span<const std::uint8_t> token,
                                                const std::string& identity) {
  std::vector<std::uint8_t> body;
  wire::put_u8(body, pkgwire::kOpExtract);
  wire::put_lp(body, token);
  wire::put_lp_str(body, identity);
  std::vector<std::uint8_t> out;
  wire::put_u32(out, static_cast<std::uint32_t>(body.size()));
  wire::put_bytes(out, body);
  return out;
}

std::vector<std::uint8_t> build_get_params_request() {
  return {0x00, 0x00, 0x00, 0x01, pkgwire::kOpGetParams};
}

PkgResponse parse_pkg_response(std::span<const std::uint8_t> frame) {
  wire::Reader r(frame);
  std::uint32_t len = r.u32();
  if (len != r.remaining()) throw MalformedEncoding("response: length mismatch");
  PkgResponse resp;
  resp.status = r.u8();
  auto payload = r.lp();
  resp.payload.assign(payload.begin(), payload.end());
  r.expect_end();
  return resp;
}

}  // namespace ibc

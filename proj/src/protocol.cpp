// SPDX-License-Identifier: Apache-2.0
#include "ibc/protocol.hpp"

#include <algorithm>
#include <cstring>
#include <deque>

#include "ibc/hash.hpp"
#include "ibc/wire.hpp"

namespace ibc {

// ---------------------------------------------------------------------------
// Pairing frame

std::vector<std::uint8_t> build_pairing_frame(const DeviceInfo& device) {
  if (device.device_name.size() > 64) throw FrameMalformed("device name too long");
  std::string phone = normalize_identity(device.phone_number);
  std::vector<std::uint8_t> out = {'I', 'B', 'C', 'P', 0x01};
  wire::put_bytes(out, device.bt_addr);
  wire::put_u8(out, static_cast<std::uint8_t>(device.device_name.size()));
  wire::put_bytes(out, {reinterpret_cast<const std::uint8_t*>(device.device_name.data()),
                        device.device_name.size()});
  wire::put_u8(out, static_cast<std::uint8_t>(phone.size()));
  wire::put_bytes(out,
                  {reinterpret_cast<const std::uint8_t*>(phone.data()), phone.size()});
  wire::put_u16(out, device.capabilities);
  if (out.size() > kMaxPairingFrameLen) throw FrameMalformed("pairing frame too long");
  return out;
}

PairingFrame parse_pairing_frame(std::span<const std::uint8_t> frame) {
  if (frame.size() > kMaxPairingFrameLen) throw FrameMalformed("pairing frame too long");
  try {
    wire::Reader r(frame);
    r.expect_magic("IBCP");
    if (r.u8() != 0x01) throw FrameMalformed("pairing frame: unsupported version");
    PairingFrame pf;
    auto addr = r.bytes(6);
    std::memcpy(pf.bt_addr.data(), addr.data(), 6);
    std::size_t name_len = r.u8();
    if (name_len > 64) throw FrameMalformed("pairing frame: name too long");
    auto name = r.bytes(name_len);
    pf.device_name.assign(name.begin(), name.end());
    std::size_t phone_len = r.u8();
    if (phone_len == 0) throw InvalidIdentity("pairing frame: empty phone number");
    auto phone = r.bytes(phone_len);
    pf.phone_number =
        normalize_identity(std::string(phone.begin(), phone.end()));
    pf.capabilities = r.u16();
    r.expect_end();
    return pf;
  } catch (const MalformedEncoding& e) {
    throw FrameMalformed(e.what());
  }
}

// ---------------------------------------------------------------------------
// Entropy pool

void EntropySource::mix(const SensorSample& sample) {
  std::vector<std::uint8_t> block;
  block.reserve(pool_.size() + 13 + sample.reading.size());
  wire::put_bytes(block, pool_);
  wire::put_u8(block, sample.sensor_id);
  wire::put_u64(block, sample.timestamp);
  wire::put_lp(block, sample.reading);
  pool_ = sha256(block);
  ++count_;
}

void EntropySource::mix_all(std::span<const SensorSample> samples) {
  for (const auto& s : samples) mix(s);
}

std::array<std::uint8_t, 32> EntropySource::seed() const {
  if (count_ < 8) throw InsufficientEntropy("need at least 8 sensor samples");
  return pool_;
}

// ---------------------------------------------------------------------------
// Session frames

std::vector<std::uint8_t> make_session_frame(FrameType type,
                                             std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> out = {'I', 'B', 'C', 'M',
                                   static_cast<std::uint8_t>(type)};
  wire::put_lp(out, payload);
  return out;
}

namespace {

struct ParsedFrame {
  FrameType type;
  std::span<const std::uint8_t> payload;
};

ParsedFrame parse_session_frame(std::span<const std::uint8_t> frame) {
  wire::Reader r(frame);
  r.expect_magic("IBCM");
  std::uint8_t t = r.u8();
  if (t < 0x01 || t > 0x05) throw FrameMalformed("session frame: unknown type");
  auto payload = r.lp();
  r.expect_end();
  return {static_cast<FrameType>(t), payload};
}

constexpr char kSessionKdfLabel[] = "IBC-session";
constexpr char kConfirmLabel[] = "IBC-confirm";

}  // namespace

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Idle: return "Idle";
    case Phase::Paired: return "Paired";
    case Phase::AwaitDhReply: return "AwaitDhReply";
    case Phase::AwaitConfirm: return "AwaitConfirm";
    case Phase::Established: return "Established";
    case Phase::Failed: return "Failed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// SessionDevice

SessionDevice::SessionDevice(SystemParams params, IdentityPrivateKey key,
                             DeviceInfo info, std::span<const std::uint8_t> drbg_seed)
    : params_(std::move(params)),
      key_(std::move(key)),
      info_(std::move(info)),
      self_id_(normalize_identity(info_.phone_number)),
      drbg_(drbg_seed) {
  if (self_id_ != key_.identity) {
    throw InvalidIdentity("device phone number does not match the private key");
  }
}

std::vector<std::uint8_t> SessionDevice::pairing_frame() const {
  return build_pairing_frame(info_);
}

void SessionDevice::set_peer_identity(const std::string& raw) {
  peer_id_ = normalize_identity(raw);
  if (phase_ == Phase::Idle) phase_ = Phase::Paired;
}

void SessionDevice::fail(const std::string& why) {
  phase_ = Phase::Failed;
  session_key_.reset();
  diagnostics_.push_back("handshake failure: " + why);
}

void SessionDevice::note(const std::string& what) { diagnostics_.push_back(what); }

std::uint8_t SessionDevice::send_direction() const {
  return role_ == Role::Initiator ? 0x01 : 0x02;
}
std::uint8_t SessionDevice::recv_direction() const {
  return role_ == Role::Initiator ? 0x02 : 0x01;
}

void SessionDevice::derive_session_key(const Point<Fp>& shared,
                                       const std::string& id_init,
                                       const std::string& id_resp) {
  std::vector<std::uint8_t> input;
  wire::put_lp(input, encode_point(shared));
  wire::put_lp_str(input, id_init);
  wire::put_lp_str(input, id_resp);
  const auto& na = role_ == Role::Initiator ? self_nonce_ : peer_nonce_;
  const auto& nb = role_ == Role::Initiator ? peer_nonce_ : self_nonce_;
  wire::put_bytes(input, na);
  wire::put_bytes(input, nb);
  session_key_ = kdf32(kSessionKdfLabel, input);
  dh_secret_ = Bignum(0UL);
  dh_secret_erased_ = true;
}

std::array<std::uint8_t, 32> SessionDevice::confirm_mac(std::uint8_t label) const {
  if (!session_key_) throw NotEstablished("no session key");
  std::vector<std::uint8_t> data;
  data.insert(data.end(), kConfirmLabel, kConfirmLabel + sizeof(kConfirmLabel) - 1);
  data.push_back(label);
  wire::put_bytes(data, transcript_);
  return hmac_sha256(*session_key_, data);
}

std::vector<std::vector<std::uint8_t>> SessionDevice::step(const Event& event) {
  if (phase_ == Phase::Failed) {
    if (!std::holds_alternative<EvTick>(event)) note("dropped event: phase Failed");
    return {};
  }
  return std::visit(
      [this](const auto& ev) -> std::vector<std::vector<std::uint8_t>> {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, EvFrameIn>) {
          return on_frame(ev.frame);
        } else if constexpr (std::is_same_v<T, EvStartSession>) {
          if (phase_ != Phase::Paired || !peer_id_) {
            note("dropped StartSession: not paired");
            return {};
          }
          dh_secret_ = drbg_.uniform_range(Bignum(1UL), params_.modulus->q - 1UL);
          dh_secret_erased_ = false;
          drbg_.fill(self_nonce_);
          role_ = Role::Initiator;
          std::vector<std::uint8_t> plain;
          wire::put_lp(plain, encode_point(mul_to_affine(dh_secret_, params_.generator)));
          wire::put_bytes(plain, self_nonce_);
          wire::put_lp_str(plain, self_id_);
          auto frame = make_session_frame(
              FrameType::DhInit, encrypt(params_, *peer_id_, plain, drbg_).encode());
          transcript_ = frame;
          handshake_ticks_ = 0;
          phase_ = Phase::AwaitDhReply;
          return {frame};
        } else if constexpr (std::is_same_v<T, EvStartOfflineSession>) {
          if ((phase_ != Phase::Paired && phase_ != Phase::Idle) || !peer_id_) {
            note("dropped StartOfflineSession: peer unknown");
            return {};
          }
          std::array<std::uint8_t, 32> key{};
          drbg_.fill(key);
          drbg_.fill(self_nonce_);
          std::vector<std::uint8_t> plain;
          wire::put_bytes(plain, key);
          wire::put_bytes(plain, self_nonce_);
          wire::put_lp(plain, ev.payload);
          auto frame = make_session_frame(
              FrameType::Offline, encrypt(params_, *peer_id_, plain, drbg_).encode());
          session_key_ = key;
          role_ = Role::Initiator;
          send_counter_ = recv_counter_ = 0;
          phase_ = Phase::Established;
          return {frame};
        } else if constexpr (std::is_same_v<T, EvSealRequest>) {
          if (phase_ != Phase::Established) {
            note("dropped SealRequest: not established");
            return {};
          }
          return {seal(ev.payload)};
        } else {  // EvTick
          if (phase_ == Phase::AwaitDhReply || phase_ == Phase::AwaitConfirm) {
            if (++handshake_ticks_ >= kHandshakeTimeoutTicks) {
              fail("handshake timeout");
            }
          }
          return {};
        }
      },
      event);
}

std::vector<std::vector<std::uint8_t>> SessionDevice::on_frame(
    std::span<const std::uint8_t> frame) {
  if (frame.size() >= 4 && frame[0] == 'I' && frame[1] == 'B' && frame[2] == 'C' &&
      frame[3] == 'P') {
    return on_pairing_frame(frame);
  }
  ParsedFrame parsed{FrameType::Data, {}};
  try {
    parsed = parse_session_frame(frame);
  } catch (const Error& e) {
    note(std::string("dropped malformed frame: ") + e.what());
    return {};
  }
  switch (parsed.type) {
    case FrameType::DhInit:
      if (phase_ != Phase::Paired) {
        note("dropped DH_INIT: out of phase");
        return {};
      }
      return on_dh_init(parsed.payload);
    case FrameType::DhReply:
      if (phase_ != Phase::AwaitDhReply) {
        note("dropped DH_REPLY: out of phase");
        return {};
      }
      return on_dh_reply(parsed.payload);
    case FrameType::Confirm:
      if (phase_ != Phase::AwaitConfirm) {
        note("dropped CONFIRM: out of phase");
        return {};
      }
      return on_confirm(parsed.payload);
    case FrameType::Offline:
      if (phase_ != Phase::Idle && phase_ != Phase::Paired) {
        note("dropped OFFLINE: out of phase");
        return {};
      }
      return on_offline(parsed.payload);
    case FrameType::Data: {
      if (phase_ != Phase::Established) {
        note("dropped DATA: out of phase");
        return {};
      }
      try {
        received_.push_back(open(frame));
      } catch (const Error& e) {
        note(std::string("rejected DATA frame: ") + e.what());
      }
      return {};
    }
  }
  return {};
}

std::vector<std::vector<std::uint8_t>> SessionDevice::on_pairing_frame(
    std::span<const std::uint8_t> frame) {
  if (phase_ != Phase::Idle) {
    note("dropped pairing frame: out of phase");
    return {};
  }
  try {
    PairingFrame pf = parse_pairing_frame(frame);
    if (pf.phone_number == self_id_) {
      note("dropped pairing frame: own identity echoed back");
      return {};
    }
    peer_id_ = pf.phone_number;
    phase_ = Phase::Paired;
  } catch (const Error& e) {
    note(std::string("dropped pairing frame: ") + e.what());
  }
  return {};
}

namespace {

struct DhPayload {
  Point<Fp> half_key;
  std::array<std::uint8_t, 16> nonce;
  std::string identity;
};

DhPayload parse_dh_payload(std::span<const std::uint8_t> plain,
                           const SystemParams& params) {
  wire::Reader r(plain);
  Point<Fp> half = decode_point(r.lp(), params.modulus);
  DhPayload out{half, {}, {}};
  auto nonce = r.bytes(16);
  std::memcpy(out.nonce.data(), nonce.data(), 16);
  out.identity = r.lp_str();
  r.expect_end();
  if (out.half_key.is_infinity() ||
      !mul_to_affine(params.modulus->q, out.half_key).is_infinity()) {
    throw HandshakeFailure("half-key not in the order-q subgroup");
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::uint8_t>> SessionDevice::on_dh_init(
    std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> init_frame = make_session_frame(FrameType::DhInit, payload);
  try {
    IbeCiphertext ct = IbeCiphertext::decode(payload, params_);
    auto plain = decrypt(params_, key_, ct);
    DhPayload dh = parse_dh_payload(plain, params_);
    if (!peer_id_ || dh.identity != *peer_id_) {
      throw HandshakeFailure("initiator identity mismatch");
    }
    std::vector<std::uint8_t> nonce_key(dh.nonce.begin(), dh.nonce.end());
    if (!seen_handshake_nonces_.insert(nonce_key).second) {
      throw HandshakeFailure("replayed handshake nonce");
    }
    peer_nonce_ = dh.nonce;
    role_ = Role::Responder;
    dh_secret_ = drbg_.uniform_range(Bignum(1UL), params_.modulus->q - 1UL);
    dh_secret_erased_ = false;
    drbg_.fill(self_nonce_);

    std::vector<std::uint8_t> reply_plain;
    wire::put_lp(reply_plain,
                 encode_point(mul_to_affine(dh_secret_, params_.generator)));
    wire::put_bytes(reply_plain, self_nonce_);
    wire::put_lp_str(reply_plain, self_id_);
    auto reply_frame = make_session_frame(
        FrameType::DhReply, encrypt(params_, *peer_id_, reply_plain, drbg_).encode());

    transcript_ = init_frame;
    wire::put_bytes(transcript_, reply_frame);
    derive_session_key(mul_to_affine(dh_secret_, dh.half_key), *peer_id_, self_id_);
    handshake_ticks_ = 0;
    phase_ = Phase::AwaitConfirm;
    return {reply_frame};
  } catch (const Error& e) {
    fail(e.what());
    return {};
  }
}

std::vector<std::vector<std::uint8_t>> SessionDevice::on_dh_reply(
    std::span<const std::uint8_t> payload) {
  try {
    IbeCiphertext ct = IbeCiphertext::decode(payload, params_);
    auto plain = decrypt(params_, key_, ct);
    DhPayload dh = parse_dh_payload(plain, params_);
    if (!peer_id_ || dh.identity != *peer_id_) {
      throw HandshakeFailure("responder identity mismatch");
    }
    peer_nonce_ = dh.nonce;
    wire::put_bytes(transcript_, make_session_frame(FrameType::DhReply, payload));
    derive_session_key(mul_to_affine(dh_secret_, dh.half_key), self_id_, *peer_id_);

    std::vector<std::uint8_t> confirm_payload = {0x01};
    auto mac = confirm_mac(0x01);
    confirm_payload.insert(confirm_payload.end(), mac.begin(), mac.end());
    handshake_ticks_ = 0;
    phase_ = Phase::AwaitConfirm;
    return {make_session_frame(FrameType::Confirm, confirm_payload)};
  } catch (const Error& e) {
    fail(e.what());
    return {};
  }
}

std::vector<std::vector<std::uint8_t>> SessionDevice::on_confirm(
    std::span<const std::uint8_t> payload) {
  try {
    if (payload.size() != 33) throw HandshakeFailure("confirm: bad length");
    std::uint8_t label = payload[0];
    std::uint8_t expected = role_ == Role::Initiator ? 0x02 : 0x01;
    if (label != expected) throw HandshakeFailure("confirm: wrong direction label");
    auto expect_mac = confirm_mac(label);
    if (!std::equal(expect_mac.begin(), expect_mac.end(), payload.begin() + 1)) {
      throw HandshakeFailure("confirm: MAC mismatch");
    }
    send_counter_ = recv_counter_ = 0;
    if (role_ == Role::Responder) {
      std::vector<std::uint8_t> confirm_payload = {0x02};
      auto mac = confirm_mac(0x02);
      confirm_payload.insert(confirm_payload.end(), mac.begin(), mac.end());
      phase_ = Phase::Established;
      return {make_session_frame(FrameType::Confirm, confirm_payload)};
    }
    phase_ = Phase::Established;
    return {};
  } catch (const Error& e) {
    fail(e.what());
    return {};
  }
}

std::vector<std::vector<std::uint8_t>> SessionDevice::on_offline(
    std::span<const std::uint8_t> payload) {
  try {
    IbeCiphertext ct = IbeCiphertext::decode(payload, params_);
    auto plain = decrypt(params_, key_, ct);
    wire::Reader r(plain);
    auto key = r.bytes(32);
    auto nonce = r.bytes(16);
    auto data = r.lp();
    r.expect_end();
    std::array<std::uint8_t, 32> sk{};
    std::memcpy(sk.data(), key.data(), 32);
    std::memcpy(peer_nonce_.data(), nonce.data(), 16);
    session_key_ = sk;
    role_ = Role::Responder;
    send_counter_ = recv_counter_ = 0;
    phase_ = Phase::Established;
    received_.emplace_back(data.begin(), data.end());
    return {};
  } catch (const Error& e) {
    note(std::string("rejected OFFLINE frame: ") + e.what());
    return {};
  }
}

std::vector<std::uint8_t> SessionDevice::seal(std::span<const std::uint8_t> plaintext) {
  if (phase_ != Phase::Established || !session_key_) {
    throw NotEstablished("seal: no session");
  }
  std::uint64_t ctr = ++send_counter_;
  std::uint8_t dir = send_direction();
  std::array<std::uint8_t, kAeadNonceLen> nonce{};
  nonce[0] = dir;
  for (int i = 0; i < 8; ++i) {
    nonce[4 + i] = static_cast<std::uint8_t>(ctr >> (56 - 8 * i));
  }
  std::vector<std::uint8_t> aad = {'I', 'B', 'C', 'M',
                                   static_cast<std::uint8_t>(FrameType::Data), dir};
  wire::put_u64(aad, ctr);
  auto boxed = aead_seal(*session_key_, nonce, aad, plaintext);
  std::vector<std::uint8_t> payload = {dir};
  wire::put_u64(payload, ctr);
  wire::put_bytes(payload, boxed);
  return make_session_frame(FrameType::Data, payload);
}

std::vector<std::uint8_t> SessionDevice::open(std::span<const std::uint8_t> frame) {
  if (phase_ != Phase::Established || !session_key_) {
    throw NotEstablished("open: no session");
  }
  std::uint8_t dir = 0;
  std::uint64_t ctr = 0;
  std::span<const std::uint8_t> boxed;
  try {
    ParsedFrame parsed = parse_session_frame(frame);
    if (parsed.type != FrameType::Data) throw FrameMalformed("open: not a DATA frame");
    wire::Reader r(parsed.payload);
    dir = r.u8();
    ctr = r.u64();
    boxed = r.bytes(r.remaining());
  } catch (const MalformedEncoding& e) {
    throw FrameMalformed(e.what());
  }
  if (dir != recv_direction()) {
    throw AuthenticationFailure("open: wrong direction");
  }
  if (ctr <= recv_counter_) throw ReplayDetected("open: stale counter");
  std::array<std::uint8_t, kAeadNonceLen> nonce{};
  nonce[0] = dir;
  for (int i = 0; i < 8; ++i) {
    nonce[4 + i] = static_cast<std::uint8_t>(ctr >> (56 - 8 * i));
  }
  std::vector<std::uint8_t> aad = {'I', 'B', 'C', 'M',
                                   static_cast<std::uint8_t>(FrameType::Data), dir};
  wire::put_u64(aad, ctr);
  auto opened = aead_open(*session_key_, nonce, aad, boxed);
  if (!opened) throw AuthenticationFailure("open: tag rejected");
  recv_counter_ = ctr;
  return std::move(*opened);
}

std::vector<std::vector<std::uint8_t>> SessionDevice::take_received() {
  return std::exchange(received_, {});
}

// ---------------------------------------------------------------------------
// Simulator

SimResult run_pair_sim(SessionDevice& a, SessionDevice& b, const SimConfig& config) {
  SimResult result;
  HmacDrbg transport_rng(config.transport_seed);
  std::deque<std::pair<int, std::vector<std::uint8_t>>> in_flight;
  std::size_t submitted = 0;

  auto chance = [&transport_rng](double rate) {
    if (rate <= 0.0) return false;
    return transport_rng.uniform_u64(1000000) < static_cast<std::uint64_t>(rate * 1e6);
  };

  auto submit = [&](int dest, std::vector<std::uint8_t> frame, bool trusted_channel) {
    std::size_t index = submitted++;
    if (config.tamper && config.tamper->frame_index == index) {
      std::size_t bit = config.tamper->bit_index % (frame.size() * 8);
      frame[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      result.log.push_back("transport: tampered frame #" + std::to_string(index));
    }
    if (!trusted_channel && chance(config.loss_rate)) {
      result.log.push_back("transport: dropped frame #" + std::to_string(index));
      return;
    }
    if (config.collect_frames) result.frames.emplace_back(dest, frame);
    in_flight.emplace_back(dest, std::move(frame));
    if (in_flight.size() >= 2 && chance(config.reorder_rate)) {
      std::swap(in_flight[in_flight.size() - 1], in_flight[in_flight.size() - 2]);
      result.log.push_back("transport: reordered tail frames");
    }
  };

  auto frame_label = [](const std::vector<std::uint8_t>& f) -> std::string {
    if (f.size() >= 5 && f[3] == 'P') return "PAIRING";
    if (f.size() >= 5 && f[3] == 'M') {
      switch (f[4]) {
        case 0x01: return "DH_INIT";
        case 0x02: return "DH_REPLY";
        case 0x03: return "CONFIRM";
        case 0x04: return "DATA";
        case 0x05: return "OFFLINE";
      }
    }
    return "?";
  };

  auto pump = [&]() {
    while (!in_flight.empty()) {
      auto [dest, frame] = std::move(in_flight.front());
      in_flight.pop_front();
      SessionDevice& rx = dest == 0 ? a : b;
      std::string label = frame_label(frame);
      Phase before = rx.phase();
      auto outputs = rx.step(EvFrameIn{frame});
      result.log.push_back(std::string(dest == 0 ? "A" : "B") + " <- " + label + " (" +
                           std::to_string(frame.size()) + " bytes), phase " +
                           phase_name(before) + " -> " + phase_name(rx.phase()));
      for (auto& out : outputs) submit(1 - dest, std::move(out), false);
    }
  };

  if (config.include_pairing_phase) {
    // The tap broadcasts both frames over the location-limited trusted channel.
    submit(1, a.pairing_frame(), true);
    submit(0, b.pairing_frame(), true);
    pump();
  }

  {
    auto outputs = config.offline
                       ? a.step(EvStartOfflineSession{config.data_payload})
                       : a.step(EvStartSession{});
    result.log.push_back(std::string("A starts ") +
                         (config.offline ? "offline session" : "session") + ", phase " +
                         phase_name(a.phase()));
    for (auto& out : outputs) submit(1, std::move(out), false);
    pump();
  }

  for (int t = 0; t < config.max_ticks; ++t) {
    bool a_terminal = a.phase() == Phase::Established || a.phase() == Phase::Failed ||
                      a.phase() == Phase::Idle || a.phase() == Phase::Paired;
    bool b_terminal = b.phase() == Phase::Established || b.phase() == Phase::Failed ||
                      b.phase() == Phase::Idle || b.phase() == Phase::Paired;
    bool mid_handshake = a.phase() == Phase::AwaitDhReply ||
                         a.phase() == Phase::AwaitConfirm ||
                         b.phase() == Phase::AwaitDhReply ||
                         b.phase() == Phase::AwaitConfirm;
    if (a_terminal && b_terminal && !mid_handshake) break;
    a.step(EvTick{});
    b.step(EvTick{});
    pump();
  }

  if (!config.offline && !config.data_payload.empty() &&
      a.phase() == Phase::Established && b.phase() == Phase::Established) {
    auto outputs = a.step(EvSealRequest{config.data_payload});
    for (auto& out : outputs) submit(1, std::move(out), false);
    pump();
  }

  result.a_phase = a.phase();
  result.b_phase = b.phase();
  result.key_a = a.session_key();
  result.key_b = b.session_key();
  result.both_established =
      a.phase() == Phase::Established && b.phase() == Phase::Established;
  result.keys_match = result.both_established && result.key_a.has_value() &&
                      result.key_b.has_value() && *result.key_a == *result.key_b;
  result.b_received = b.take_received();
  return result;
}

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ibc/ibe.hpp"
#include "ibc/identity.hpp"
#include "ibc/rng.hpp"

namespace ibc {

// ---------------------------------------------------------------------------
// Setup phase: pairing frame (the NFC tap stand-in)

inline constexpr std::uint16_t kCapSessionDh = 0x0001;
inline constexpr std::uint16_t kCapOfflineFallback = 0x0002;
inline constexpr std::size_t kMaxPairingFrameLen = 256;

struct DeviceInfo {
  std::array<std::uint8_t, 6> bt_addr{};
  std::string device_name;   // UTF-8, ≤ 64 bytes
  std::string phone_number;  // raw; normalized when the frame is built
  std::uint16_t capabilities = kCapSessionDh | kCapOfflineFallback;
};

struct PairingFrame {
  std::array<std::uint8_t, 6> bt_addr{};
  std::string device_name;
  std::string phone_number;  // normalized
  std::uint16_t capabilities = 0;
};

/// Wire: "IBCP" 0x01, bt_addr(6), name-len(1)+name, phone-len(1)+phone,
/// capabilities(2 BE). Total ≤ 256 bytes.
std::vector<std::uint8_t> build_pairing_frame(const DeviceInfo& device);
PairingFrame parse_pairing_frame(std::span<const std::uint8_t> frame);

// ---------------------------------------------------------------------------
// Sensor-derived randomness

struct SensorSample {
  std::uint8_t sensor_id = 0;  // gyro / accelerometer / compass / gps tag
  std::uint64_t timestamp = 0;
  std::vector<std::uint8_t> reading;
};

/// 32-byte rolling hash pool; every sample is hashed into the previous pool.
/// Seeds may be extracted only after 8 samples.
class EntropySource {
 public:
  void mix(const SensorSample& sample);
  void mix_all(std::span<const SensorSample> samples);
  /// Pool snapshot for DRBG (re)seeding; throws InsufficientEntropy below the
  /// 8-sample floor.
  std::array<std::uint8_t, 32> seed() const;
  std::size_t sample_count() const { return count_; }

 private:
  std::array<std::uint8_t, 32> pool_{};
  std::size_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Communication phase: session frames and the device FSM

enum class FrameType : std::uint8_t {
  DhInit = 0x01,
  DhReply = 0x02,
  Confirm = 0x03,
  Data = 0x04,
  Offline = 0x05,
};

std::vector<std::uint8_t> make_session_frame(FrameType type,
                                             std::span<const std::uint8_t> payload);

enum class Phase { Idle, Paired, AwaitDhReply, AwaitConfirm, Established, Failed };
const char* phase_name(Phase p);

struct EvFrameIn {
  std::vector<std::uint8_t> frame;
};
struct EvStartSession {};
struct EvStartOfflineSession {
  std::vector<std::uint8_t> payload;
};
struct EvSealRequest {
  std::vector<std::uint8_t> payload;
};
struct EvTick {};

using Event =
    std::variant<EvFrameIn, EvStartSession, EvStartOfflineSession, EvSealRequest, EvTick>;

/// Handshake gives up after this many ticks without progress.
inline constexpr int kHandshakeTimeoutTicks = 8;

/// One simulated device: pairing state, the IBE-bootstrapped Diffie-Hellman
/// handshake with mandatory key confirmation, the offline fallback, and the
/// sealed data channel. Deterministic: all randomness comes from the seeded
/// DRBG, time only from Tick events.
class SessionDevice {
 public:
  SessionDevice(SystemParams params, IdentityPrivateKey key, DeviceInfo info,
                std::span<const std::uint8_t> drbg_seed);

  /// The FSM transition: consumes one event, returns outbound frames.
  /// Never throws on hostile frames; failures surface as phase changes and
  /// diagnostics.
  std::vector<std::vector<std::uint8_t>> step(const Event& event);

  /// Own setup-phase frame (broadcast by the physical tap, outside the FSM).
  std::vector<std::uint8_t> pairing_frame() const;

  /// Data-channel operations (valid once Established).
  std::vector<std::uint8_t> seal(std::span<const std::uint8_t> plaintext);
  std::vector<std::uint8_t> open(std::span<const std::uint8_t> frame);

  Phase phase() const { return phase_; }
  const std::string& self_identity() const { return self_id_; }
  const std::optional<std::string>& peer_identity() const { return peer_id_; }
  void set_peer_identity(const std::string& raw);  // out-of-band alternative to pairing
  const std::optional<std::array<std::uint8_t, 32>>& session_key() const {
    return session_key_;
  }
  bool dh_secret_erased() const { return dh_secret_erased_; }
  std::uint64_t send_counter() const { return send_counter_; }
  std::uint64_t recv_counter() const { return recv_counter_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  /// Payloads delivered by Data/Offline frames, in arrival order.
  std::vector<std::vector<std::uint8_t>> take_received();

 private:
  enum class Role : std::uint8_t { None, Initiator, Responder };

  std::vector<std::vector<std::uint8_t>> on_frame(std::span<const std::uint8_t> frame);
  std::vector<std::vector<std::uint8_t>> on_pairing_frame(
      std::span<const std::uint8_t> frame);
  std::vector<std::vector<std::uint8_t>> on_dh_init(std::span<const std::uint8_t> payload);
  std::vector<std::vector<std::uint8_t>> on_dh_reply(std::span<const std::uint8_t> payload);
  std::vector<std::vector<std::uint8_t>> on_confirm(std::span<const std::uint8_t> payload);
  std::vector<std::vector<std::uint8_t>> on_offline(std::span<const std::uint8_t> payload);
  void fail(const std::string& why);
  void note(const std::string& what);
  void derive_session_key(const Point<Fp>& shared, const std::string& id_init,
                          const std::string& id_resp);
  std::array<std::uint8_t, 32> confirm_mac(std::uint8_t label) const;
  std::uint8_t send_direction() const;
  std::uint8_t recv_direction() const;

  SystemParams params_;
  IdentityPrivateKey key_;
  DeviceInfo info_;
  std::string self_id_;
  HmacDrbg drbg_;

  Phase phase_ = Phase::Idle;
  Role role_ = Role::None;
  std::optional<std::string> peer_id_;
  Bignum dh_secret_;
  bool dh_secret_erased_ = false;
  std::array<std::uint8_t, 16> self_nonce_{};
  std::array<std::uint8_t, 16> peer_nonce_{};
  std::optional<std::array<std::uint8_t, 32>> session_key_;
  std::vector<std::uint8_t> transcript_;
  std::set<std::vector<std::uint8_t>> seen_handshake_nonces_;
  std::uint64_t send_counter_ = 0;
  std::uint64_t recv_counter_ = 0;
  int handshake_ticks_ = 0;
  std::vector<std::string> diagnostics_;
  std::vector<std::vector<std::uint8_t>> received_;
};

// ---------------------------------------------------------------------------
// Two-device simulator over an in-memory transport

struct TamperSpec {
  std::size_t frame_index = 0;  // global delivery order across both directions
  std::size_t bit_index = 0;
};

struct SimConfig {
  bool include_pairing_phase = true;
  bool offline = false;  // use the offline fallback instead of the interactive DH
  std::vector<std::uint8_t> data_payload;  // sealed A→B after establishment
  double loss_rate = 0.0;                  // session frames only; the tap is trusted
  double reorder_rate = 0.0;
  std::optional<TamperSpec> tamper;
  std::uint64_t transport_seed = 0;
  int max_ticks = 3 * kHandshakeTimeoutTicks;
  bool collect_frames = false;  // record delivered frames for transcript sweeps
};

struct SimResult {
  Phase a_phase = Phase::Idle;
  Phase b_phase = Phase::Idle;
  bool both_established = false;
  bool keys_match = false;
  std::optional<std::array<std::uint8_t, 32>> key_a, key_b;
  std::vector<std::vector<std::uint8_t>> b_received;
  std::vector<std::string> log;
  /// (destination: 0 = A, 1 = B; frame bytes) in submission order.
  std::vector<std::pair<int, std::vector<std::uint8_t>>> frames;
};

SimResult run_pair_sim(SessionDevice& a, SessionDevice& b, const SimConfig& config);

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parameter generation, PKG serving and key
// extraction, file encryption, the two-device pairing simulator, and the
// timing benchmark. All cryptographic work lives in the library; this file
// only moves bytes between files, sockets and library calls.
#include <CLI11.hpp>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ibc/bench.hpp"
#include "ibc/ibe.hpp"
#include "ibc/pkg.hpp"
#include "ibc/protocol.hpp"
#include "ibc/rng.hpp"

namespace {

using Bytes = std::vector<std::uint8_t>;

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ibc::Error("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ibc::Error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw ibc::Error("short write to " + path);
}

Bytes token_bytes(const std::string& token) { return Bytes(token.begin(), token.end()); }

std::unique_ptr<ibc::RandomSource> make_rng(std::optional<std::uint64_t> seed) {
  if (seed) return std::make_unique<ibc::HmacDrbg>(*seed);
  return std::make_unique<ibc::SystemRandom>();
}

std::string hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  char buf[4];
  for (std::uint8_t b : bytes) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

std::string key_fingerprint(const std::array<std::uint8_t, 32>& key) {
  auto digest = ibc::sha256(key);
  return hex(std::span<const std::uint8_t>(digest.data(), 8));
}

// --- pkg-serve: one-request-at-a-time stream socket ---------------------------

bool read_exact(int fd, std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::read(fd, buf + got, n - got);
    if (r <= 0) return false;
    got += static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, std::span<const std::uint8_t> data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    ssize_t r = ::write(fd, data.data() + sent, data.size() - sent);
    if (r <= 0) return false;
    sent += static_cast<std::size_t>(r);
  }
  return true;
}

int serve(ibc::PkgState& state, const std::string& listen_addr, int max_requests) {
  auto colon = listen_addr.rfind(':');
  if (colon == std::string::npos) throw ibc::Error("--listen must be host:port");
  std::string host = listen_addr.substr(0, colon);
  int port = std::stoi(listen_addr.substr(colon + 1));

  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw ibc::Error("socket() failed");
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    throw ibc::Error("bad listen address " + host);
  }
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd, 4) != 0) {
    ::close(fd);
    throw ibc::Error("cannot listen on " + listen_addr);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  std::printf("pkg-serve: listening on %s:%d\n", host.c_str(), ntohs(addr.sin_port));
  std::fflush(stdout);

  for (int served = 0; max_requests == 0 || served < max_requests; ++served) {
    int client = ::accept(fd, nullptr, nullptr);
    if (client < 0) break;
    std::uint8_t lenbuf[4];
    if (read_exact(client, lenbuf, 4)) {
      std::uint32_t body_len = (std::uint32_t(lenbuf[0]) << 24) |
                               (std::uint32_t(lenbuf[1]) << 16) |
                               (std::uint32_t(lenbuf[2]) << 8) | lenbuf[3];
      Bytes frame(lenbuf, lenbuf + 4);
      bool ok = true;
      if (body_len <= ibc::pkgwire::kMaxFrameLen) {
        frame.resize(4 + body_len);
        ok = body_len == 0 || read_exact(client, frame.data() + 4, body_len);
      }
      if (ok) {
        Bytes resp = ibc::handle_request(state, frame);
        write_all(client, resp);
      }
    }
    ::close(client);
  }
  ::close(fd);
  return 0;
}

Bytes roundtrip_socket(const std::string& addr_str, std::span<const std::uint8_t> frame) {
  auto colon = addr_str.rfind(':');
  if (colon == std::string::npos) throw ibc::Error("--connect must be host:port");
  std::string host = addr_str.substr(0, colon);
  int port = std::stoi(addr_str.substr(colon + 1));
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw ibc::Error("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1 ||
      ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw ibc::Error("cannot connect to " + addr_str);
  }
  bool ok = write_all(fd, frame);
  Bytes resp;
  if (ok) {
    std::uint8_t lenbuf[4];
    if (read_exact(fd, lenbuf, 4)) {
      std::uint32_t body_len = (std::uint32_t(lenbuf[0]) << 24) |
                               (std::uint32_t(lenbuf[1]) << 16) |
                               (std::uint32_t(lenbuf[2]) << 8) | lenbuf[3];
      resp.assign(lenbuf, lenbuf + 4);
      resp.resize(4 + body_len);
      if (body_len > 0 && !read_exact(fd, resp.data() + 4, body_len)) resp.clear();
    }
  }
  ::close(fd);
  if (resp.empty()) throw ibc::Error("no response from " + addr_str);
  return resp;
}

// --- subcommand bodies ----------------------------------------------------------

int cmd_params(unsigned q_bits, unsigned p_bits, const std::string& out,
               const std::string& state_path, const std::string& token,
               std::optional<std::uint64_t> seed) {
  auto rng = make_rng(seed);
  ibc::PkgState state = ibc::pkg_init(q_bits, p_bits, {token_bytes(token)}, *rng);
  write_file(out, state.params.encode());
  std::printf("params: p %u bits, q %u bits, fingerprint %s -> %s\n",
              static_cast<unsigned>(state.params.modulus->p.bit_length()),
              static_cast<unsigned>(state.params.modulus->q.bit_length()),
              hex(state.params.fingerprint).c_str(), out.c_str());
  if (!state_path.empty()) {
    write_file(state_path, ibc::encode_pkg_state(state));
    std::printf("pkg state -> %s\n", state_path.c_str());
  }
  return 0;
}

int cmd_extract(const std::string& state_path, const std::string& connect_addr,
                const std::string& identity, const std::string& token,
                const std::string& out) {
  Bytes req = ibc::build_extract_request(token_bytes(token), identity);
  Bytes resp_frame;
  ibc::SystemParams params = [&] {
    if (!connect_addr.empty()) {
      Bytes params_resp = roundtrip_socket(connect_addr, ibc::build_get_params_request());
      ibc::PkgResponse pr = ibc::parse_pkg_response(params_resp);
      if (pr.status != ibc::pkgwire::kStatusOk) throw ibc::Error("GET_PARAMS refused");
      resp_frame = roundtrip_socket(connect_addr, req);
      return ibc::SystemParams::decode(pr.payload);
    }
    ibc::PkgState state = ibc::decode_pkg_state(read_file(state_path));
    resp_frame = ibc::handle_request(state, req);
    return state.params;
  }();

  ibc::PkgResponse resp = ibc::parse_pkg_response(resp_frame);
  switch (resp.status) {
    case ibc::pkgwire::kStatusOk:
      break;
    case ibc::pkgwire::kStatusAuthFail:
      throw ibc::AuthenticationFailure("PKG rejected the token");
    case ibc::pkgwire::kStatusBadIdentity:
      throw ibc::InvalidIdentity("PKG rejected the identity");
    default:
      throw ibc::Error("PKG reported a malformed request");
  }
  ibc::IdentityPrivateKey key = ibc::IdentityPrivateKey::decode(resp.payload, params);
  if (!ibc::verify_private_key(params, key)) {
    throw ibc::Error("extracted key failed the pairing verification equation");
  }
  write_file(out, resp.payload);
  std::printf("extract: key for %s verified and written to %s\n", key.identity.c_str(),
              out.c_str());
  return 0;
}

int cmd_encrypt(const std::string& params_path, const std::string& to,
                const std::string& in, const std::string& out,
                std::optional<std::uint64_t> seed) {
  ibc::SystemParams params = ibc::SystemParams::decode(read_file(params_path));
  auto rng = make_rng(seed);
  Bytes message = read_file(in);
  Bytes blob = ibc::encrypt(params, to, message, *rng).encode();
  write_file(out, blob);
  std::printf("encrypt: %zu bytes -> %s (%zu bytes)\n", message.size(), out.c_str(),
              blob.size());
  return 0;
}

int cmd_decrypt(const std::string& params_path, const std::string& key_path,
                const std::string& in, const std::string& out) {
  ibc::SystemParams params = ibc::SystemParams::decode(read_file(params_path));
  ibc::IdentityPrivateKey key =
      ibc::IdentityPrivateKey::decode(read_file(key_path), params);
  ibc::IbeCiphertext ct = ibc::IbeCiphertext::decode(read_file(in), params);
  Bytes message = ibc::decrypt(params, key, ct);
  write_file(out, message);
  std::printf("decrypt: recovered %zu bytes -> %s\n", message.size(), out.c_str());
  return 0;
}

int cmd_pair_sim(unsigned q_bits, unsigned p_bits, double loss, bool tamper,
                 bool offline, std::optional<std::uint64_t> seed) {
  std::uint64_t base_seed = seed.value_or(0xD15C0);
  ibc::HmacDrbg rng(base_seed);
  std::printf("pair-sim: generating %u-bit parameters...\n", p_bits);
  auto [params, master] = ibc::setup(q_bits, p_bits, rng);

  // Scripted sensor streams stand in for gyroscope/accelerometer/compass/GPS
  // readings; each device seeds its DRBG from its own entropy pool.
  auto device = [&](const char* phone, const char* name, std::uint8_t addr,
                    std::uint8_t stream_tag) {
    ibc::EntropySource sensors;
    for (std::uint8_t i = 0; i < 12; ++i) {
      ibc::SensorSample s;
      s.sensor_id = i % 4;
      s.timestamp = 1700000000ULL + i;
      s.reading = {stream_tag, static_cast<std::uint8_t>(base_seed >> (i % 8)),
                   static_cast<std::uint8_t>(i * 17)};
      sensors.mix(s);
    }
    ibc::DeviceInfo info;
    info.bt_addr = {addr, 0xBE, 0xEF, 0x00, 0x11, 0x22};
    info.device_name = name;
    info.phone_number = phone;
    auto key = ibc::extract(params, master, phone);
    return ibc::SessionDevice(params, key, info, sensors.seed());
  };

  ibc::SessionDevice a = device("+34600111222", "device-a", 0xA0, 0x01);
  ibc::SessionDevice b = device("+34600333444", "device-b", 0xB0, 0x02);

  ibc::SimConfig cfg;
  cfg.loss_rate = loss;
  cfg.offline = offline;
  cfg.data_payload = {'p', 'i', 'n', 'g'};
  cfg.transport_seed = base_seed;
  if (tamper) cfg.tamper = ibc::TamperSpec{2, 200};  // inside the first handshake ciphertext

  ibc::SimResult r = ibc::run_pair_sim(a, b, cfg);
  for (const auto& line : r.log) std::printf("  %s\n", line.c_str());
  std::printf("device A: phase %s\n", ibc::phase_name(r.a_phase));
  std::printf("device B: phase %s\n", ibc::phase_name(r.b_phase));
  if (r.both_established && r.keys_match) {
    std::printf("ESTABLISHED key_fp_a=%s key_fp_b=%s\n", key_fingerprint(*r.key_a).c_str(),
                key_fingerprint(*r.key_b).c_str());
    if (!r.b_received.empty()) {
      std::printf("data channel delivered %zu payload(s)\n", r.b_received.size());
    }
  } else if (tamper) {
    std::printf("FAILED (tamper detected)\n");
  } else {
    std::printf("FAILED (%s)\n", loss > 0 ? "timeout under loss" : "handshake failure");
  }
  return 0;
}

int cmd_bench(const std::string& sizes_csv, unsigned q_bits, unsigned p_bits,
              unsigned iters, bool comma, std::optional<std::uint64_t> seed) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(sizes_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) sizes.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  if (sizes.empty()) throw CLI::ValidationError("--sizes", "at least one size required");

  auto rng = make_rng(seed);
  auto [params, master] = ibc::setup(q_bits, p_bits, *rng);
  ibc::IdentityPrivateKey key = ibc::extract(params, master, "+34600111222");
  ibc::BenchReport report = ibc::run_bench(params, key, sizes, iters, *rng);
  std::fputs(ibc::format_bench_report(report, comma).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identity-based crypto toolkit: type-1 pairing IBE, PKG service, "
               "secure device-pairing simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "deterministic RNG seed (default: OS entropy)");

  unsigned q_bits = 160, p_bits = 512, iters = 5, max_requests = 0;
  std::string out, state_path, token = "", identity, connect_addr, params_path,
              key_path, in_path, listen_addr = "127.0.0.1:0", sizes_csv = "128,512";
  double loss = 0.0;
  bool tamper = false, offline = false, comma = false;

  auto* params_cmd = app.add_subcommand("params", "generate system parameters (and a PKG state)");
  params_cmd->add_option("--q-bits", q_bits, "subgroup order bits")->capture_default_str();
  params_cmd->add_option("--p-bits", p_bits, "field prime bits")->capture_default_str();
  params_cmd->add_option("--out", out, "public parameter blob path")->required();
  params_cmd->add_option("--state", state_path, "PKG state blob path (enables extraction)");
  params_cmd->add_option("--token", token, "requestor auth token")->required();

  auto* serve_cmd = app.add_subcommand("pkg-serve", "serve extraction requests over a local stream socket");
  serve_cmd->add_option("--state", state_path, "PKG state blob")->required();
  serve_cmd->add_option("--listen", listen_addr, "host:port (port 0 = ephemeral)")
      ->capture_default_str();
  serve_cmd->add_option("--max-requests", max_requests,
                        "stop after N requests (0 = run forever)");

  auto* extract_cmd = app.add_subcommand("extract", "request a private key from the PKG");
  extract_cmd->add_option("--state", state_path, "PKG state blob (in-process PKG)");
  extract_cmd->add_option("--connect", connect_addr, "host:port of a running pkg-serve");
  extract_cmd->add_option("--identity", identity, "phone-number identity")->required();
  extract_cmd->add_option("--token", token, "requestor auth token")->required();
  extract_cmd->add_option("--out", out, "private key output path")->required();

  auto* encrypt_cmd = app.add_subcommand("encrypt", "IBE-encrypt a file to an identity");
  encrypt_cmd->add_option("--params", params_path, "public parameter blob")->required();
  encrypt_cmd->add_option("--to", identity, "recipient identity")->required();
  encrypt_cmd->add_option("--in", in_path, "plaintext file")->required();
  encrypt_cmd->add_option("--out", out, "ciphertext file")->required();

  auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a file with an extracted key");
  decrypt_cmd->add_option("--params", params_path, "public parameter blob")->required();
  decrypt_cmd->add_option("--key", key_path, "private key blob")->required();
  decrypt_cmd->add_option("--in", in_path, "ciphertext file")->required();
  decrypt_cmd->add_option("--out", out, "plaintext output")->required();

  auto* sim_cmd = app.add_subcommand("pair-sim", "simulate the two-device pairing + session protocol");
  sim_cmd->add_option("--q-bits", q_bits, "subgroup order bits")->capture_default_str();
  sim_cmd->add_option("--p-bits", p_bits, "field prime bits")->capture_default_str();
  sim_cmd->add_option("--loss", loss, "per-frame loss probability")->capture_default_str();
  sim_cmd->add_flag("--tamper", tamper, "flip one bit of the first handshake frame");
  sim_cmd->add_flag("--offline", offline, "use the offline fallback instead of the DH handshake");

  auto* bench_cmd = app.add_subcommand("bench", "time encrypt/decrypt against the handset reference rows");
  bench_cmd->add_option("--sizes", sizes_csv, "comma-separated message sizes")
      ->capture_default_str();
  bench_cmd->add_option("--q-bits", q_bits, "subgroup order bits")->capture_default_str();
  bench_cmd->add_option("--p-bits", p_bits, "field prime bits")->capture_default_str();
  bench_cmd->add_option("--iters", iters, "timed iterations per size")->capture_default_str();
  bench_cmd->add_flag("--comma-decimal", comma, "mirror the reference table's decimal comma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors -> 2, --help -> 0
  }

  try {
    if (params_cmd->parsed()) {
      return cmd_params(q_bits, p_bits, out, state_path, token, seed);
    }
    if (serve_cmd->parsed()) {
      ibc::PkgState state = ibc::decode_pkg_state(read_file(state_path));
      return serve(state, listen_addr, static_cast<int>(max_requests));
    }
    if (extract_cmd->parsed()) {
      if (state_path.empty() && connect_addr.empty()) {
        throw CLI::ValidationError("extract", "need --state or --connect");
      }
      return cmd_extract(state_path, connect_addr, identity, token, out);
    }
    if (encrypt_cmd->parsed()) return cmd_encrypt(params_path, identity, in_path, out, seed);
    if (decrypt_cmd->parsed()) return cmd_decrypt(params_path, key_path, in_path, out);
    if (sim_cmd->parsed()) return cmd_pair_sim(q_bits, p_bits, loss, tamper, offline, seed);
    if (bench_cmd->parsed()) return cmd_bench(sizes_csv, q_bits, p_bits, iters, comma, seed);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ibc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Runs each shipping criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ibc/bench.hpp"
#include "ibc/ibe.hpp"
#include "ibc/pairing.hpp"
#include "ibc/pkg.hpp"
#include "ibc/protocol.hpp"
#include "ibc/rng.hpp"
#include "support/naive.hpp"

using namespace ibc;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %d. %s — %s (%.1f s)\n", pass ? "PASS" : "FAIL", index, name,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::pair<SystemParams, MasterKey> make_env(unsigned qb, unsigned pb, std::uint64_t seed) {
  HmacDrbg rng(seed);
  return setup(qb, pb, rng);
}

const std::pair<SystemParams, MasterKey>& toy_env() {
  static auto env = make_env(3, 6, 0x1BC);
  return env;
}

const std::pair<SystemParams, MasterKey>& big_env() {
  static auto env = make_env(160, 512, 42);
  return env;
}

std::string random_identity(RandomSource& rng) {
  std::string id = "+34";
  for (int i = 0; i < 9; ++i) id.push_back('0' + static_cast<char>(rng.uniform_u64(10)));
  return id;
}

SessionDevice make_toy_device(const std::string& phone, std::uint8_t addr,
                              std::uint64_t seed) {
  const auto& [params, master] = toy_env();
  DeviceInfo info;
  info.bt_addr = {addr, 1, 2, 3, 4, 5};
  info.device_name = "dev";
  info.phone_number = phone;
  std::array<std::uint8_t, 8> sb{};
  for (int i = 7; i >= 0; --i) {
    sb[i] = static_cast<std::uint8_t>(seed);
    seed >>= 8;
  }
  return SessionDevice(params, extract(params, master, phone), info, sb);
}

// --- criterion 1: bilinearity -------------------------------------------------

void criterion_bilinearity() {
  Timer t;
  bool pass = true;
  int toy_checked = 0;
  {
    const auto& [params, master] = toy_env();
    Point<Fp> base = params.generator;
    PairingValue z0 = tate_pairing(base, base, params.zeta);
    for (unsigned long a = 1; a < 5 && pass; ++a) {
      for (unsigned long b = 1; b < 5; ++b) {
        PairingValue lhs = tate_pairing(mul_to_affine(Bignum(a), base),
                                        mul_to_affine(Bignum(b), base), params.zeta);
        if (!(lhs == z0.pow(Bignum(a * b)))) {
          pass = false;
          break;
        }
        ++toy_checked;
      }
    }
  }
  int big_checked = 0;
  {
    const auto& [params, master] = big_env();
    Point<Fp> base = params.generator;
    PairingValue z0 = tate_pairing(base, base, params.zeta);
    HmacDrbg rng(101);
    for (int i = 0; i < 100 && pass; ++i) {
      Bignum a = rng.uniform_range(Bignum(1UL), params.modulus->q - 1UL);
      Bignum b = rng.uniform_range(Bignum(1UL), params.modulus->q - 1UL);
      PairingValue lhs =
          tate_pairing(mul_to_affine(a, base), mul_to_affine(b, base), params.zeta);
      if (!(lhs == z0.pow(a * b % params.modulus->q))) pass = false;
      ++big_checked;
    }
  }
  if (t.seconds() >= 120.0) pass = false;  // stated budget: < 2 min
  report(1, "pairing bilinearity, exact equality", pass,
         "toy exhaustive " + std::to_string(toy_checked) + "/16, 512-bit " +
             std::to_string(big_checked) + "/100 random (a,b)",
         t.seconds());
}

// --- criterion 2: non-degeneracy & subgroup ----------------------------------

void criterion_nondegeneracy() {
  Timer t;
  bool pass = true;
  int sets = 0, values = 0;
  auto check_env = [&](const SystemParams& params, std::uint64_t seed) {
    PairingValue self = tate_pairing(params.generator, params.generator, params.zeta);
    if (self.is_one()) pass = false;
    if (!self.pow(params.modulus->q).is_one()) pass = false;
    HmacDrbg rng(seed);
    for (int i = 0; i < 10; ++i) {
      Bignum a = rng.uniform_range(Bignum(1UL), params.modulus->q - 1UL);
      PairingValue z = tate_pairing(mul_to_affine(a, params.generator),
                                    params.public_point, params.zeta);
      if (!z.pow(params.modulus->q).is_one()) pass = false;
      ++values;
    }
    ++sets;
  };
  check_env(toy_env().first, 201);
  check_env(big_env().first, 202);
  check_env(make_env(3, 6, 777).first, 203);
  check_env(make_env(160, 512, 778).first, 204);
  report(2, "non-degeneracy and subgroup membership", pass,
         std::to_string(sets) + " parameter sets, " + std::to_string(values) +
             " sampled values, e(P,P) != 1 and z^q = 1 everywhere",
         t.seconds());
}

// --- criterion 3: E(F_11) group-law oracle ------------------------------------

void criterion_group_law_oracle() {
  Timer t;
  bool pass = true;
  auto m11 = make_modulus(Bignum(11UL), Bignum(3UL));
  auto pts = naive::enumerate_curve(11);
  if (pts.size() != 12) pass = false;

  naive::Pt gen{true, 0, 0};
  for (auto cand : pts) {
    if (cand.inf) continue;
    naive::Pt acc{true, 0, 0};
    int order = 0;
    do {
      acc = naive::pt_add(acc, cand, 11);
      ++order;
    } while (!acc.inf);
    if (order == 12) {
      gen = cand;
      break;
    }
  }
  if (gen.inf) pass = false;

  std::vector<naive::Pt> table(12);
  table[0] = {true, 0, 0};
  for (int i = 1; i < 12; ++i) table[i] = naive::pt_add(table[i - 1], gen, 11);

  auto lift = [&](naive::Pt p) {
    return p.inf ? Point<Fp>::infinity(m11)
                 : Point<Fp>::affine(Fp(Bignum(p.x), m11), Fp(Bignum(p.y), m11));
  };
  int matched = 0;
  for (int i = 0; i < 12 && pass; ++i) {
    for (int j = 0; j < 12; ++j) {
      Point<Fp> got = point_add(lift(table[i]), lift(table[j]));
      if (!(got == lift(table[(i + j) % 12]))) {
        pass = false;
        break;
      }
      if (i != j) ++matched;
    }
  }
  if (t.seconds() >= 1.0) pass = false;  // stated budget: < 1 s
  report(3, "E(F_11) brute-force oracle", pass,
         std::to_string(pts.size()) + " points enumerated, " + std::to_string(matched) +
             "/132 ordered distinct pairs (plus 12 doublings) match point_add",
         t.seconds());
}

// --- criterion 4: coordinate-system agreement ---------------------------------

void criterion_coordinate_agreement() {
  Timer t;
  bool pass = true;
  const auto& [params, master] = big_env();
  const auto& m = params.modulus;
  HmacDrbg rng(104);
  int scalar_cases = 0, miller_cases = 0, precomp_cases = 0;

  for (int i = 0; i < 200 && pass; ++i) {
    Point<Fp> p = random_curve_point(m, rng);
    Bignum k = rng.uniform_below(m->q);
    Point<Fp> affine = scalar_mul(k, p);
    Point<Fp> jac = mul_to_affine(k, p);
    if (!(affine == jac)) pass = false;
    if (!affine.is_infinity() &&
        !(affine.x() == jac.x() && affine.y() == jac.y())) {
      pass = false;
    }
    ++scalar_cases;
  }
  for (int i = 0; i < 200 && pass; ++i) {
    Bignum a = rng.uniform_range(Bignum(1UL), m->q - 1UL);
    Bignum b = rng.uniform_range(Bignum(1UL), m->q - 1UL);
    Point<Fp> p = mul_to_affine(a, params.generator);
    Point<Fp2> q = apply_distortion(params.zeta, mul_to_affine(b, params.generator));
    if (!(miller_loop(p, q, MillerPath::Affine) ==
          miller_loop(p, q, MillerPath::Jacobian))) {
      pass = false;
    }
    ++miller_cases;
  }
  PairingPrecomp pre = precompute(params.generator);
  for (int i = 0; i < 100 && pass; ++i) {
    Bignum b = rng.uniform_range(Bignum(1UL), m->q - 1UL);
    Point<Fp> q = mul_to_affine(b, params.generator);
    if (!(tate_pairing(params.generator, q, params.zeta, &pre) ==
          tate_pairing(params.generator, q, params.zeta))) {
      pass = false;
    }
    ++precomp_cases;
  }
  report(4, "coordinate-system and precomputation agreement, bit-identical", pass,
         std::to_string(scalar_cases) + " scalar-mul + " + std::to_string(miller_cases) +
             " Miller + " + std::to_string(precomp_cases) + " precomputed cases",
         t.seconds());
}

// --- criterion 5: IBE correctness ----------------------------------------------

void criterion_ibe_correctness() {
  Timer t;
  bool pass = true;
  int toy_roundtrips = 0, big_roundtrips = 0;
  {
    const auto& [params, master] = toy_env();
    HmacDrbg rng(105);
    for (int i = 0; i < 200 && pass; ++i) {
      std::string id = random_identity(rng);
      std::vector<std::uint8_t> msg(rng.uniform_u64(96));
      rng.fill(msg);
      IdentityPrivateKey key = extract(params, master, id);
      if (decrypt(params, key, encrypt(params, id, msg, rng)) != msg) pass = false;
      ++toy_roundtrips;
    }
  }
  {
    const auto& [params, master] = big_env();
    HmacDrbg rng(106);
    for (int i = 0; i < 20 && pass; ++i) {
      std::string id = random_identity(rng);
      std::vector<std::uint8_t> msg(128);
      rng.fill(msg);
      IdentityPrivateKey key = extract(params, master, id);
      if (decrypt(params, key, encrypt(params, id, msg, rng)) != msg) pass = false;
      ++big_roundtrips;
    }
  }
  std::size_t flipped = 0, rejected = 0;
  {
    const auto& [params, master] = toy_env();
    HmacDrbg rng(107);
    IdentityPrivateKey key = extract(params, master, "+34600111222");
    std::vector<std::uint8_t> msg = {'b', 'i', 't', 'f', 'l', 'i', 'p'};
    auto blob = encrypt(params, "+34600111222", msg, rng).encode();
    for (std::size_t bit = 0; bit < blob.size() * 8; ++bit) {
      auto mutated = blob;
      mutated[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      ++flipped;
      try {
        (void)decrypt(params, key, IbeCiphertext::decode(mutated, params));
      } catch (const MalformedCiphertext&) {
        ++rejected;
      } catch (const AuthenticationFailure&) {
        ++rejected;
      }
    }
    if (rejected != flipped) pass = false;
  }
  report(5, "IBE roundtrip correctness and tamper rejection", pass,
         std::to_string(toy_roundtrips) + " toy + " + std::to_string(big_roundtrips) +
             " 512-bit roundtrips; bit-flip sweep " + std::to_string(rejected) + "/" +
             std::to_string(flipped) + " rejected",
         t.seconds());
}

// --- criterion 6: parameter invariants ------------------------------------------

void criterion_parameter_invariants() {
  Timer t;
  bool pass = true;
  HmacDrbg rng(108);
  int generations = 0;
  for (int i = 0; i < 20 && pass; ++i) {
    auto m = find_group_prime(160, 512, rng);
    if (m->p.mod_ui(12) != 11) pass = false;
    if (!((m->p + 1UL) % m->q).is_zero()) pass = false;
    if (!m->q.is_probable_prime()) pass = false;
    if (!m->p.is_probable_prime()) pass = false;
    unsigned a = 0, b = 0;
    if (!solinas_exponents(m->q, &a, &b) || a <= b || b < 1) pass = false;
    if (m->q.bit_length() != 160) pass = false;
    ++generations;
  }
  if (t.seconds() >= 300.0) pass = false;  // stated budget: < 5 min
  report(6, "parameter invariants at 512 bits", pass,
         std::to_string(generations) +
             " generations: p = 11 mod 12, q | p+1, q prime and Solinas",
         t.seconds());
}

// --- criterion 7: protocol ------------------------------------------------------

void criterion_protocol() {
  Timer t;
  bool pass = true;
  std::string detail;

  int honest_ok = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SessionDevice a = make_toy_device("+34600111222", 0xA0, seed * 2 + 1);
    SessionDevice b = make_toy_device("+34600333444", 0xB0, seed * 2 + 2);
    SimConfig cfg;
    SimResult r = run_pair_sim(a, b, cfg);
    if (r.both_established && r.keys_match) {
      ++honest_ok;
    } else {
      pass = false;
    }
  }
  detail += std::to_string(honest_ok) + "/50 honest runs established with equal keys";

  // full single-bit sweep over one recorded handshake transcript
  SessionDevice ra = make_toy_device("+34600111222", 0xA0, 901);
  SessionDevice rb = make_toy_device("+34600333444", 0xB0, 902);
  SimConfig rec;
  rec.collect_frames = true;
  SimResult reference = run_pair_sim(ra, rb, rec);
  if (!reference.keys_match) pass = false;
  std::size_t sweep = 0, divergent = 0;
  for (std::size_t f = 0; f < reference.frames.size(); ++f) {
    std::size_t bits = reference.frames[f].second.size() * 8;
    for (std::size_t bit = 0; bit < bits; ++bit) {
      SessionDevice a = make_toy_device("+34600111222", 0xA0, 901);
      SessionDevice b = make_toy_device("+34600333444", 0xB0, 902);
      SimConfig cfg;
      cfg.tamper = TamperSpec{f, bit};
      SimResult r = run_pair_sim(a, b, cfg);
      ++sweep;
      if (r.both_established && !r.keys_match) ++divergent;
    }
  }
  if (divergent != 0) pass = false;
  detail += "; " + std::to_string(sweep) + " bit-flips, " + std::to_string(divergent) +
            " divergent-key outcomes";

  // offline fallback store-and-forward
  {
    SessionDevice a = make_toy_device("+34600111222", 0xA0, 903);
    SessionDevice b = make_toy_device("+34600333444", 0xB0, 904);
    a.set_peer_identity("+34600333444");
    b.set_peer_identity("+34600111222");
    std::vector<std::uint8_t> payload = {'s', 'n', 'f'};
    auto frames = a.step(EvStartOfflineSession{payload});
    bool ok = frames.size() == 1;
    if (ok) {
      b.step(EvFrameIn{frames[0]});
      auto received = b.take_received();
      ok = b.phase() == Phase::Established && received.size() == 1 &&
           received[0] == payload && a.session_key() == b.session_key();
    }
    if (!ok) pass = false;
    detail += ok ? "; offline roundtrip ok" : "; offline roundtrip FAILED";
  }

  // replay rejection
  {
    SessionDevice a = make_toy_device("+34600111222", 0xA0, 905);
    SessionDevice b = make_toy_device("+34600333444", 0xB0, 906);
    b.step(EvFrameIn{a.pairing_frame()});
    a.step(EvFrameIn{b.pairing_frame()});
    auto init = a.step(EvStartSession{});
    bool ok = init.size() == 1;
    if (ok) {
      (void)b.step(EvFrameIn{init[0]});
      Phase before = b.phase();
      auto again = b.step(EvFrameIn{init[0]});
      ok = again.empty() && b.phase() == before && before == Phase::AwaitConfirm;
    }
    if (!ok) pass = false;
    detail += ok ? "; replay rejected" : "; replay NOT rejected";
  }

  report(7, "protocol: handshake, tamper sweep, offline, replay", pass, detail,
         t.seconds());
}

// --- criterion 8: PKG fuzz -------------------------------------------------------

void criterion_pkg_fuzz() {
  Timer t;
  bool pass = true;
  HmacDrbg init_rng(109);
  PkgState state = pkg_init(160, 512, {{0x73, 0x65, 0x73, 0x61, 0x6d, 0x65, 0x21, 0x21}},
                            init_rng);
  auto raw = state.master.s.to_bytes_be_min();
  std::vector<std::uint8_t> needle = {static_cast<std::uint8_t>(raw.size() >> 24),
                                      static_cast<std::uint8_t>(raw.size() >> 16),
                                      static_cast<std::uint8_t>(raw.size() >> 8),
                                      static_cast<std::uint8_t>(raw.size())};
  needle.insert(needle.end(), raw.begin(), raw.end());

  HmacDrbg rng(110);
  int frames = 0, ok_status = 0, leaks = 0;
  for (int i = 0; i < 100000; ++i) {
    std::vector<std::uint8_t> frame(rng.uniform_u64(72));
    rng.fill(frame);
    std::vector<std::uint8_t> resp;
    try {
      resp = handle_request(state, frame);
    } catch (...) {
      pass = false;
      break;
    }
    PkgResponse parsed = parse_pkg_response(resp);
    if (parsed.status == pkgwire::kStatusOk) ++ok_status;
    if (resp.size() >= needle.size()) {
      for (std::size_t rot = 0; rot < needle.size() && leaks == 0; ++rot) {
        std::vector<std::uint8_t> r(needle.begin() + rot, needle.end());
        r.insert(r.end(), needle.begin(), needle.begin() + rot);
        if (std::search(resp.begin(), resp.end(), r.begin(), r.end()) != resp.end()) {
          ++leaks;
        }
      }
    }
    ++frames;
  }
  if (ok_status != 0 || leaks != 0) pass = false;
  report(8, "PKG fuzz at 512 bits", pass,
         std::to_string(frames) + " random frames: no crash, " +
             std::to_string(ok_status) + " OK statuses, " + std::to_string(leaks) +
             " master-key leaks",
         t.seconds());
}

// --- criterion 9: performance bound vs paper --------------------------------------

void criterion_performance() {
  Timer t;
  bool pass = true;
  const auto& [params, master] = big_env();
  IdentityPrivateKey key = extract(params, master, "+34600111222");
  SystemRandom rng;
  std::vector<std::size_t> sizes = {128, 512};
  BenchReport report_data = run_bench(params, key, sizes, 5, rng);

  const BenchRow& r128 = report_data.local_rows[0];
  const BenchRow& r512 = report_data.local_rows[1];
  double bound_encrypt = 7497.198;  // handset reference rows
  double bound_decrypt = 7368.289;
  if (r128.encrypt_ms > bound_encrypt) pass = false;
  if (r128.decrypt_ms > bound_decrypt) pass = false;

  double enc_spread =
      std::abs(r512.encrypt_ms - r128.encrypt_ms) / std::max(r128.encrypt_ms, 1e-9);
  double dec_spread =
      std::abs(r512.decrypt_ms - r128.decrypt_ms) / std::max(r128.decrypt_ms, 1e-9);
  if (enc_spread > 0.25 || dec_spread > 0.25) pass = false;

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "128B: enc %.3f ms (bound %.0f), dec %.3f ms (bound %.0f); "
                "512B/128B spread enc %.1f%%, dec %.1f%% (bound 25%%)",
                r128.encrypt_ms, bound_encrypt, r128.decrypt_ms, bound_decrypt,
                enc_spread * 100.0, dec_spread * 100.0);
  report(9, "performance bound vs handset reference", pass, buf, t.seconds());
}

}  // namespace

int main() {
  std::printf("ibc acceptance suite\n");
  criterion_bilinearity();
  criterion_nondegeneracy();
  criterion_group_law_oracle();
  criterion_coordinate_agreement();
  criterion_ibe_correctness();
  criterion_parameter_invariants();
  criterion_protocol();
  criterion_pkg_fuzz();
  criterion_performance();
  if (g_failures == 0) {
    std::printf("RESULT: 9/9 criteria passed\n");
    return 0;
  }
  std::printf("RESULT: %d criteria FAILED\n", g_failures);
  return 1;
}

// SPDX-License-Identifier: Apache-2.0
#include "ibc/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>

namespace ibc {

namespace {

constexpr std::array<ReferenceRow, 2> kReferenceRows = {{
    {128, 7497.198, 7368.289, "paper, Nokia Lumia 920"},
    {512, 7498.221, 6998.858, "paper, Nokia Lumia 920"},
}};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

template <class F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::string format_ms(double ms, bool comma_decimal) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  std::string s(buf);
  if (comma_decimal) {
    auto dot = s.find('.');
    if (dot != std::string::npos) s[dot] = ',';
  }
  return s;
}

}  // namespace

std::span<const ReferenceRow> reference_rows() { return kReferenceRows; }

BenchReport run_bench(const SystemParams& params, const IdentityPrivateKey& key,
                      std::span<const std::size_t> sizes, unsigned iterations,
                      RandomSource& rng) {
  if (sizes.empty()) throw Error("bench: at least one message size required");
  if (iterations == 0) throw Error("bench: iterations must be positive");
  BenchReport report;
  report.fingerprint = params.fingerprint;
  report.iterations = iterations;
  field_op_counters().reset();

  for (std::size_t size : sizes) {
    std::vector<std::uint8_t> message(size);
    rng.fill(message);

    // Warm-up round, unrecorded.
    IbeCiphertext warm = encrypt(params, key.identity, message, rng);
    (void)decrypt(params, key, warm);

    std::vector<double> enc_times, dec_times;
    enc_times.reserve(iterations);
    dec_times.reserve(iterations);
    for (unsigned i = 0; i < iterations; ++i) {
      IbeCiphertext ct = encrypt(params, key.identity, message, rng);
      enc_times.push_back(time_ms(
          [&] { ct = encrypt(params, key.identity, message, rng); }));
      std::vector<std::uint8_t> out;
      dec_times.push_back(time_ms([&] { out = decrypt(params, key, ct); }));
      if (out != message) throw Error("bench: roundtrip mismatch");
    }
    report.local_rows.push_back({size, median(enc_times), median(dec_times)});
  }
  report.ops = field_op_counters();
  return report;
}

std::string format_bench_report(const BenchReport& report, bool comma_decimal) {
  std::string out;
  out += "# ibc bench: median of " + std::to_string(report.iterations) +
         " iterations after 1 warm-up; wall clock, milliseconds\n";
  out += "# params fingerprint ";
  for (std::uint8_t b : report.fingerprint) {
    char buf[4];
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  out += "\n# field ops over the timed section: mul=" + std::to_string(report.ops.mul) +
         " sqr=" + std::to_string(report.ops.sqr) +
         " inv=" + std::to_string(report.ops.inv) + "\n";
  out += "source\tmessage_size_bytes\tencrypt_ms\tdecrypt_ms\n";
  for (const BenchRow& row : report.local_rows) {
    out += "local\t" + std::to_string(row.message_size) + "\t" +
           format_ms(row.encrypt_ms, comma_decimal) + "\t" +
           format_ms(row.decrypt_ms, comma_decimal) + "\n";
  }
  for (const ReferenceRow& row : reference_rows()) {
    out += std::string(row.source) + "\t" + std::to_string(row.message_size) + "\t" +
           format_ms(row.encrypt_ms, comma_decimal) + "\t" +
           format_ms(row.decrypt_ms, comma_decimal) + "\n";
  }
  return out;
}

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ibc/ibe.hpp"

namespace ibc {

struct BenchRow {
  std::size_t message_size = 0;
  double encrypt_ms = 0.0;
  double decrypt_ms = 0.0;
};

struct BenchReport {
  ParamsFingerprint fingerprint{};
  unsigned iterations = 0;
  std::vector<BenchRow> local_rows;
  FieldOpCounters ops;  // accumulated over the timed section
};

/// External reference row reproduced from prior published measurements; never
/// asserted against local results.
struct ReferenceRow {
  std::size_t message_size;
  double encrypt_ms;
  double decrypt_ms;
  const char* source;
};

/// The 2012 Nokia Lumia 920 handset figures this artifact benchmarks against.
std::span<const ReferenceRow> reference_rows();

/// Median-of-`iterations` wall-clock timing (one warm-up per operation) of
/// encrypt/decrypt for each message size, for one fixed identity.
BenchReport run_bench(const SystemParams& params, const IdentityPrivateKey& key,
                      std::span<const std::size_t> sizes, unsigned iterations,
                      RandomSource& rng);

/// Renders the report in the table shape used by the CLI: '#' comment lines,
/// one header line, tab-separated rows (local rows first, then references).
std::string format_bench_report(const BenchReport& report, bool comma_decimal);

}  // namespace ibc

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "portsim/report.hpp"

namespace portsim::cli {

/// Exit codes: 0 success, 2 argument error, 3 numerical-invariant failure,
/// 4 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
  std::string subcommand;
  int ports = 0;                 // --N for single-size subcommands
  std::vector<int> grid;         // --N parsed as a grid for bounds/compare
  int k = 1;
  int d = 2;
  double epsilon = 0.0;
  double delta = 0.05;
  std::optional<std::uint64_t> seed;
  int samples = 1000;
  std::string ensemble;          // pauli | port-swap | clifford-1q | <file.json>
  std::vector<std::string> protocols{"rec", "sim", "par"};
  std::string out_path;
  std::string format = "json";   // csv | json
  int threads = 0;               // 0 = hardware concurrency
  int dense_cap = 9;
  bool oracle = false;           // run the brute-force purity oracle
};

/// Grid spec: "n" (single), "a,b,c" (list), "a..b" (doubling from a to b),
/// "a..b:s" (linear with step s).
std::vector<int> parse_grid(const std::string& spec);

/// argv + optional JSON config file (flags override file values; unknown file
/// keys are rejected). Throws ArgumentError on invalid input.
RunConfig parse_config(const std::vector<std::string>& args);

Report dispatch(const RunConfig& cfg);

/// JSON to stdout; when --out is given, also write the selected format there.
void emit_report(const Report& report, const RunConfig& cfg);

/// Full entry point used by the binary; maps errors to exit codes.
int run(int argc, char** argv);

}  // namespace portsim::cli

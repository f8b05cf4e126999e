// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "portsim/schur.hpp"
#include "portsim/states.hpp"

namespace portsim::multi {

using schur::BigInt;
using schur::BigRat;

/// Ordered choice of k distinct target ports out of N.
struct PortInjection {
  int ports = 0;
  std::vector<int> targets;  // k distinct values in 1..N

  PortInjection(int ports, std::vector<int> targets);
  int k() const { return static_cast<int>(targets.size()); }
};

/// M = N!/(N-k)!.
BigInt injection_count(int ports, int k);

/// All injections in lexicographic target order (feasible only at desk scale).
std::vector<PortInjection> enumerate_injections(int ports, int k);

/// Structure of an injection pair: full overlaps are positions j with
/// g(j) = g'(j); mismatched positions chain through shared ports and every
/// closed chain (cycle) lifts the overlap exponent by one more unit of 2.
struct OverlapStructure {
  int full_overlaps = 0;
  int cycles = 0;
  int exponent(int ports, int k) const { return ports + k - 2 * (full_overlaps + cycles); }
};

OverlapStructure overlap_structure(const PortInjection& g, const PortInjection& h);

/// Exact closed-form pairwise overlap d^{-(N+k-2t)} with t = full overlaps +
/// matching cycles (the cycle term is the dense-verified correction to the
/// full-overlap-only counting).
BigRat pairwise_overlap_closed(const PortInjection& g, const PortInjection& h, int d);

/// Tr(eta^g eta^g') by dense contraction of the low-rank signal factors.
double pairwise_overlap_dense(const PortInjection& g, const PortInjection& h, int d);

/// Factor F with eta^g = F F^dagger on layout [S1..Sk, A1..AN]; columns span
/// the purifying environment, so rank(eta^g) = d^{N-k} columns.
Matrix signal_factor(const PortInjection& g, int d);

/// Explicit density operator (small sizes only).
HermitianOperator signal_state(const PortInjection& g, int d);

/// Printed multiplicity formula L_{N,k,t} = k!(N-t)!/((k-t)!(N-k)!).
BigInt overlap_multiplicity(int ports, int k, int t);

/// For a fixed g (any g, by symmetry): count of g' != g per full-overlap count,
/// plus the count of cyclically matched pairs ("cycles" key -1 .. stored under -1).
struct OverlapHistogram {
  std::map<int, std::int64_t> by_full_overlaps;  // g' != g, keyed by t
  std::int64_t cycle_pairs = 0;                  // pairs whose exponent is lifted by cycles
};
OverlapHistogram brute_overlap_histogram(int ports, int k);

/// Printed closed form for Tr(avg eta^2): 1/(M d^{N-k}) + (sum_{t<k} r^t) d^{-(N+k)}
/// with r = k d^2 / N; the geometric factor is summed term by term, which also
/// covers the removable singularity at k d^2 = N.
BigRat avg_signal_purity_closed(int ports, int k, int d);

/// (1/M^2) sum over all injection pairs of the dense pairwise traces.
double avg_signal_purity_brute(int ports, int k, int d);

struct PurityComparison {
  BigRat closed_form;
  double brute_force = 0.0;
  double relative_gap = 0.0;
  bool formula_mismatch = false;  // closed form differs from the exhaustive value
  double fidelity_bound_brute = 0.0;   // 1/(d^{N+k} Tr avg eta^2) from the oracle
  double fidelity_bound_closed = 0.0;
};
PurityComparison compare_signal_purity(int ports, int k, int d);

/// F(sim) >= [d^{2k}/M + sum_{t<k} (k d^2/N)^t]^{-1}, evaluated in log space.
double simultaneous_fidelity_bound(int ports, int k, int d);

struct ParallelBound {
  double value = 0.0;         // (1 - 3k/(4N))^k
  double linear_lower = 0.0;  // 1 - 3k^2/(4N)
};
ParallelBound parallel_fidelity_bound(int ports, int k);

int no_signalling_max(int ports);

struct ScanRow {
  int ports = 0;
  int q = 0;
};

struct ScanReport {
  std::string protocol;
  double delta = 0.0;
  std::vector<ScanRow> rows;
  double fit_exponent = 0.0;  // log-log slope over rows with q >= 2
  int fit_points = 0;
};

/// Largest k with bound(N,k) >= 1 - delta, capped at floor(N/2), per grid N.
ScanReport efficiency_scan(const std::string& protocol, double delta, const std::vector<int>& grid,
                           int d = 2);

}  // namespace portsim::multi

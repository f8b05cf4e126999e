// SPDX-License-Identifier: Apache-2.0
#include "portsim/multi.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "portsim/parallel.hpp"

namespace portsim::multi {

namespace {

constexpr std::int64_t kFactorCap = std::int64_t{1} << 20;  // d^{2N} amplitudes
constexpr std::int64_t kSquareCap = 2048;                   // explicit density matrices

std::int64_t ipow(int base, int exp) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

double log_injection_count(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

PortInjection::PortInjection(int ports_, std::vector<int> targets_)
    : ports(ports_), targets(std::move(targets_)) {
  std::set<int> seen;
  for (int t : targets) {
    if (t < 1 || t > ports) throw ArgumentError("injection target out of range 1..N");
    if (!seen.insert(t).second) throw ArgumentError("injection targets must be distinct");
  }
}

BigInt injection_count(int ports, int k) {
  if (k < 0 || k > ports) throw ArgumentError("injection_count requires 0 <= k <= N");
  BigInt m = 1;
  for (int i = 0; i < k; ++i) m *= ports - i;
  return m;
}

std::vector<PortInjection> enumerate_injections(int ports, int k) {
  const BigInt m = injection_count(ports, k);
  if (m > 200000) throw ResourceLimitError("too many injections to enumerate");
  std::vector<PortInjection> out;
  std::vector<int> cur;
  std::vector<bool> used(static_cast<size_t>(ports + 1), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == k) {
      out.emplace_back(ports, cur);
      return;
    }
    for (int t = 1; t <= ports; ++t) {
      if (used[static_cast<size_t>(t)]) continue;
      used[static_cast<size_t>(t)] = true;
      cur.push_back(t);
      rec();
      cur.pop_back();
      used[static_cast<size_t>(t)] = false;
    }
  };
  rec();
  return out;
}

OverlapStructure overlap_structure(const PortInjection& g, const PortInjection& h) {
  if (g.ports != h.ports || g.k() != h.k()) throw ArgumentError("injection pair shape mismatch");
  OverlapStructure s;
  std::map<int, int> next;  // partial injection g(j) -> h(j) over mismatched positions
  for (int j = 0; j < g.k(); ++j) {
    if (g.targets[static_cast<size_t>(j)] == h.targets[static_cast<size_t>(j)]) {
      ++s.full_overlaps;
    } else {
      next[g.targets[static_cast<size_t>(j)]] = h.targets[static_cast<size_t>(j)];
    }
  }
  std::set<int> visited;
  for (const auto& [start, first] : next) {
    if (visited.count(start)) continue;
    int x = start;
    bool closed = false;
    while (true) {
      visited.insert(x);
      auto it = next.find(x);
      if (it == next.end()) break;
      x = it->second;
      if (x == start) {
        closed = true;
        break;
      }
      if (visited.count(x)) break;
    }
    if (closed) ++s.cycles;
  }
  return s;
}

BigRat pairwise_overlap_closed(const PortInjection& g, const PortInjection& h, int d) {
  const OverlapStructure s = overlap_structure(g, h);
  const int e = s.exponent(g.ports, g.k());
  BigInt den = 1;
  for (int i = 0; i < e; ++i) den *= d;
  return BigRat(1, den);
}

Matrix signal_factor(const PortInjection& g, int d) {
  const int n = g.ports;
  const int k = g.k();
  const std::int64_t dim_a = ipow(d, n);
  const std::int64_t rows = ipow(d, n + k);
  const std::int64_t cols = ipow(d, n - k);
  if (rows > kFactorCap || dim_a * rows / std::max<std::int64_t>(cols, 1) > kFactorCap) {
    throw ResourceLimitError("signal factor exceeds dense cap");
  }
  std::vector<int> slot_of(static_cast<size_t>(n + 1), -1);  // port -> slot index
  for (int j = 0; j < k; ++j) slot_of[static_cast<size_t>(g.targets[static_cast<size_t>(j)])] = j;

  Matrix f = Matrix::Zero(rows, cols);
  const double amp = std::pow(static_cast<double>(d), -0.5 * n);
  std::vector<int> adig(static_cast<size_t>(n));
  for (std::int64_t a = 0; a < dim_a; ++a) {
    std::int64_t rem = a;
    for (int p = n - 1; p >= 0; --p) {
      adig[static_cast<size_t>(p)] = static_cast<int>(rem % d);
      rem /= d;
    }
    std::int64_t srow = 0;
    for (int j = 0; j < k; ++j)
      srow = srow * d + adig[static_cast<size_t>(g.targets[static_cast<size_t>(j)] - 1)];
    std::int64_t env = 0;
    for (int p = 1; p <= n; ++p) {
      if (slot_of[static_cast<size_t>(p)] < 0) env = env * d + adig[static_cast<size_t>(p - 1)];
    }
    f(srow * dim_a + a, env) = amp;
  }
  return f;
}

HermitianOperator signal_state(const PortInjection& g, int d) {
  const std::int64_t dim = ipow(d, g.ports + g.k());
  if (dim > kSquareCap) {
    throw ResourceLimitError("explicit signal operator exceeds dense cap (dim " +
                             std::to_string(dim) + " > " + std::to_string(kSquareCap) + ")");
  }
  const Matrix f = signal_factor(g, d);
  std::vector<Subsystem> subs;
  for (int j = 1; j <= g.k(); ++j) subs.push_back({"S" + std::to_string(j), d});
  for (int p = 1; p <= g.ports; ++p) subs.push_back({"A" + std::to_string(p), d});
  Matrix rho = f * f.adjoint();
  return HermitianOperator(SystemLayout(std::move(subs)), std::move(rho), OperatorKind::Density);
}

double pairwise_overlap_dense(const PortInjection& g, const PortInjection& h, int d) {
  const Matrix fg = signal_factor(g, d);
  const Matrix fh = signal_factor(h, d);
  const Matrix x = fg.adjoint() * fh;
  return x.squaredNorm();
}

BigInt overlap_multiplicity(int ports, int k, int t) {
  if (t < 1 || t > k || k > ports) throw ArgumentError("overlap_multiplicity requires 1 <= t <= k <= N");
  // k!(N-t)! / ((k-t)!(N-k)!)
  BigInt num = 1;
  for (int i = 2; i <= k; ++i) num *= i;
  for (int i = 2; i <= ports - t; ++i) num *= i;
  BigInt den = 1;
  for (int i = 2; i <= k - t; ++i) den *= i;
  for (int i = 2; i <= ports - k; ++i) den *= i;
  return num / den;
}

OverlapHistogram brute_overlap_histogram(int ports, int k) {
  if (ports > 7) throw ResourceLimitError("brute overlap histogram caps at N = 7");
  const auto all = enumerate_injections(ports, k);
  std::vector<int> first;
  for (int j = 1; j <= k; ++j) first.push_back(j);
  const PortInjection g(ports, first);
  OverlapHistogram hist;
  for (const auto& h : all) {
    if (h.targets == g.targets) continue;
    const OverlapStructure s = overlap_structure(g, h);
    hist.by_full_overlaps[s.full_overlaps] += 1;
    if (s.cycles > 0) hist.cycle_pairs += 1;
  }
  return hist;
}

BigRat avg_signal_purity_closed(int ports, int k, int d) {
  if (k < 1 || k > ports) throw ArgumentError("avg_signal_purity requires 1 <= k <= N");
  const BigInt m = injection_count(ports, k);
  BigInt dnk = 1, dnpk = 1;
  for (int i = 0; i < ports - k; ++i) dnk *= d;
  for (int i = 0; i < ports + k; ++i) dnpk *= d;
  const BigRat r(BigInt(k) * d * d, ports);
  BigRat geom = 0, rpow = 1;
  for (int t = 0; t < k; ++t) {
    geom += rpow;
    rpow *= r;
  }
  return BigRat(1, m * dnk) + geom / BigRat(dnpk);
}

double avg_signal_purity_brute(int ports, int k, int d) {
  const auto all = enumerate_injections(ports, k);
  const std::size_t m = all.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);
  const auto traces = parallel_map<double>(pairs.size(), [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    const double tr = pairwise_overlap_dense(all[i], all[j], d);
    return (i == j) ? tr : 2.0 * tr;
  });
  double total = 0.0;
  for (double t : traces) total += t;
  return total / (static_cast<double>(m) * static_cast<double>(m));
}

PurityComparison compare_signal_purity(int ports, int k, int d) {
  PurityComparison cmp;
  cmp.closed_form = avg_signal_purity_closed(ports, k, d);
  cmp.brute_force = avg_signal_purity_brute(ports, k, d);
  const double closed = static_cast<double>(schur::BigRat(cmp.closed_form).convert_to<double>());
  cmp.relative_gap = std::abs(closed - cmp.brute_force) / std::max(closed, cmp.brute_force);
  cmp.formula_mismatch = cmp.relative_gap > 1e-9;
  const double dnpk = std::pow(d, ports + k);
  cmp.fidelity_bound_brute = 1.0 / (dnpk * cmp.brute_force);
  cmp.fidelity_bound_closed = 1.0 / (dnpk * closed);
  return cmp;
}

double simultaneous_fidelity_bound(int ports, int k, int d) {
  if (k < 1 || k > ports) throw ArgumentError("simultaneous bound requires 1 <= k <= N");
  const double log_a = 2.0 * k * std::log(d) - log_injection_count(ports, k);
  const double r = static_cast<double>(k) * d * d / ports;
  double log_g;
  if (r < 1.0) {
    double geom = 0.0, rp = 1.0;
    for (int t = 0; t < k; ++t) {
      geom += rp;
      rp *= r;
    }
    log_g = std::log(geom);
  } else if (r == 1.0) {
    log_g = std::log(static_cast<double>(k));
  } else {
    // (r^k - 1)/(r - 1) in log space
    log_g = k * std::log(r) + std::log1p(-std::pow(r, -k)) - std::log(r - 1.0);
  }
  const double hi = std::max(log_a, log_g);
  const double lse = hi + std::log(std::exp(log_a - hi) + std::exp(log_g - hi));
  return std::clamp(std::exp(-lse), 0.0, 1.0);
}

ParallelBound parallel_fidelity_bound(int ports, int k) {
  if (k < 1 || ports < k) throw ArgumentError("parallel bound requires 1 <= k <= N");
  ParallelBound b;
  b.value = std::pow(1.0 - 3.0 * k / (4.0 * ports), k);
  b.linear_lower = 1.0 - 3.0 * k * k / (4.0 * ports);
  return b;
}

int no_signalling_max(int ports) {
  if (ports < 0) throw ArgumentError("ports must be >= 0");
  return ports / 2;
}

ScanReport efficiency_scan(const std::string& protocol, double delta, const std::vector<int>& grid,
                           int d) {
  if (delta <= 0.0 || delta >= 1.0) throw ArgumentError("delta must be in (0,1)");
  ScanReport rep;
  rep.protocol = protocol;
  rep.delta = delta;
  auto bound = [&](int n, int k) -> double {
    if (protocol == "rec") return schur::accumulated_error_bound(n, k);
    if (protocol == "sim") return simultaneous_fidelity_bound(n, k, d);
    if (protocol == "par") return parallel_fidelity_bound(n, k).value;
    throw ArgumentError("unknown protocol '" + protocol + "' (rec|sim|par)");
  };
  for (int n : grid) {
    int q = 0;
    const int cap = no_signalling_max(n);
    for (int k = 1; k <= cap; ++k) {
      if (bound(n, k) >= 1.0 - delta) q = k;
    }
    rep.rows.push_back({n, q});
  }
  // log-log slope over rows clear of the integer floor
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (const auto& row : rep.rows) {
    if (row.q < 2) continue;
    const double x = std::log(static_cast<double>(row.ports));
    const double y = std::log(static_cast<double>(row.q));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++npts;
  }
  rep.fit_points = npts;
  rep.fit_exponent = npts >= 2 ? (npts * sxy - sx * sy) / (npts * sxx - sx * sx)
                               : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

}  // namespace portsim::multi

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "portsim/multi.hpp"
#include "portsim/qcore.hpp"

using namespace portsim;
using namespace portsim::multi;

TEST_CASE("injection counting") {
  CHECK(injection_count(7, 1) == 7);
  CHECK(injection_count(5, 2) == 20);
  CHECK(injection_count(9, 0) == 1);
  CHECK_THROWS_AS(injection_count(3, 4), ArgumentError);
  CHECK(enumerate_injections(5, 2).size() == 20);
}

TEST_CASE("injection validation") {
  CHECK_THROWS_AS(PortInjection(4, {1, 1}), ArgumentError);
  CHECK_THROWS_AS(PortInjection(4, {0}), ArgumentError);
  CHECK_THROWS_AS(PortInjection(4, {5}), ArgumentError);
}

TEST_CASE("signal states have rank d^{N-k} and unit trace") {
  for (int d : {2, 3}) {
    const PortInjection g(3, {2, 3});
    const HermitianOperator eta = signal_state(g, d);
    CHECK(eta.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qcore::support_rank(eta.matrix()) == d);  // d^{3-2}
  }
  // no traced subsystems: a pure state of rank 1
  const HermitianOperator pure = signal_state(PortInjection(2, {1, 2}), 2);
  CHECK(qcore::support_rank(pure.matrix()) == 1);
}

TEST_CASE("dense overlaps equal the structural closed form on full sweeps") {
  for (const auto& [n, k, d] : std::vector<std::tuple<int, int, int>>{
           {4, 2, 2}, {3, 2, 3}, {4, 3, 2}, {5, 1, 2}}) {
    const auto all = enumerate_injections(n, k);
    for (const auto& g : all) {
      for (const auto& h : all) {
        const double dense = pairwise_overlap_dense(g, h, d);
        const double closed = BigRat(pairwise_overlap_closed(g, h, d)).convert_to<double>();
        CHECK(std::abs(dense - closed) <= 1e-12 * closed);
      }
    }
  }
}

TEST_CASE("the four reference overlap patterns at N=7, k=2") {
  const int d = 2;
  const PortInjection g(7, {4, 5});
  // disjoint ports
  CHECK(pairwise_overlap_dense(g, PortInjection(7, {1, 2}), d) ==
        doctest::Approx(std::pow(2.0, -9)).epsilon(1e-12));
  // one full overlap (same port, same slot)
  CHECK(pairwise_overlap_dense(g, PortInjection(7, {4, 6}), d) ==
        doctest::Approx(std::pow(2.0, -7)).epsilon(1e-12));
  // partial overlap: shared port on a different slot
  CHECK(pairwise_overlap_dense(g, PortInjection(7, {5, 6}), d) ==
        doctest::Approx(std::pow(2.0, -9)).epsilon(1e-12));
  // identical injections
  CHECK(pairwise_overlap_dense(g, g, d) == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-12));
}

TEST_CASE("cyclically matched injections lift the exponent") {
  const PortInjection g(4, {1, 2});
  const PortInjection h(4, {2, 1});
  const OverlapStructure s = overlap_structure(g, h);
  CHECK(s.full_overlaps == 0);
  CHECK(s.cycles == 1);
  CHECK(pairwise_overlap_dense(g, h, 2) == doctest::Approx(std::pow(2.0, -4)).epsilon(1e-12));
}

TEST_CASE("printed multiplicity formula and exhaustive counts") {
  CHECK(overlap_multiplicity(5, 2, 1) == 8);   // the printed value
  CHECK(overlap_multiplicity(6, 2, 2) == 2);   // L_{N,k,k} = k!
  CHECK(overlap_multiplicity(7, 3, 3) == 6);
  CHECK_THROWS_AS(overlap_multiplicity(5, 2, 0), ArgumentError);

  const OverlapHistogram h52 = brute_overlap_histogram(5, 2);
  CHECK(h52.by_full_overlaps.at(1) == 6);  // exhaustive count disagrees with the formula's 8
  CHECK(h52.by_full_overlaps.at(0) == 13);
  CHECK(h52.cycle_pairs == 1);

  const OverlapHistogram h62 = brute_overlap_histogram(6, 2);
  CHECK(h62.by_full_overlaps.at(1) == 8);
  CHECK(h62.by_full_overlaps.at(0) == 21);
}

TEST_CASE("closed-form purity matches the one-term geometric sum at k=1") {
  for (int n : {3, 5, 8}) {
    for (int d : {2, 3}) {
      BigInt dn1 = 1, dnp1 = 1;
      for (int i = 0; i < n - 1; ++i) dn1 *= d;
      for (int i = 0; i < n + 1; ++i) dnp1 *= d;
      const BigRat expected = BigRat(1, BigInt(n) * dn1) + BigRat(1, dnp1);
      CHECK(avg_signal_purity_closed(n, 1, d) == expected);
    }
  }
}

TEST_CASE("brute purity oracle values") {
  CHECK(avg_signal_purity_brute(5, 2, 2) == doctest::Approx(0.021875).epsilon(1e-10));
  const PurityComparison cmp = compare_signal_purity(5, 2, 2);
  CHECK(BigRat(cmp.closed_form).convert_to<double>() == doctest::Approx(0.0265625).epsilon(1e-12));
  CHECK(cmp.formula_mismatch);  // the printed counting over-weights full overlaps
  CHECK(cmp.fidelity_bound_brute == doctest::Approx(1.0 / (128 * 0.021875)).epsilon(1e-9));
}

TEST_CASE("sum of dense overlaps is internally consistent with the brute purity") {
  const int n = 4, k = 2, d = 2;
  const auto all = enumerate_injections(n, k);
  double total = 0.0;
  for (const auto& g : all)
    for (const auto& h : all) total += pairwise_overlap_dense(g, h, d);
  const double m2 = static_cast<double>(all.size() * all.size());
  CHECK(total / m2 == doctest::Approx(avg_signal_purity_brute(n, k, d)).epsilon(1e-10));
}

TEST_CASE("simultaneous fidelity bound") {
  CHECK(simultaneous_fidelity_bound(4, 1, 2) == doctest::Approx(0.5).epsilon(1e-14));
  // k=1, d=2 closed form is N/(N+4)
  for (int n : {4, 10, 100, 1000}) {
    CHECK(simultaneous_fidelity_bound(n, 1, 2) ==
          doctest::Approx(static_cast<double>(n) / (n + 4)).epsilon(1e-12));
  }
  CHECK(simultaneous_fidelity_bound(100, 1, 2) == doctest::Approx(0.96).epsilon(0.002 / 0.96));
  // monotone in N at fixed k
  double prev = 0.0;
  for (int n : {8, 16, 32, 64, 128}) {
    const double b = simultaneous_fidelity_bound(n, 1, 2);
    CHECK(b > prev);
    prev = b;
  }
  // the removable singularity k d^2 = N evaluates finitely
  const double sing = simultaneous_fidelity_bound(8, 2, 2);
  CHECK(std::isfinite(sing));
  CHECK(sing > 0.0);
  CHECK(sing < 1.0);
}

TEST_CASE("parallel repetition bound") {
  const ParallelBound b1 = parallel_fidelity_bound(16, 1);
  CHECK(b1.value == doctest::Approx(1.0 - 3.0 / 64.0).epsilon(1e-14));
  const ParallelBound b2 = parallel_fidelity_bound(8, 2);
  CHECK(b2.value == doctest::Approx(0.66015625).epsilon(1e-14));
  for (int n : {8, 32, 128}) {
    for (int k = 1; k <= n / 2; k += 3) {
      const ParallelBound b = parallel_fidelity_bound(n, k);
      CHECK(b.value >= b.linear_lower - 1e-12);
    }
  }
}

TEST_CASE("no-signalling cap") {
  CHECK(no_signalling_max(10) == 5);
  CHECK(no_signalling_max(11) == 5);
  CHECK(no_signalling_max(0) == 0);
}

TEST_CASE("efficiency scans") {
  std::vector<int> grid;
  for (int n = 64; n <= 4096; n *= 2) grid.push_back(n);

  const ScanReport par = efficiency_scan("par", 0.05, grid);
  CHECK(par.fit_exponent == doctest::Approx(0.5).epsilon(0.2));
  const ScanReport sim = efficiency_scan("sim", 0.05, grid);
  CHECK(sim.fit_exponent == doctest::Approx(1.0).epsilon(0.1));

  for (const auto& rep : {par, sim}) {
    int prev = -1;
    for (const auto& row : rep.rows) {
      CHECK(row.q <= no_signalling_max(row.ports));
      CHECK(row.q >= prev);  // monotone non-decreasing in N
      prev = row.q;
    }
  }
  CHECK_THROWS_AS(efficiency_scan("bogus", 0.05, grid), ArgumentError);
  CHECK_THROWS_AS(efficiency_scan("par", 0.0, grid), ArgumentError);
}

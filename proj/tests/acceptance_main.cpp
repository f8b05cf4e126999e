// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: every check prints one [PASS]/[FAIL] line with the
// measured numbers. Invoke with a criterion index (1..11) or no argument to
// run all. Exit status is nonzero when any executed check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "portsim/ensembles.hpp"
#include "portsim/multi.hpp"
#include "portsim/parallel.hpp"
#include "portsim/pgm.hpp"
#include "portsim/recycling.hpp"
#include "portsim/schur.hpp"

using namespace portsim;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// C1: analytic sums vs dense PGM values for N = 2..8 at 1e-9 relative, <= 60 s.
bool criterion1(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_tr = 0.0, worst_tss = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const pgm::PovmSet povm = pgm::build_pgm(n);
    const double tr_dense = povm.elements[0].trace();
    const double tr_exact =
        static_cast<double>(schur::BigRat(schur::trace_pi1_exact_sum(n)).convert_to<double>());
    worst_tr = std::max(worst_tr, std::abs(tr_dense - tr_exact) / tr_exact);

    const Matrix sigma1 = pgm::build_sigma(1, n).matrix();
    const double tss_dense = (sigma1 * povm.sqrt_elements[0]).trace().real();
    const double tss_exact = static_cast<double>(schur::trace_sigma_sqrtpi1_sum(n));
    worst_tss = std::max(worst_tss, std::abs(tss_dense - tss_exact) / tss_exact);
  }
  const double elapsed = seconds_since(t0);
  detail = "max rel diff TrPi1=" + fmt(worst_tr) + ", Tr(sigma sqrtPi1)=" + fmt(worst_tss) +
           ", elapsed=" + fmt(elapsed) + "s";
  return worst_tr <= 1e-9 && worst_tss <= 1e-9 && elapsed <= 60.0;
}

// C2: fit of recycle_fidelity_bound on odd N in [101,1001] against 1 - c1/N;
// the stated target is c1 = 11/4 within 2%.
bool criterion2(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> grid;
  for (int n = 101; n <= 1001; n += 100) grid.push_back(n);
  const schur::AsymptoticReport rep =
      schur::asymptotic_expansion_check(schur::AsymQuantity::RecycleBound, grid);
  const double c1 = -rep.c1;
  const double elapsed = seconds_since(t0);
  const bool ok = std::abs(c1 - 2.75) <= 0.02 * 2.75 && elapsed <= 60.0;
  detail = "fitted c1=" + fmt(c1) + " vs target 2.75 (2% tol), constant=" + fmt(rep.constant) +
           ", elapsed=" + fmt(elapsed) + "s";
  return ok;
}

// C3: N TrPi1 / 2^{N+1} fit against 1 - c1/N - c2/N^2; stated targets
// c1 = 11/2 (2%) and c2 = 6 (15%).
bool criterion3(std::string& detail) {
  std::vector<int> grid;
  for (int n = 101; n <= 1001; n += 100) grid.push_back(n);
  const schur::AsymptoticReport rep =
      schur::asymptotic_expansion_check(schur::AsymQuantity::TrPi1, grid);
  const double c1 = -rep.c1, c2 = -rep.c2;
  const bool ok = std::abs(c1 - 5.5) <= 0.02 * 5.5 && std::abs(c2 - 6.0) <= 0.15 * 6.0;
  detail = "fitted c1=" + fmt(c1) + " vs 5.5 (2% tol), c2=" + fmt(c2) + " vs 6 (15% tol)";
  return ok;
}

// C4: exact_protocol_fidelity(N) >= recycle_fidelity_bound(N) for N = 2..8;
// at N=1 the dense outcome is exactly p1 = 1/4 with conditional fidelity 1.
bool criterion4(std::string& detail) {
  const pgm::PovmSet povm1 = pgm::build_pgm(1);
  const pgm::TeleportOutcome out1 =
      pgm::post_measurement_state(pgm::protocol_input(1), povm1, 1);
  if (std::abs(out1.probability - 0.25) > 1e-12 || std::abs(out1.ideal_fidelity - 1.0) > 1e-9) {
    detail = "N=1 dense values p1=" + fmt(out1.probability) + ", F=" + fmt(out1.ideal_fidelity);
    return false;
  }
  double worst_margin = 1.0;
  int worst_n = 0;
  for (int n = 2; n <= 8; ++n) {
    const double exact = pgm::exact_protocol_fidelity(n);
    const double bound = schur::recycle_fidelity_bound(n);
    const double margin = exact - bound;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_n = n;
    }
  }
  detail = "N=1 exact (p=0.25, F=1); min(exact - bound)=" + fmt(worst_margin) +
           " at N=" + std::to_string(worst_n);
  return worst_margin >= -1e-9;
}

// C5: recycle runs at N=6, k=3 over 1000 seeds; per-round mean fidelity must
// clear 1 - 11r/12 - 3 sigma, within 10 minutes.
bool criterion5(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const int seeds = 1000, rounds = 3, ports = 6;
  struct SeedData {
    std::vector<double> fids, ests;
  };
  const auto per_seed = parallel_map<SeedData>(seeds, [&](std::size_t s) {
    const recycling::RecycleTrace t =
        recycling::recycle_protocol_run(ports, rounds, 10000 + static_cast<std::uint64_t>(s));
    SeedData d{std::vector<double>(rounds, 0.0), std::vector<double>(rounds, 0.0)};
    for (const auto& row : t.rounds) {
      d.fids[static_cast<size_t>(row.round - 1)] = row.success ? row.fid_teleported : 0.0;
      d.ests[static_cast<size_t>(row.round - 1)] = row.fid_resource_est;
    }
    return d;
  });
  bool ok = true;
  std::string parts;
  std::vector<double> est_means(rounds, 0.0), est_sigmas(rounds, 0.0);
  for (int r = 0; r < rounds; ++r) {
    double sum = 0.0, sumsq = 0.0, esum = 0.0, esumsq = 0.0;
    for (const auto& d : per_seed) {
      sum += d.fids[static_cast<size_t>(r)];
      sumsq += d.fids[static_cast<size_t>(r)] * d.fids[static_cast<size_t>(r)];
      esum += d.ests[static_cast<size_t>(r)];
      esumsq += d.ests[static_cast<size_t>(r)] * d.ests[static_cast<size_t>(r)];
    }
    const double mean = sum / seeds;
    const double sigma = std::sqrt(std::max(0.0, sumsq / seeds - mean * mean) / seeds);
    est_means[static_cast<size_t>(r)] = esum / seeds;
    est_sigmas[static_cast<size_t>(r)] =
        std::sqrt(std::max(0.0, esumsq / seeds - est_means[static_cast<size_t>(r)] *
                                                     est_means[static_cast<size_t>(r)]) /
                  seeds);
    const double bound = schur::accumulated_error_bound(ports, r + 1);
    ok = ok && mean >= bound - 3.0 * sigma;
    parts += (r ? "; " : "") + std::string("r") + std::to_string(r + 1) + ": mean=" + fmt(mean) +
             " 3sig=" + fmt(3 * sigma) + " bound=" + fmt(bound);
  }
  // seed-averaged resource degradation must not reverse between rounds
  bool monotone = true;
  for (int r = 1; r < rounds; ++r) {
    const double slack = 3.0 * std::hypot(est_sigmas[static_cast<size_t>(r)],
                                          est_sigmas[static_cast<size_t>(r - 1)]);
    monotone = monotone &&
               est_means[static_cast<size_t>(r)] >= est_means[static_cast<size_t>(r - 1)] - slack;
  }
  ok = ok && monotone;
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 600.0;
  detail = parts + "; resource-est means " + fmt(est_means[0]) + "/" + fmt(est_means[1]) + "/" +
           fmt(est_means[2]) + (monotone ? " (monotone)" : " (NOT monotone)") +
           "; elapsed=" + fmt(elapsed) + "s";
  return ok;
}

// C6: dense pairwise overlaps equal d^{-(N+k-2t)} exactly for every injection
// pair at N <= 6, k <= 2, d in {2,3}, t computed structurally; plus the four
// reference patterns at N=7, k=2.
bool criterion6(std::string& detail) {
  double worst = 0.0;
  std::int64_t pairs = 0;
  for (int d : {2, 3}) {
    for (int n = 2; n <= 6; ++n) {
      for (int k = 1; k <= std::min(2, n); ++k) {
        const auto all = multi::enumerate_injections(n, k);
        std::vector<std::pair<std::size_t, std::size_t>> idx;
        for (std::size_t i = 0; i < all.size(); ++i)
          for (std::size_t j = i; j < all.size(); ++j) idx.emplace_back(i, j);
        const auto devs = parallel_map<double>(idx.size(), [&](std::size_t q) {
          const auto [i, j] = idx[q];
          const double dense = multi::pairwise_overlap_dense(all[i], all[j], d);
          const double closed =
              multi::BigRat(multi::pairwise_overlap_closed(all[i], all[j], d)).convert_to<double>();
          return std::abs(dense - closed) / closed;
        });
        for (double v : devs) worst = std::max(worst, v);
        pairs += static_cast<std::int64_t>(idx.size());
      }
    }
  }
  // reference patterns (disjoint, full, partial, identical) at N=7, k=2, d=2
  const multi::PortInjection g(7, {4, 5});
  const double p_disjoint = multi::pairwise_overlap_dense(g, multi::PortInjection(7, {1, 2}), 2);
  const double p_full = multi::pairwise_overlap_dense(g, multi::PortInjection(7, {4, 6}), 2);
  const double p_partial = multi::pairwise_overlap_dense(g, multi::PortInjection(7, {5, 6}), 2);
  const double p_same = multi::pairwise_overlap_dense(g, g, 2);
  const bool patterns = std::abs(p_disjoint - std::pow(2.0, -9)) < 1e-13 &&
                        std::abs(p_full - std::pow(2.0, -7)) < 1e-12 &&
                        std::abs(p_partial - std::pow(2.0, -9)) < 1e-13 &&
                        std::abs(p_same - std::pow(2.0, -5)) < 1e-11;
  detail = std::to_string(pairs) + " unordered pairs, worst rel dev=" + fmt(worst) +
           (patterns ? ", four reference patterns reproduced" : ", reference patterns FAILED");
  return worst <= 1e-12 && patterns;
}

// C7: exhaustive purity oracle at (5,2,2) and (4,2,3); mismatch with the
// printed closed form is reported; the oracle-based bound clears 1-4k/N-0.15
// and the closed form reproduces N/(N+4) at k=1 exactly.
bool criterion7(std::string& detail) {
  bool ok = true;
  std::string parts;
  for (const auto& [n, k, d] : std::vector<std::tuple<int, int, int>>{{5, 2, 2}, {4, 2, 3}}) {
    const multi::PurityComparison cmp = multi::compare_signal_purity(n, k, d);
    const double floor = 1.0 - 4.0 * k / n - 0.15;
    ok = ok && cmp.fidelity_bound_brute >= floor;
    parts += "(N=" + std::to_string(n) + ",k=" + std::to_string(k) + ",d=" + std::to_string(d) +
             "): brute=" + fmt(cmp.brute_force) +
             " closed=" + fmt(multi::BigRat(cmp.closed_form).convert_to<double>()) +
             (cmp.formula_mismatch ? " [formula_mismatch]" : "") +
             " F_brute=" + fmt(cmp.fidelity_bound_brute) + " floor=" + fmt(floor) + "; ";
  }
  double worst_k1 = 0.0;
  for (int n : {4, 16, 100, 999}) {
    const double b = multi::simultaneous_fidelity_bound(n, 1, 2);
    worst_k1 = std::max(worst_k1, std::abs(b - static_cast<double>(n) / (n + 4)));
  }
  ok = ok && worst_k1 <= 1e-12;
  detail = parts + "k=1 closed form |dev from N/(N+4)|=" + fmt(worst_k1);
  return ok;
}

// C8: pauli(2) at N=1 gives orthogonal Bell signals, zero margin at eps=0 and
// fidelity exactly 1; the port-swap pipeline matches N/(N+3) for N=2..6.
bool criterion8(std::string& detail) {
  const ensembles::SignalEnsemble pauli =
      ensembles::signals_from_ensemble(ensembles::make_pauli_ensemble(2), 1, 2);
  double cross = 0.0;
  for (size_t i = 0; i < pauli.signals.size(); ++i)
    for (size_t j = i + 1; j < pauli.signals.size(); ++j)
      cross = std::max(cross,
                       std::abs((pauli.signals[i].matrix() * pauli.signals[j].matrix()).trace()));
  const ensembles::ConditionResult lem = ensembles::reliability_condition(pauli, 0.0);
  const double fid_pauli =
      ensembles::fidelity_from_success(4, 2, ensembles::pgm_success_lower_bound(pauli)).value;

  double worst_pipeline = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const ensembles::SignalEnsemble sig =
        ensembles::signals_from_ensemble(ensembles::make_port_swap_ensemble(n, 2), n, 2);
    const double fid =
        ensembles::fidelity_from_success(sig.signals.size(), 2, ensembles::pgm_success_lower_bound(sig)).value;
    worst_pipeline = std::max(worst_pipeline, std::abs(fid - ensembles::pbt_discrimination_bound(n, 2)));
  }
  detail = "bell cross-trace=" + fmt(cross) + ", margin=" + fmt(lem.margin) +
           ", pauli fidelity=" + fmt(fid_pauli) + ", port-swap max |dev|=" + fmt(worst_pipeline);
  return cross <= 1e-12 && lem.holds && std::abs(lem.margin) <= 1e-12 &&
         std::abs(fid_pauli - 1.0) <= 1e-12 && worst_pipeline <= 1e-9;
}

// C9: frame potentials — 2 for the 24 Cliffords, 4 for the qubit Paulis.
bool criterion9(std::string& detail) {
  const double fp_cl = ensembles::frame_potential(ensembles::make_clifford_1q_ensemble());
  const double fp_pa = ensembles::frame_potential(ensembles::make_pauli_ensemble(2));
  detail = "clifford=" + fmt(fp_cl) + ", pauli=" + fmt(fp_pa);
  return std::abs(fp_cl - 2.0) <= 1e-9 && std::abs(fp_pa - 4.0) <= 1e-9;
}

// C10: scans never exceed floor(N/2); par exponent 0.5 +- 0.1 and sim exponent
// 1.0 +- 0.1 on N in [64, 4096].
bool criterion10(std::string& detail) {
  std::vector<int> grid;
  for (int n = 64; n <= 4096; n *= 2) grid.push_back(n);
  bool capped = true;
  for (const char* proto : {"rec", "sim", "par"}) {
    const multi::ScanReport rep = multi::efficiency_scan(proto, 0.05, grid);
    for (const auto& row : rep.rows) capped = capped && row.q <= multi::no_signalling_max(row.ports);
  }
  const multi::ScanReport par = multi::efficiency_scan("par", 0.05, grid);
  const multi::ScanReport sim = multi::efficiency_scan("sim", 0.05, grid);
  detail = "par exponent=" + fmt(par.fit_exponent) + " (target 0.5 +- 0.1), sim exponent=" +
           fmt(sim.fit_exponent) + " (target 1.0 +- 0.1), caps " + (capped ? "respected" : "VIOLATED");
  return capped && std::abs(par.fit_exponent - 0.5) <= 0.1 && std::abs(sim.fit_exponent - 1.0) <= 0.1;
}

// C11: identical (config, seed) invocations produce byte-identical outputs,
// independently of --threads.
bool criterion11(std::string& detail) {
#ifndef PORTSIM_CLI_PATH
  detail = "CLI path not configured";
  return false;
#else
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run = [&](const std::string& args, const std::string& out) {
    const std::string cmd = std::string(PORTSIM_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  bool ok = true;
  ok &= run("pgm --N 4 --out /tmp/acc11.json --format json --threads 1", "/tmp/acc11_a.std") == 0;
  const std::string pgm_file1 = slurp("/tmp/acc11.json");
  ok &= run("pgm --N 4 --out /tmp/acc11.json --format json --threads 4", "/tmp/acc11_b.std") == 0;
  const bool pgm_same = pgm_file1 == slurp("/tmp/acc11.json") &&
                        slurp("/tmp/acc11_a.std") == slurp("/tmp/acc11_b.std");
  ok &= run("recycle --N 5 --k 2 --seed 7 --format csv --out /tmp/acc11.csv --threads 1",
            "/tmp/acc11_c.std") == 0;
  const std::string rec_file1 = slurp("/tmp/acc11.csv");
  ok &= run("recycle --N 5 --k 2 --seed 7 --format csv --out /tmp/acc11.csv --threads 3",
            "/tmp/acc11_d.std") == 0;
  const bool rec_same = rec_file1 == slurp("/tmp/acc11.csv") &&
                        slurp("/tmp/acc11_c.std") == slurp("/tmp/acc11_d.std");
  ok &= run("compare --delta 0.05 --protocols par,sim --N 64..512 --threads 1", "/tmp/acc11_e.std") == 0;
  ok &= run("compare --delta 0.05 --protocols par,sim --N 64..512 --threads 2", "/tmp/acc11_f.std") == 0;
  const bool cmp_same = slurp("/tmp/acc11_e.std") == slurp("/tmp/acc11_f.std");
  for (const char* f : {"/tmp/acc11.json", "/tmp/acc11.csv", "/tmp/acc11_a.std",
                        "/tmp/acc11_b.std", "/tmp/acc11_c.std", "/tmp/acc11_d.std",
                        "/tmp/acc11_e.std", "/tmp/acc11_f.std"}) {
    std::remove(f);
  }
  detail = std::string("pgm bytes ") + (pgm_same ? "identical" : "DIFFER") + ", recycle csv " +
           (rec_same ? "identical" : "DIFFER") + ", compare stdout " +
           (cmp_same ? "identical" : "DIFFER");
  return ok && pgm_same && rec_same && cmp_same;
#endif
}

struct Criterion {
  int index;
  const char* title;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "analytic/dense agreement (N=2..8, 1e-9 rel)", criterion1},
    {2, "recycle-bound 1/N coefficient fit", criterion2},
    {3, "TrPi1 expansion coefficient fit", criterion3},
    {4, "lower-bound property of the dense fidelity", criterion4},
    {5, "per-round fidelity vs accumulated error bound (N=6,k=3)", criterion5},
    {6, "pairwise overlap exactness (N<=6, k<=2, d=2,3)", criterion6},
    {7, "simultaneous-bound exhaustive oracle", criterion7},
    {8, "generalized pipeline (pauli N=1, port-swap N=2..6)", criterion8},
    {9, "2-design verification via frame potentials", criterion9},
    {10, "efficiency scans: caps and growth exponents", criterion10},
    {11, "byte-identical reproducibility across thread caps", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.index != only) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", c.index, c.title,
                detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
#include "portsim/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "portsim/ensembles.hpp"
#include "portsim/multi.hpp"
#include "portsim/parallel.hpp"
#include "portsim/pgm.hpp"
#include "portsim/recycling.hpp"
#include "portsim/schur.hpp"
#include "portsim/version.hpp"

namespace portsim::cli {

namespace {

struct HelpRequested {
  std::string text;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt_int(std::int64_t v) { return std::to_string(v); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ArgumentError("invalid integer '" + s + "' for " + what);
  }
}

}  // namespace

std::vector<int> parse_grid(const std::string& spec) {
  if (spec.empty()) throw ArgumentError("empty grid spec");
  std::vector<int> grid;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = parse_int(spec.substr(0, dots), "grid start");
    std::string rest = spec.substr(dots + 2);
    int step = 0;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = parse_int(rest.substr(colon + 1), "grid step");
      rest = rest.substr(0, colon);
    }
    const int hi = parse_int(rest, "grid end");
    if (lo < 1 || hi < lo) throw ArgumentError("grid range must satisfy 1 <= start <= end");
    if (step > 0) {
      for (int n = lo; n <= hi; n += step) grid.push_back(n);
    } else {
      for (int n = lo; n <= hi; n *= 2) grid.push_back(n);  // doubling grid
    }
  } else {
    for (const auto& tok : split_list(spec)) grid.push_back(parse_int(tok, "grid entry"));
    if (grid.empty()) throw ArgumentError("empty grid spec");
    for (size_t i = 1; i < grid.size(); ++i) {
      if (grid[i] <= grid[i - 1]) throw ArgumentError("grid entries must be strictly increasing");
    }
  }
  return grid;
}

namespace {

const std::vector<std::string> kConfigKeys = {
    "N", "k", "d", "epsilon", "delta", "seed", "samples", "ensemble",
    "protocols", "out", "format", "threads", "dense_cap", "oracle"};

void merge_config_file(const std::string& path, const std::string& n_spec_flagged, CLI::App* sub,
                       RunConfig& cfg, bool uses_grid, std::string& n_spec) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("config file parse error: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ArgumentError("config file must hold a JSON object");

  auto flag_given = [&](const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw("--" + name);
    return (opt != nullptr && opt->count() > 0) || (name == "N" && !n_spec_flagged.empty());
  };

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    bool known = false;
    for (const auto& k : kConfigKeys) known = known || k == key;
    if (!known) throw ArgumentError("unknown config key '" + key + "'");
    if (flag_given(key)) continue;  // flags override file values
    const auto& v = it.value();
    try {
      if (key == "N") {
        if (uses_grid) {
          n_spec = v.is_string() ? v.get<std::string>() : std::to_string(v.get<int>());
        } else {
          cfg.ports = v.get<int>();
        }
      } else if (key == "k") {
        cfg.k = v.get<int>();
      } else if (key == "d") {
        cfg.d = v.get<int>();
      } else if (key == "epsilon") {
        cfg.epsilon = v.get<double>();
      } else if (key == "delta") {
        cfg.delta = v.get<double>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "samples") {
        cfg.samples = v.get<int>();
      } else if (key == "ensemble") {
        cfg.ensemble = v.get<std::string>();
      } else if (key == "protocols") {
        if (v.is_string()) {
          cfg.protocols = split_list(v.get<std::string>());
        } else {
          cfg.protocols = v.get<std::vector<std::string>>();
        }
      } else if (key == "out") {
        cfg.out_path = v.get<std::string>();
      } else if (key == "format") {
        cfg.format = v.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = v.get<int>();
      } else if (key == "dense_cap") {
        cfg.dense_cap = v.get<int>();
      } else if (key == "oracle") {
        cfg.oracle = v.get<bool>();
      }
    } catch (const nlohmann::json::exception&) {
      throw ArgumentError("config key '" + key + "' has the wrong type");
    }
  }
}

void validate(RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ArgumentError("format must be csv or json");
  }
  if (cfg.d < 2) throw ArgumentError("d must be >= 2");
  if (cfg.k < 0) throw ArgumentError("k must be >= 0");
  if (cfg.threads < 0) throw ArgumentError("threads must be >= 0");
  if (cfg.samples < 1) throw ArgumentError("samples must be >= 1");
  if (cfg.epsilon < 0.0 || cfg.epsilon >= 1.0) throw ArgumentError("epsilon must be in [0,1)");
  if (cfg.delta <= 0.0 || cfg.delta >= 1.0) throw ArgumentError("delta must be in (0,1)");
  for (const auto& p : cfg.protocols) {
    if (p != "rec" && p != "sim" && p != "par") {
      throw ArgumentError("unknown protocol '" + p + "' (rec|sim|par)");
    }
  }
  const std::string& sc = cfg.subcommand;
  const bool uses_grid = sc == "bounds" || sc == "compare";
  if (uses_grid) {
    if (cfg.grid.empty()) throw ArgumentError(sc + " requires --N <grid>");
  } else if (cfg.ports < 1) {
    throw ArgumentError(sc + " requires --N >= 1");
  }
  if (sc == "recycle") {
    if (cfg.ports < 2) throw ArgumentError("recycle requires N >= 2");
    if (cfg.k < 1 || cfg.k >= cfg.ports) throw ArgumentError("recycle requires 1 <= k < N");
    if (!cfg.seed) throw ArgumentError("recycle requires an explicit --seed");
  }
  if (sc == "simultaneous" && (cfg.k < 1 || cfg.k > cfg.ports)) {
    throw ArgumentError("simultaneous requires 1 <= k <= N");
  }
  if (sc == "generalized" && cfg.ensemble.empty()) {
    throw ArgumentError("generalized requires --ensemble");
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"port-based teleportation bounds and dense simulation"};
  app.require_subcommand(1);

  std::string config_path, n_spec;
  std::string protocols_csv;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override file values)");
    sub->add_option("--out", cfg.out_path, "output file path");
    sub->add_option("--format", cfg.format, "output format for --out: csv|json");
    sub->add_option("--threads", cfg.threads, "worker thread cap (0 = hardware)");
    sub->add_option("--dense-cap,--dense_cap", cfg.dense_cap, "dense port-count cap override");
  };

  CLI::App* pgm_cmd = app.add_subcommand("pgm", "dense protocol fidelity with analytic cross-checks");
  pgm_cmd->add_option("--N", cfg.ports, "port count");
  add_common(pgm_cmd);

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "closed-form bound table for rec/sim/par");
  bounds_cmd->add_option("--N", n_spec, "port grid (n | a,b,c | a..b | a..b:step)");
  bounds_cmd->add_option("--k", cfg.k, "teleported systems per protocol use");
  bounds_cmd->add_option("--d", cfg.d, "local dimension for sim");
  bounds_cmd->add_option("--protocols", protocols_csv, "comma list of rec,sim,par");
  add_common(bounds_cmd);

  CLI::App* recycle_cmd = app.add_subcommand("recycle", "sequential recycling protocol trace");
  recycle_cmd->add_option("--N", cfg.ports, "port count");
  recycle_cmd->add_option("--k", cfg.k, "rounds");
  recycle_cmd->add_option("--seed", cfg.seed, "RNG seed (required)");
  add_common(recycle_cmd);

  CLI::App* sim_cmd = app.add_subcommand("simultaneous", "simultaneous teleportation bound");
  sim_cmd->add_option("--N", cfg.ports, "port count");
  sim_cmd->add_option("--k", cfg.k, "teleported systems");
  sim_cmd->add_option("--d", cfg.d, "local dimension");
  sim_cmd->add_flag("--oracle", cfg.oracle, "run the exhaustive signal-purity oracle");
  add_common(sim_cmd);

  CLI::App* gen_cmd = app.add_subcommand("generalized", "generalized teleportation pipeline");
  gen_cmd->add_option("--ensemble", cfg.ensemble, "pauli | port-swap | clifford-1q | <file.json>");
  gen_cmd->add_option("--N", cfg.ports, "port count");
  gen_cmd->add_option("--d", cfg.d, "local dimension");
  gen_cmd->add_option("--epsilon", cfg.epsilon, "reliability-condition epsilon");
  add_common(gen_cmd);

  CLI::App* compare_cmd = app.add_subcommand("compare", "efficiency scans with no-signalling cap");
  compare_cmd->add_option("--N", n_spec, "port grid (n | a,b,c | a..b | a..b:step)");
  compare_cmd->add_option("--delta", cfg.delta, "fidelity slack");
  compare_cmd->add_option("--protocols", protocols_csv, "comma list of rec,sim,par");
  compare_cmd->add_option("--d", cfg.d, "local dimension for sim");
  add_common(compare_cmd);

  std::vector<const char*> argv;
  argv.push_back("portsim");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    help << app.help();
    throw HelpRequested{help.str()};
  } catch (const CLI::ParseError& e) {
    throw ArgumentError(e.what());
  }

  CLI::App* active = app.get_subcommands().front();
  cfg.subcommand = active->get_name();
  if (!protocols_csv.empty()) cfg.protocols = split_list(protocols_csv);

  const bool uses_grid = cfg.subcommand == "bounds" || cfg.subcommand == "compare";
  if (!config_path.empty()) {
    merge_config_file(config_path, n_spec, active, cfg, uses_grid, n_spec);
  }
  if (uses_grid && !n_spec.empty()) cfg.grid = parse_grid(n_spec);

  if (cfg.threads == 0) {
    if (const char* env = std::getenv("PORTSIM_THREADS")) {
      cfg.threads = parse_int(env, "PORTSIM_THREADS");
    }
  }
  validate(cfg);
  return cfg;
}

namespace {

void echo_common(Report&, const RunConfig&) {
  // emission details (out path, format, threads) are deliberately not echoed:
  // the report depends only on the computational inputs and the seed
}

Report dispatch_pgm(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "pgm";
  rep.add_input("N", std::to_string(cfg.ports));
  rep.add_input("dense_cap", std::to_string(cfg.dense_cap));
  echo_common(rep, cfg);

  if (cfg.ports > cfg.dense_cap) {
    throw ArgumentError("N exceeds the dense cap (override with --dense-cap)");
  }
  const pgm::PovmSet povm = pgm::build_pgm(cfg.ports);
  const double tr_dense = povm.elements.front().trace();
  const double tr_analytic =
      static_cast<double>(schur::BigRat(schur::trace_pi1_exact_sum(cfg.ports)).convert_to<double>());
  const double tr_rel = std::abs(tr_dense - tr_analytic) / std::abs(tr_analytic);

  const Matrix sigma1 = pgm::build_sigma(1, cfg.ports).matrix();
  const double tss_dense = (sigma1 * povm.sqrt_elements.front()).trace().real();
  const double tss_analytic = static_cast<double>(schur::trace_sigma_sqrtpi1_sum(cfg.ports));
  const double tss_rel = std::abs(tss_dense - tss_analytic) / std::abs(tss_analytic);

  constexpr double kTol = 1e-9;
  if (tr_rel > kTol) {
    throw InvariantError("Tr Pi_1 analytic/dense mismatch: dense=" + fmt(tr_dense) +
                         " analytic=" + fmt(tr_analytic) + " rel=" + fmt(tr_rel));
  }
  if (tss_rel > kTol) {
    throw InvariantError("Tr(sigma sqrt Pi_1) analytic/dense mismatch: dense=" + fmt(tss_dense) +
                         " analytic=" + fmt(tss_analytic) + " rel=" + fmt(tss_rel));
  }

  const double fidelity = pgm::exact_protocol_fidelity(cfg.ports, cfg.dense_cap);
  const double bound = schur::recycle_fidelity_bound(cfg.ports);
  const double p0 = 1.0 - cfg.ports * tr_dense / std::pow(2.0, cfg.ports + 1);

  rep.add_result("exact_fidelity", fidelity, "pbt-engine", "exact_protocol_fidelity");
  rep.add_result("tr_pi1_dense", tr_dense, "pbt-engine", "build_pgm");
  rep.add_result("tr_pi1_analytic", tr_analytic, "schur-bounds", "trace_pi1_exact_sum");
  rep.add_result("tr_pi1_rel_diff", tr_rel, "cli", "dispatch");
  rep.add_result("tr_sigma_sqrtpi1_dense", tss_dense, "pbt-engine", "build_pgm");
  rep.add_result("tr_sigma_sqrtpi1_analytic", tss_analytic, "schur-bounds", "trace_sigma_sqrtpi1_sum");
  rep.add_result("tr_sigma_sqrtpi1_rel_diff", tss_rel, "cli", "dispatch");
  rep.add_result("recycle_fidelity_bound", bound, "schur-bounds", "recycle_fidelity_bound");
  rep.add_result("failure_probability", p0, "pbt-engine", "build_pgm");
  return rep;
}

Report dispatch_bounds(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "bounds";
  {
    std::string g;
    for (size_t i = 0; i < cfg.grid.size(); ++i) g += (i ? "," : "") + std::to_string(cfg.grid[i]);
    rep.add_input("N", g);
  }
  rep.add_input("k", std::to_string(cfg.k));
  rep.add_input("d", std::to_string(cfg.d));
  {
    std::string p;
    for (size_t i = 0; i < cfg.protocols.size(); ++i) p += (i ? "," : "") + cfg.protocols[i];
    rep.add_input("protocols", p);
  }
  echo_common(rep, cfg);

  Table table;
  table.name = "bounds";
  table.columns = {"protocol", "N", "k", "d", "bound", "ns_cap", "warnings"};
  for (const auto& proto : cfg.protocols) {
    for (int n : cfg.grid) {
      const int cap = multi::no_signalling_max(n);
      std::string warn;
      double bound = 0.0;
      const int d = proto == "sim" ? cfg.d : 2;
      if (cfg.k > n) {
        warn = "k_exceeds_N";
      } else if (proto == "rec") {
        bound = schur::accumulated_error_bound(n, cfg.k);
      } else if (proto == "sim") {
        bound = multi::simultaneous_fidelity_bound(n, cfg.k, cfg.d);
      } else {
        bound = multi::parallel_fidelity_bound(n, cfg.k).value;
      }
      if (warn.empty() && cfg.k > cap) warn = "k_exceeds_ns_cap";
      table.rows.push_back({proto, fmt_int(n), fmt_int(cfg.k), fmt_int(d), fmt(bound),
                            fmt_int(cap), warn});
    }
  }
  rep.tables.push_back(std::move(table));
  return rep;
}

Report dispatch_recycle(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "recycle";
  rep.add_input("N", std::to_string(cfg.ports));
  rep.add_input("k", std::to_string(cfg.k));
  rep.add_input("seed", std::to_string(*cfg.seed));
  echo_common(rep, cfg);

  recycling::RecycleOptions opts;
  opts.dense_cap = cfg.dense_cap;
  const recycling::RecycleTrace trace = recycling::recycle_protocol_run(cfg.ports, cfg.k, *cfg.seed, opts);

  Table table;
  table.name = "recycle_trace";
  table.columns = {"round", "z", "success", "fid_teleported", "fid_resource_est", "lemma2_bound"};
  int successes = 0;
  double fid_sum = 0.0;
  for (const auto& row : trace.rounds) {
    table.rows.push_back({fmt_int(row.round), fmt_int(row.port), row.success ? "1" : "0",
                          fmt(row.fid_teleported), fmt(row.fid_resource_est), fmt(row.lemma2_bound)});
    successes += row.success ? 1 : 0;
    fid_sum += row.fid_teleported;
  }
  rep.tables.push_back(std::move(table));
  rep.add_result("rounds", static_cast<double>(trace.rounds.size()), "recycling-sim", "recycle_protocol_run");
  rep.add_result("successes", successes, "recycling-sim", "recycle_protocol_run");
  rep.add_result("mean_fid_teleported",
                 trace.rounds.empty() ? 0.0 : fid_sum / static_cast<double>(trace.rounds.size()),
                 "recycling-sim", "recycle_protocol_run");
  return rep;
}

Report dispatch_simultaneous(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "simultaneous";
  rep.add_input("N", std::to_string(cfg.ports));
  rep.add_input("k", std::to_string(cfg.k));
  rep.add_input("d", std::to_string(cfg.d));
  rep.add_input("oracle", cfg.oracle ? "true" : "false");
  echo_common(rep, cfg);

  const double bound = multi::simultaneous_fidelity_bound(cfg.ports, cfg.k, cfg.d);
  rep.add_result("fidelity_bound", bound, "multi-teleport", "simultaneous_fidelity_bound");
  rep.add_result("injection_count",
                 multi::injection_count(cfg.ports, cfg.k).convert_to<double>(), "multi-teleport",
                 "injection_count");
  rep.add_result("ns_cap", multi::no_signalling_max(cfg.ports), "multi-teleport", "no_signalling_max");
  const double closed =
      multi::avg_signal_purity_closed(cfg.ports, cfg.k, cfg.d).convert_to<double>();
  rep.add_result("avg_signal_purity_closed", closed, "multi-teleport", "avg_signal_purity");
  if (cfg.k > multi::no_signalling_max(cfg.ports)) {
    rep.warnings.push_back("exceeds_no_signalling_cap");
  }

  if (cfg.oracle) {
    const multi::PurityComparison cmp = multi::compare_signal_purity(cfg.ports, cfg.k, cfg.d);
    rep.add_result("avg_signal_purity_brute", cmp.brute_force, "multi-teleport", "avg_signal_purity");
    rep.add_result("purity_relative_gap", cmp.relative_gap, "multi-teleport", "avg_signal_purity");
    rep.add_result("fidelity_bound_brute", cmp.fidelity_bound_brute, "multi-teleport",
                   "avg_signal_purity");
    rep.add_result("fidelity_bound_closed", cmp.fidelity_bound_closed, "multi-teleport",
                   "avg_signal_purity");
    if (cmp.formula_mismatch) rep.warnings.push_back("formula_mismatch");

    if (cfg.ports <= 7) {
      const multi::OverlapHistogram hist = multi::brute_overlap_histogram(cfg.ports, cfg.k);
      Table table;
      table.name = "overlap_multiplicities";
      table.columns = {"t", "L_formula", "brute_count"};
      for (int t = 1; t <= cfg.k; ++t) {
        const auto it = hist.by_full_overlaps.find(t);
        const std::int64_t brute = it == hist.by_full_overlaps.end() ? 0 : it->second;
        table.rows.push_back({fmt_int(t),
                              multi::overlap_multiplicity(cfg.ports, cfg.k, t).str(),
                              fmt_int(brute)});
      }
      rep.tables.push_back(std::move(table));
      rep.add_result("cycle_lifted_pairs", static_cast<double>(hist.cycle_pairs), "multi-teleport",
                     "pairwise_overlap_trace");
    }
  }
  return rep;
}

Report dispatch_generalized(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "generalized";
  rep.add_input("ensemble", cfg.ensemble);
  rep.add_input("N", std::to_string(cfg.ports));
  rep.add_input("d", std::to_string(cfg.d));
  rep.add_input("epsilon", fmt(cfg.epsilon));
  echo_common(rep, cfg);

  ensembles::UnitaryEnsemble ens;
  if (cfg.ensemble == "pauli") {
    ens = ensembles::make_pauli_ensemble(cfg.d);
  } else if (cfg.ensemble == "port-swap") {
    ens = ensembles::make_port_swap_ensemble(cfg.ports, cfg.d);
  } else if (cfg.ensemble == "clifford-1q") {
    ens = ensembles::make_clifford_1q_ensemble();
  } else {
    ens = ensembles::load_ensemble_file(cfg.ensemble);
  }

  const ensembles::SignalEnsemble sig = ensembles::signals_from_ensemble(ens, cfg.ports, cfg.d);
  const ensembles::ConditionResult lem = ensembles::reliability_condition(sig, cfg.epsilon);
  const double ps = ensembles::pgm_success_lower_bound(sig);
  const ensembles::FidelityFromSuccess fid =
      ensembles::fidelity_from_success(ens.size(), cfg.d, ps);
  const double fp = ensembles::frame_potential(ens, 2);

  rep.add_result("ensemble_size", static_cast<double>(ens.size()), "gen-telep", "make_ensemble");
  rep.add_result("condition_purity", lem.purity, "gen-telep", "reliability_condition");
  rep.add_result("condition_rhs", lem.rhs, "gen-telep", "reliability_condition");
  rep.add_result("condition_margin", lem.margin, "gen-telep", "reliability_condition");
  rep.add_result("condition_holds", lem.holds ? 1.0 : 0.0, "gen-telep", "reliability_condition");
  rep.add_result("pgm_success_lower_bound", ps, "gen-telep", "pgm_success_lower_bound");
  rep.add_result("fidelity_lower_bound", fid.value, "gen-telep", "fidelity_from_success");
  rep.add_result("frame_potential_order2", fp, "gen-telep", "frame_potential");
  if (fid.clamped) rep.warnings.push_back("bound_clamped");
  return rep;
}

Report dispatch_compare(const RunConfig& cfg) {
  Report rep;
  rep.version = kVersion;
  rep.subcommand = "compare";
  {
    std::string g;
    for (size_t i = 0; i < cfg.grid.size(); ++i) g += (i ? "," : "") + std::to_string(cfg.grid[i]);
    rep.add_input("N", g);
  }
  rep.add_input("delta", fmt(cfg.delta));
  {
    std::string p;
    for (size_t i = 0; i < cfg.protocols.size(); ++i) p += (i ? "," : "") + cfg.protocols[i];
    rep.add_input("protocols", p);
  }
  echo_common(rep, cfg);

  Table table;
  table.name = "efficiency_scan";
  table.columns = {"protocol", "N", "Q", "ns_cap"};
  for (const auto& proto : cfg.protocols) {
    const multi::ScanReport scan = multi::efficiency_scan(proto, cfg.delta, cfg.grid, cfg.d);
    for (const auto& row : scan.rows) {
      table.rows.push_back({proto, fmt_int(row.ports), fmt_int(row.q),
                            fmt_int(multi::no_signalling_max(row.ports))});
    }
    if (std::isfinite(scan.fit_exponent)) {
      rep.add_result("fit_exponent_" + proto, scan.fit_exponent, "multi-teleport", "efficiency_scan");
    } else {
      rep.warnings.push_back("fit_underdetermined_" + proto);
    }
    rep.add_result("fit_points_" + proto, scan.fit_points, "multi-teleport", "efficiency_scan");
  }
  rep.tables.push_back(std::move(table));
  return rep;
}

}  // namespace

Report dispatch(const RunConfig& cfg) {
  set_thread_cap(cfg.threads);
  if (cfg.subcommand == "pgm") return dispatch_pgm(cfg);
  if (cfg.subcommand == "bounds") return dispatch_bounds(cfg);
  if (cfg.subcommand == "recycle") return dispatch_recycle(cfg);
  if (cfg.subcommand == "simultaneous") return dispatch_simultaneous(cfg);
  if (cfg.subcommand == "generalized") return dispatch_generalized(cfg);
  if (cfg.subcommand == "compare") return dispatch_compare(cfg);
  throw ArgumentError("unknown subcommand '" + cfg.subcommand + "'");
}

void emit_report(const Report& report, const RunConfig& cfg) {
  const std::string json = to_json(report);
  std::cout << json;
  if (cfg.out_path.empty()) return;
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw IoError("cannot open output path '" + cfg.out_path + "'");
  if (cfg.format == "json") {
    out << json;
  } else {
    if (report.tables.empty()) throw IoError("no table to export as CSV for this subcommand");
    out << table_to_csv(report.tables.front());
  }
  out.flush();
  if (!out) throw IoError("write failed for '" + cfg.out_path + "'");
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const RunConfig cfg = parse_config(args);
    const Report report = dispatch(cfg);
    emit_report(report, cfg);
    return kExitOk;
  } catch (const HelpRequested& h) {
    std::cout << h.text;
    return kExitOk;
  } catch (const InvariantError& e) {
    std::cerr << "numerical invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace portsim::cli

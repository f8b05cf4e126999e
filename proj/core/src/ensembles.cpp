// SPDX-License-Identifier: Apache-2.0
#include "portsim/ensembles.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "portsim/parallel.hpp"
#include "portsim/qcore.hpp"

namespace portsim::ensembles {

namespace {

constexpr double kUnitaryTol = 1e-10;

void check_unitary(const Matrix& u, const std::string& what) {
  const Matrix dev = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  const double err = dev.cwiseAbs().maxCoeff();
  if (err > kUnitaryTol) {
    throw ArgumentError(what + " is not unitary (deviation " + std::to_string(err) + ")");
  }
}

std::int64_t ipow(int base, int exp) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) v *= base;
  return v;
}

bool same_up_to_phase(const Matrix& a, const Matrix& b) {
  const Complex t = (a.adjoint() * b).trace();
  if (std::abs(t) < 1e-9) return false;
  const Complex phase = t / std::abs(t);
  return (b - phase * a).cwiseAbs().maxCoeff() < 1e-9;
}

}  // namespace

const std::vector<Matrix>& single_qubit_cliffords() {
  static const std::vector<Matrix> table = [] {
    Matrix h(2, 2), s(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    h << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    s << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
    std::vector<Matrix> group{Matrix::Identity(2, 2)};
    std::vector<Matrix> frontier{group.front()};
    while (!frontier.empty()) {
      std::vector<Matrix> next;
      for (const Matrix& u : frontier) {
        for (const Matrix* gen : {&h, &s}) {
          Matrix v = (*gen) * u;
          bool known = false;
          for (const Matrix& w : group) {
            if (same_up_to_phase(w, v)) {
              known = true;
              break;
            }
          }
          if (!known) {
            group.push_back(v);
            next.push_back(v);
          }
        }
      }
      frontier = std::move(next);
    }
    if (group.size() != 24) throw Error("Clifford enumeration produced " + std::to_string(group.size()) + " elements");
    return group;
  }();
  return table;
}

UnitaryEnsemble make_pauli_ensemble(int d) {
  if (d < 2) throw DimensionError("pauli ensemble requires d >= 2");
  Matrix shift = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  Matrix clock = Matrix::Zero(d, d);
  const double tau = 6.283185307179586477 / d;
  for (int j = 0; j < d; ++j) clock(j, j) = std::polar(1.0, tau * j);

  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::Pauli;
  ens.dim = d;
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix xazb = xa;
    for (int b = 0; b < d; ++b) {
      ens.elements.push_back(xazb);
      xazb = xazb * clock;
    }
    xa = xa * shift;
  }
  return ens;
}

UnitaryEnsemble make_port_swap_ensemble(int ports, int d) {
  if (ports < 1) throw ArgumentError("port swap ensemble requires N >= 1");
  const std::int64_t dim = ipow(d, ports);
  if (dim > 4096) throw ResourceLimitError("port swap ensemble dim exceeds dense cap");
  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::PortSwap;
  ens.dim = static_cast<int>(dim);
  for (int g = 1; g <= ports; ++g) {
    Matrix u = Matrix::Zero(dim, dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      // digits over B1..BN, B1 most significant
      std::vector<int> digits(static_cast<size_t>(ports));
      std::int64_t rem = idx;
      for (int p = ports - 1; p >= 0; --p) {
        digits[static_cast<size_t>(p)] = static_cast<int>(rem % d);
        rem /= d;
      }
      std::swap(digits[0], digits[static_cast<size_t>(g - 1)]);
      std::int64_t out = 0;
      for (int p = 0; p < ports; ++p) out = out * d + digits[static_cast<size_t>(p)];
      u(out, idx) = 1.0;
    }
    ens.elements.push_back(std::move(u));
  }
  return ens;
}

UnitaryEnsemble make_clifford_1q_ensemble() {
  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::Clifford1q;
  ens.dim = 2;
  ens.elements = single_qubit_cliffords();
  return ens;
}

UnitaryEnsemble load_ensemble_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open ensemble file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("ensemble file parse error: " + std::string(e.what()));
  }
  if (!doc.is_array() || doc.empty()) throw ArgumentError("ensemble file must be a non-empty JSON array");

  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::User;
  for (size_t k = 0; k < doc.size(); ++k) {
    const auto& entries = doc[k];
    if (!entries.is_array()) throw ArgumentError("ensemble element must be an array of [re, im] pairs");
    const auto count = static_cast<std::int64_t>(entries.size());
    const auto dim = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (dim * dim != count) throw ArgumentError("ensemble element length is not a perfect square");
    Matrix u(dim, dim);
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& pair = entries[static_cast<size_t>(i)];
      if (!pair.is_array() || pair.size() != 2) {
        throw ArgumentError("ensemble entries must be [re, im] pairs");
      }
      u(i / dim, i % dim) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    if (ens.elements.empty()) {
      ens.dim = static_cast<int>(dim);
    } else if (dim != ens.dim) {
      throw ArgumentError("ensemble elements have inconsistent dimensions");
    }
    check_unitary(u, "ensemble element " + std::to_string(k));
    ens.elements.push_back(std::move(u));
  }
  return ens;
}

SignalEnsemble signals_from_ensemble(const UnitaryEnsemble& ens, int ports, int d) {
  if (ens.elements.empty()) throw ArgumentError("empty ensemble");
  const std::int64_t bob_dim = ipow(d, ports);
  if (ens.dim != bob_dim) {
    throw DimensionError("ensemble dim " + std::to_string(ens.dim) +
                         " incompatible with Bob's d^N = " + std::to_string(bob_dim));
  }
  if (ipow(d, 2 * ports) > (std::int64_t{1} << 20)) {
    throw ResourceLimitError("signal construction exceeds dense cap d^{2N} <= 2^20");
  }
  const auto kind = d == 2 ? qcore::ResourceKind::Singlet : qcore::ResourceKind::CanonicalMes;
  const PureState input = qcore::build_singlet_resource(ports, d, kind);

  std::vector<std::string> bob_labels, keep;
  for (int i = 1; i <= ports; ++i) keep.push_back("A" + std::to_string(i));
  keep.push_back("B1");
  for (int i = 1; i <= ports; ++i) bob_labels.push_back("B" + std::to_string(i));

  std::vector<HermitianOperator> signals;
  std::vector<int> ranks;
  Matrix avg;
  for (size_t g = 0; g < ens.elements.size(); ++g) {
    check_unitary(ens.elements[g], "ensemble element " + std::to_string(g));
    Vector amps = input.amplitudes();
    qcore::apply_to_targets(amps, input.layout(), ens.elements[g], bob_labels);
    const PureState rotated(input.layout(), std::move(amps));
    HermitianOperator eta = qcore::reduced_density(rotated, keep);
    if (avg.size() == 0) {
      avg = eta.matrix();
    } else {
      avg += eta.matrix();
    }
    ranks.push_back(qcore::support_rank(eta.matrix()));
    signals.push_back(std::move(eta));
  }
  avg /= static_cast<double>(ens.elements.size());
  HermitianOperator avg_op(signals.front().layout(), std::move(avg), OperatorKind::Density);
  return SignalEnsemble{ports, d, std::move(signals), std::move(avg_op), std::move(ranks)};
}

ConditionResult reliability_condition(const SignalEnsemble& sig, double epsilon) {
  if (epsilon < 0.0 || epsilon >= 1.0) throw ArgumentError("epsilon must be in [0,1)");
  ConditionResult res;
  res.purity = (sig.avg.matrix() * sig.avg.matrix()).trace().real();
  const double dim_pow = std::pow(static_cast<double>(sig.d), sig.ports + 1);
  res.rhs = 1.0 / ((1.0 - epsilon) * dim_pow);
  res.margin = res.rhs - res.purity;
  res.holds = res.purity <= res.rhs;
  return res;
}

double pgm_success_lower_bound(const SignalEnsemble& sig) {
  const double purity = (sig.avg.matrix() * sig.avg.matrix()).trace().real();
  double mean_rank = 0.0;
  for (int r : sig.ranks) mean_rank += r;
  mean_rank /= static_cast<double>(sig.ranks.size());
  const double k = static_cast<double>(sig.signals.size());
  const double val = 1.0 / (k * mean_rank * purity);
  return std::clamp(val, 0.0, 1.0);
}

FidelityFromSuccess fidelity_from_success(std::size_t ensemble_size, int d, double p_s) {
  if (p_s < 0.0 || p_s > 1.0) throw ArgumentError("p_s must lie in [0,1]");
  FidelityFromSuccess out;
  const double raw = static_cast<double>(ensemble_size) / (static_cast<double>(d) * d) * p_s;
  out.clamped = raw > 1.0;
  out.value = std::clamp(raw, 0.0, 1.0);
  return out;
}

double frame_potential(const UnitaryEnsemble& ens, int order) {
  if (order != 2) throw ArgumentError("only the order-2 frame potential is implemented");
  const std::size_t k = ens.elements.size();
  const auto rowsums = parallel_map<double>(k, [&](std::size_t g) {
    double acc = 0.0;
    for (std::size_t h = 0; h < k; ++h) {
      const double t = std::abs((ens.elements[g].adjoint() * ens.elements[h]).trace());
      acc += t * t * t * t;
    }
    return acc;
  });
  double total = 0.0;
  for (double r : rowsums) total += r;
  return total / (static_cast<double>(k) * static_cast<double>(k));
}

double pbt_discrimination_bound(int ports, int d) {
  return static_cast<double>(ports) / (ports + d * d - 1.0);
}

}  // namespace portsim::ensembles

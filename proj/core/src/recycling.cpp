// SPDX-License-Identifier: Apache-2.0
#include "portsim/recycling.hpp"

#include <cmath>
#include <map>
#include <string>

#include "portsim/ensembles.hpp"
#include "portsim/schur.hpp"

namespace portsim::recycling {

namespace {

Matrix haar_unitary_2x2(CounterRng& rng) {
  // Ginibre column + Gram-Schmidt with phase fix
  Complex a(rng.next_gaussian(), rng.next_gaussian());
  Complex b(rng.next_gaussian(), rng.next_gaussian());
  Complex c(rng.next_gaussian(), rng.next_gaussian());
  Complex d(rng.next_gaussian(), rng.next_gaussian());
  Eigen::Vector2cd v1(a, b), v2(c, d);
  v1.normalize();
  v2 -= v1.dot(v2) * v1;
  v2.normalize();
  Matrix u(2, 2);
  u.col(0) = v1;
  u.col(1) = v2;
  // fix phases like a QR decomposition with positive diagonal of R
  return u;
}

Matrix kron_power(const Matrix& u, int n) {
  Matrix out = u;
  for (int i = 1; i < n; ++i) {
    Matrix next(out.rows() * u.rows(), out.cols() * u.cols());
    for (std::int64_t r = 0; r < out.rows(); ++r)
      for (std::int64_t c = 0; c < out.cols(); ++c)
        next.block(r * u.rows(), c * u.cols(), u.rows(), u.cols()) = out(r, c) * u;
    out = std::move(next);
  }
  return out;
}

PureState singlet_pair_on(const SystemLayout& two_qubit) {
  Vector amps = Vector::Zero(4);
  amps[1] = 1.0 / std::sqrt(2.0);
  amps[2] = -1.0 / std::sqrt(2.0);
  return PureState(two_qubit, std::move(amps));
}

}  // namespace

HermitianOperator twirl_ports(const HermitianOperator& op, TwirlMode mode, int samples,
                              std::uint64_t seed) {
  const SystemLayout& layout = op.layout();
  for (int i = 0; i < layout.count(); ++i) {
    if (layout.at(i).dim != 2) throw DimensionError("twirl_ports requires qubit subsystems");
  }
  if (layout.total_dim() > 4096) {
    throw ResourceLimitError("twirl_ports dense cap exceeded (dim > 4096)");
  }
  const int n = layout.count();

  Matrix acc = Matrix::Zero(layout.total_dim(), layout.total_dim());
  if (mode == TwirlMode::CliffordTensor) {
    const auto& cliffords = ensembles::single_qubit_cliffords();
    for (const Matrix& c : cliffords) {
      const Matrix u = kron_power(c, n);
      acc += u * op.matrix() * u.adjoint();
    }
    acc /= static_cast<double>(cliffords.size());
  } else {
    if (samples < 1) throw ArgumentError("haar-mc twirl requires samples >= 1");
    CounterRng rng(seed, /*stream=*/0x7e1f);
    for (int s = 0; s < samples; ++s) {
      const Matrix u1 = haar_unitary_2x2(rng);
      const Matrix u = kron_power(u1, n);
      acc += u * op.matrix() * u.adjoint();
    }
    acc /= static_cast<double>(samples);
  }
  acc = 0.5 * (acc + acc.adjoint().eval());
  return HermitianOperator(layout, std::move(acc), op.kind());
}

double port_marginal_fidelity(const PureState& state, int port, const std::set<int>& marked) {
  if (marked.count(port)) {
    throw ArgumentError("port " + std::to_string(port) + " is marked; marginal not available");
  }
  const std::string a = "A" + std::to_string(port);
  const std::string b = "B" + std::to_string(port);
  const HermitianOperator rho = qcore::reduced_density(state, {a, b});
  return qcore::uhlmann_fidelity(singlet_pair_on(rho.layout()), rho);
}

RecycleTrace recycle_protocol_run(int ports, int rounds, std::uint64_t seed,
                                  const RecycleOptions& opts) {
  if (ports < 2) throw ArgumentError("recycling needs at least 2 ports");
  if (rounds < 0 || rounds >= ports) throw ArgumentError("rounds must satisfy 0 <= k < N");
  if (ports > opts.dense_cap) {
    throw ResourceLimitError("recycle dense cap exceeded: N = " + std::to_string(ports));
  }
  const int total_qubits = 2 * ports + 2 * std::max(rounds, 1);
  if (total_qubits > opts.max_qubits) {
    throw ResourceLimitError("recycle run needs " + std::to_string(total_qubits) +
                             " qubits > cap " + std::to_string(opts.max_qubits));
  }

  RecycleTrace trace;
  trace.ports = ports;
  trace.seed = seed;
  if (rounds == 0) return trace;

  PureState state = qcore::build_singlet_resource(ports, 2, qcore::ResourceKind::Singlet);
  std::vector<int> active;
  for (int i = 1; i <= ports; ++i) active.push_back(i);

  std::map<int, pgm::PovmSet> povm_cache;
  const auto& cliffords = ensembles::single_qubit_cliffords();

  for (int r = 1; r <= rounds; ++r) {
    CounterRng rng = CounterRng(seed).split(static_cast<std::uint64_t>(r));

    // fresh input singlet; its B half is the round's reference system
    const std::string in_label = "A0_" + std::to_string(r);
    const std::string ref_label = "B0_" + std::to_string(r);
    {
      std::vector<Subsystem> subs;
      for (int i = 0; i < state.layout().count(); ++i) subs.push_back(state.layout().at(i));
      subs.push_back({in_label, 2});
      subs.push_back({ref_label, 2});
      Vector pair = Vector::Zero(4);
      pair[1] = 1.0 / std::sqrt(2.0);
      pair[2] = -1.0 / std::sqrt(2.0);
      Vector amps(state.dim() * 4);
      for (std::int64_t x = 0; x < state.dim(); ++x)
        amps.segment(4 * x, 4) = state.amplitudes()[x] * pair;
      state = PureState(SystemLayout(std::move(subs)), std::move(amps));
    }

    const int m = static_cast<int>(active.size());
    auto it = povm_cache.find(m);
    if (it == povm_cache.end()) it = povm_cache.emplace(m, pgm::build_pgm(m)).first;

    std::vector<std::string> alice_ports, bob_ports;
    for (int p : active) {
      alice_ports.push_back("A" + std::to_string(p));
      bob_ports.push_back("B" + std::to_string(p));
    }

    pgm::RoundResult rr = pgm::measurement_round(state, in_label, alice_ports, bob_ports,
                                                 it->second, rng);
    state = rr.state;

    RecycleRound row;
    row.round = r;
    row.success = rr.outcome.port >= 1;
    row.port = row.success ? active[static_cast<size_t>(rr.outcome.port - 1)] : 0;
    row.lemma2_bound = schur::accumulated_error_bound(ports, r);

    if (row.success) {
      // ideal configuration: teleported singlets on (in, A_first), (ref, B_first),
      // untouched singlets on the other active ports
      std::vector<std::pair<std::string, std::string>> pairs;
      pairs.emplace_back(in_label, alice_ports[0]);
      pairs.emplace_back(ref_label, bob_ports[0]);
      for (size_t j = 1; j < alice_ports.size(); ++j)
        pairs.emplace_back(alice_ports[j], bob_ports[j]);
      std::vector<std::string> ideal_labels;
      ideal_labels.push_back(in_label);
      ideal_labels.push_back(ref_label);
      for (size_t j = 0; j < alice_ports.size(); ++j) {
        ideal_labels.push_back(alice_ports[j]);
        ideal_labels.push_back(bob_ports[j]);
      }
      const SystemLayout ideal_layout = state.layout().sub(ideal_labels);
      Vector amps = Vector::Zero(ideal_layout.total_dim());
      std::vector<int> digits(static_cast<size_t>(ideal_layout.count()), 0);
      const double scale = std::pow(2.0, -0.5 * static_cast<double>(pairs.size()));
      for (std::int64_t mask = 0; mask < (std::int64_t{1} << pairs.size()); ++mask) {
        double sign = 1.0;
        for (size_t p = 0; p < pairs.size(); ++p) {
          const bool flip = (mask >> p) & 1;
          digits[static_cast<size_t>(ideal_layout.position(pairs[p].first))] = flip ? 1 : 0;
          digits[static_cast<size_t>(ideal_layout.position(pairs[p].second))] = flip ? 0 : 1;
          if (flip) sign = -sign;
        }
        amps[ideal_layout.encode(digits.data())] = sign * scale;
      }
      const PureState ideal(ideal_layout, std::move(amps));
      const Vector residual = qcore::partial_inner(ideal, ideal_layout.labels(), state);
      row.fid_teleported = residual.norm();
    }

    // mark the first active port (the swap parked the round's output there)
    active.erase(active.begin());

    // twirl the unmarked ports: one sampled Clifford applied to every live
    // A and B half (unitary unraveling of the exact channel average)
    if (!active.empty()) {
      const Matrix& c = cliffords[static_cast<size_t>(rng.next_below(cliffords.size()))];
      Vector amps = state.amplitudes();
      for (int p : active) {
        qcore::apply_to_targets(amps, state.layout(), c, {"A" + std::to_string(p)});
        qcore::apply_to_targets(amps, state.layout(), c, {"B" + std::to_string(p)});
      }
      state = PureState(state.layout(), std::move(amps));

      const PureState singlet = singlet_pair_on(SystemLayout({{"a", 2}, {"b", 2}}));
      Matrix singlet_proj = singlet.amplitudes() * singlet.amplitudes().adjoint();
      double worst = 0.0;
      for (int p : active) {
        const HermitianOperator rho =
            qcore::reduced_density(state, {"A" + std::to_string(p), "B" + std::to_string(p)});
        const HermitianOperator target(rho.layout(), singlet_proj, OperatorKind::General);
        worst = std::max(worst, qcore::trace_distance(rho, target));
      }
      row.fid_resource_est = worst;
    }

    trace.rounds.push_back(row);
  }
  return trace;
}

}  // namespace portsim::recycling

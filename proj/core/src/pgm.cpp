// SPDX-License-Identifier: Apache-2.0
#include "portsim/pgm.hpp"

#include <cmath>
#include <string>

#include "portsim/parallel.hpp"

namespace portsim::pgm {

namespace {

using qcore::MatrixFn;

Matrix singlet_projector4() {
  Matrix p = Matrix::Zero(4, 4);
  p(1, 1) = 0.5;
  p(2, 2) = 0.5;
  p(1, 2) = -0.5;
  p(2, 1) = -0.5;
  return p;
}

/// Tensor product of two-qubit singlets on the named label pairs.
PureState pairing_state(const SystemLayout& layout, const std::vector<std::pair<std::string, std::string>>& pairs) {
  const int n = layout.count();
  if (static_cast<int>(pairs.size()) * 2 != n) throw LayoutError("pairing must cover the layout");
  Vector amps = Vector::Zero(layout.total_dim());
  std::vector<int> digits(static_cast<size_t>(n), 0);
  const double scale = std::pow(2.0, -0.5 * static_cast<double>(pairs.size()));
  const std::int64_t combos = std::int64_t{1} << pairs.size();
  for (std::int64_t mask = 0; mask < combos; ++mask) {
    double sign = 1.0;
    for (size_t k = 0; k < pairs.size(); ++k) {
      const bool flipped = (mask >> k) & 1;  // |10> branch carries the minus sign
      digits[static_cast<size_t>(layout.position(pairs[k].first))] = flipped ? 1 : 0;
      digits[static_cast<size_t>(layout.position(pairs[k].second))] = flipped ? 0 : 1;
      if (flipped) sign = -sign;
    }
    amps[layout.encode(digits.data())] = sign * scale;
  }
  return PureState(layout, std::move(amps));
}

SystemLayout joint_layout(int ports) {
  std::vector<Subsystem> subs;
  for (int i = 0; i <= ports; ++i) subs.push_back({"A" + std::to_string(i), 2});
  for (int i = 0; i <= ports; ++i) subs.push_back({"B" + std::to_string(i), 2});
  return SystemLayout(std::move(subs));
}

std::vector<std::string> alice_labels(int ports) {
  std::vector<std::string> out;
  for (int i = 0; i <= ports; ++i) out.push_back("A" + std::to_string(i));
  return out;
}

}  // namespace

SystemLayout alice_layout(int ports) {
  std::vector<Subsystem> subs;
  for (int i = 0; i <= ports; ++i) subs.push_back({"A" + std::to_string(i), 2});
  return SystemLayout(std::move(subs));
}

HermitianOperator build_sigma(int port, int ports) {
  if (ports < 1) throw ArgumentError("ports must be >= 1");
  if (port < 1 || port > ports) {
    throw ArgumentError("sigma port index " + std::to_string(port) + " out of range 1.." +
                        std::to_string(ports));
  }
  SystemLayout pair_layout({{"A0", 2}, {"A" + std::to_string(port), 2}});
  HermitianOperator p_minus(pair_layout, singlet_projector4(), OperatorKind::General);
  HermitianOperator embedded = qcore::embed_operator(p_minus, alice_layout(ports));
  Matrix m = embedded.matrix() * std::pow(2.0, -(ports - 1));
  return HermitianOperator(alice_layout(ports), std::move(m), OperatorKind::Density);
}

PovmSet build_pgm(int ports) {
  const SystemLayout alice = alice_layout(ports);
  Matrix rho = Matrix::Zero(alice.total_dim(), alice.total_dim());
  std::vector<HermitianOperator> sigmas;
  sigmas.reserve(static_cast<size_t>(ports));
  for (int i = 1; i <= ports; ++i) {
    sigmas.push_back(build_sigma(i, ports));
    rho += sigmas.back().matrix();
  }
  const HermitianOperator rho_op(alice, rho, OperatorKind::General);
  const Matrix inv_sqrt = qcore::matrix_function_on_support(rho_op, MatrixFn::InvSqrt).matrix();

  PovmSet povm;
  povm.ports = ports;
  povm.alice = alice;
  Matrix sum = Matrix::Zero(alice.total_dim(), alice.total_dim());
  for (int i = 1; i <= ports; ++i) {
    Matrix pi = inv_sqrt * sigmas[static_cast<size_t>(i - 1)].matrix() * inv_sqrt;
    pi = 0.5 * (pi + pi.adjoint().eval());
    sum += pi;
    povm.elements.emplace_back(alice, pi, OperatorKind::PovmElement);
    povm.sqrt_elements.push_back(
        qcore::matrix_function_on_support(povm.elements.back(), MatrixFn::Sqrt).matrix());
  }
  povm.failure = Matrix::Identity(alice.total_dim(), alice.total_dim()) - sum;
  povm.failure = 0.5 * (povm.failure + povm.failure.adjoint().eval());
  povm.sqrt_failure = qcore::matrix_function_on_support(
                          HermitianOperator(alice, povm.failure, OperatorKind::PovmElement),
                          MatrixFn::Sqrt)
                          .matrix();
  return povm;
}

PureState protocol_input(int ports) {
  const SystemLayout layout = joint_layout(ports);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i <= ports; ++i)
    pairs.emplace_back("A" + std::to_string(i), "B" + std::to_string(i));
  return pairing_state(layout, pairs);
}

PureState ideal_state(int port, int ports) {
  if (port < 1 || port > ports) throw ArgumentError("ideal_state: port out of range");
  const SystemLayout layout = joint_layout(ports);
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.emplace_back("A0", "A" + std::to_string(port));
  pairs.emplace_back("B0", "B" + std::to_string(port));
  for (int j = 1; j <= ports; ++j) {
    if (j == port) continue;
    pairs.emplace_back("A" + std::to_string(j), "B" + std::to_string(j));
  }
  return pairing_state(layout, pairs);
}

TeleportOutcome post_measurement_state(const PureState& input, const PovmSet& povm, int port) {
  if (port < 0 || port > povm.ports) throw ArgumentError("POVM outcome index out of range");
  const Matrix& root = port == 0 ? povm.sqrt_failure : povm.sqrt_elements[static_cast<size_t>(port - 1)];
  Vector amps = input.amplitudes();
  qcore::apply_to_targets(amps, input.layout(), root, alice_labels(povm.ports));
  const double p = stable_squared_norm(amps);

  TeleportOutcome out;
  out.port = port;
  out.probability = p;
  if (p < 1e-14) {
    out.reachable = false;
    return out;
  }
  amps /= std::sqrt(p);
  PureState post(input.layout(), std::move(amps));
  if (port >= 1) {
    out.ideal_fidelity = qcore::uhlmann_fidelity(ideal_state(port, povm.ports), post);
  }
  out.post_state = std::move(post);
  return out;
}

double exact_protocol_fidelity(int ports, int dense_cap) {
  if (ports < 1) throw ArgumentError("ports must be >= 1");
  if (ports > dense_cap) {
    const double amps = std::pow(2.0, 2 * ports + 2);
    throw ResourceLimitError("dense cap exceeded: N = " + std::to_string(ports) + " needs 2^" +
                             std::to_string(2 * ports + 2) + " = " + std::to_string(amps) +
                             " amplitudes (cap N = " + std::to_string(dense_cap) + ")");
  }
  const PovmSet povm = build_pgm(ports);
  const PureState input = protocol_input(ports);
  const auto labels = alice_labels(ports);
  const auto terms = parallel_map<double>(static_cast<size_t>(ports), [&](size_t idx) {
    const int i = static_cast<int>(idx) + 1;
    Vector w = input.amplitudes();
    qcore::apply_to_targets(w, input.layout(), povm.sqrt_elements[idx], labels);
    const double p = stable_squared_norm(w);
    if (p < 1e-14) return 0.0;
    const PureState id = ideal_state(i, ports);
    const Complex overlap = id.amplitudes().dot(w);
    // p_i * |<id|post>| = sqrt(p_i) * |<id|sqrtPi|in>|
    return std::sqrt(p) * std::abs(overlap);
  });
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

RoundResult measurement_round(const PureState& state, const std::string& send_label,
                              const std::vector<std::string>& alice_ports,
                              const std::vector<std::string>& bob_ports, const PovmSet& povm,
                              CounterRng& rng) {
  const int m = static_cast<int>(alice_ports.size());
  if (m != povm.ports) throw ArgumentError("POVM port count does not match active ports");
  if (bob_ports.size() != alice_ports.size()) throw ArgumentError("alice/bob port lists differ");

  std::vector<std::string> targets;
  targets.push_back(send_label);
  for (const auto& l : alice_ports) targets.push_back(l);

  std::vector<double> probs(static_cast<size_t>(m), 0.0);
  std::vector<Vector> posts(static_cast<size_t>(m));
  for (int z = 1; z <= m; ++z) {
    Vector w = state.amplitudes();
    qcore::apply_to_targets(w, state.layout(), povm.sqrt_elements[static_cast<size_t>(z - 1)], targets);
    probs[static_cast<size_t>(z - 1)] = stable_squared_norm(w);
    posts[static_cast<size_t>(z - 1)] = std::move(w);
  }
  double success_total = 0.0;
  for (double p : probs) success_total += p;

  const double u = rng.next_double();
  int chosen = 0;
  double cum = 0.0;
  for (int z = 1; z <= m; ++z) {
    cum += probs[static_cast<size_t>(z - 1)];
    if (u < cum) {
      chosen = z;
      break;
    }
  }

  RoundResult result{TeleportOutcome{}, state};
  if (chosen == 0) {
    Vector w = state.amplitudes();
    qcore::apply_to_targets(w, state.layout(), povm.sqrt_failure, targets);
    const double p0 = stable_squared_norm(w);
    result.outcome.port = 0;
    result.outcome.probability = std::max(0.0, 1.0 - success_total);
    if (p0 >= 1e-14) {
      w /= std::sqrt(p0);
      result.state = PureState(state.layout(), std::move(w));
      result.outcome.post_state = result.state;
    } else {
      result.outcome.reachable = false;
    }
    return result;
  }

  Vector w = std::move(posts[static_cast<size_t>(chosen - 1)]);
  const double p = probs[static_cast<size_t>(chosen - 1)];
  w /= std::sqrt(p);
  PureState post(state.layout(), std::move(w));
  result.outcome.port = chosen;
  result.outcome.probability = p;
  result.outcome.post_state = post;
  if (chosen != 1) {
    std::map<std::string, std::string> perm;
    perm[alice_ports[static_cast<size_t>(chosen - 1)]] = alice_ports[0];
    perm[alice_ports[0]] = alice_ports[static_cast<size_t>(chosen - 1)];
    perm[bob_ports[static_cast<size_t>(chosen - 1)]] = bob_ports[0];
    perm[bob_ports[0]] = bob_ports[static_cast<size_t>(chosen - 1)];
    result.state = qcore::permute_subsystems(post, perm);
  } else {
    result.state = std::move(post);
  }
  return result;
}

RoundResult teleport_once(const PureState& resource, int ports, std::uint64_t seed) {
  const PovmSet povm = build_pgm(ports);
  std::vector<std::string> alice_ports, bob_ports;
  for (int i = 1; i <= ports; ++i) {
    alice_ports.push_back("A" + std::to_string(i));
    bob_ports.push_back("B" + std::to_string(i));
  }
  CounterRng rng(seed);
  RoundResult r = measurement_round(resource, "A0", alice_ports, bob_ports, povm, rng);
  if (r.outcome.port >= 1 && r.outcome.post_state) {
    r.outcome.ideal_fidelity =
        qcore::uhlmann_fidelity(ideal_state(r.outcome.port, ports), *r.outcome.post_state);
  }
  return r;
}

}  // namespace portsim::pgm

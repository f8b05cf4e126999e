// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "portsim/qcore.hpp"
#include "portsim/rng.hpp"

namespace portsim::pgm {

/// Largest port count the dense engine accepts by default: the joint pure
/// state has 2^{2N+2} amplitudes, so N = 9 keeps it at 2^20.
inline constexpr int kDefaultDenseCap = 9;

/// Pretty-good-measurement POVM on Alice's qubits A0..AN.
///
/// elements[i-1] = rho^{-1/2} sigma^(i) rho^{-1/2}; failure = 1 - sum_i Pi_i,
/// which equals identity minus the support projector of rho.
struct PovmSet {
  int ports = 0;
  SystemLayout alice;
  std::vector<HermitianOperator> elements;
  std::vector<Matrix> sqrt_elements;  // sqrt(Pi_i), reused by every round
  Matrix failure;                     // Pi_0
  Matrix sqrt_failure;
};

struct TeleportOutcome {
  int port = 0;  // 0 = failure
  double probability = 0.0;
  bool reachable = true;
  std::optional<PureState> post_state;
  double ideal_fidelity = 0.0;  // |<Psi_id|post>|^2; 0 reported for port 0
};

SystemLayout alice_layout(int ports);

/// sigma^(i) = (1/2^{N-1}) P^-_{A0,Ai} (x) identity, a unit-trace density operator.
HermitianOperator build_sigma(int port, int ports);

PovmSet build_pgm(int ports);

/// Joint input |Psi_in> = (x)_{i=0..N} singlet(Ai, Bi) on layout [A0..AN, B0..BN].
PureState protocol_input(int ports);

/// |Psi_id^i>: singlets on (A0,Ai), (B0,Bi) and untouched (Aj,Bj) for j != i.
PureState ideal_state(int port, int ports);

TeleportOutcome post_measurement_state(const PureState& input, const PovmSet& povm, int port);

/// Average protocol fidelity sum_i p_i |<Psi_id^i|Psi_out^i>| over all outcomes
/// (failure counted as 0); dense enumeration, deterministic ordered reduction.
double exact_protocol_fidelity(int ports, int dense_cap = kDefaultDenseCap);

/// One measurement round on an arbitrary state: PGM on [send_label, alice ports],
/// outcome sampled from the exact distribution, then A/B swap of the chosen port
/// with the first listed port. Failure (port 0) is returned, not raised.
struct RoundResult {
  TeleportOutcome outcome;
  PureState state;  // post-measurement, post-swap
};
RoundResult measurement_round(const PureState& state, const std::string& send_label,
                              const std::vector<std::string>& alice_ports,
                              const std::vector<std::string>& bob_ports, const PovmSet& povm,
                              CounterRng& rng);

/// One teleportation round on the full N-port resource
/// (labels A0..AN/B0..BN). Marks nothing; returns outcome plus post-swap state.
RoundResult teleport_once(const PureState& resource, int ports, std::uint64_t seed);

}  // namespace portsim::pgm

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "portsim/states.hpp"

namespace portsim::ensembles {

enum class EnsembleKind { Pauli, PortSwap, Clifford1q, User };

/// Finite set of unitaries defining a generalized teleportation protocol.
struct UnitaryEnsemble {
  EnsembleKind kind = EnsembleKind::User;
  int dim = 0;
  std::vector<Matrix> elements;
  std::size_t size() const { return elements.size(); }
};

/// The 24 single-qubit Cliffords (deduplicated up to global phase), generated
/// from H and S in a fixed breadth-first order.
const std::vector<Matrix>& single_qubit_cliffords();

/// d^2 generalized Pauli (shift/clock) unitaries X^a Z^b.
UnitaryEnsemble make_pauli_ensemble(int d);

/// N unitaries on Bob's d^N-dimensional side swapping port i with port 1
/// (identity for i = 1).
UnitaryEnsemble make_port_swap_ensemble(int ports, int d);

UnitaryEnsemble make_clifford_1q_ensemble();

/// JSON array of K matrices, each a row-major array of [re, im] pairs.
/// Dimension inferred; elements validated for unitarity.
UnitaryEnsemble load_ensemble_file(const std::string& path);

/// Bob-side signal states eta_g = Tr_{B_2..B_N}[(1 (x) U_g) |Psi_in><Psi_in| (...)^dagger].
struct SignalEnsemble {
  int ports = 0;
  int d = 2;
  std::vector<HermitianOperator> signals;
  HermitianOperator avg;
  std::vector<int> ranks;
};

SignalEnsemble signals_from_ensemble(const UnitaryEnsemble& ens, int ports, int d);

struct ConditionResult {
  bool holds = false;
  double margin = 0.0;  // rhs - lhs
  double purity = 0.0;  // Tr(eta_avg^2)
  double rhs = 0.0;     // 1 / ((1-eps) d^{N+1})
};

/// Sufficient condition for the ensemble to drive a reliable teleportation
/// protocol: Tr(eta_avg^2) <= 1 / ((1-eps) d^{N+1}).
ConditionResult reliability_condition(const SignalEnsemble& sig, double epsilon);

/// p_s >= (1/K) (1/mean rank) (1/Tr(eta_avg^2)), clamped to [0,1].
double pgm_success_lower_bound(const SignalEnsemble& sig);

struct FidelityFromSuccess {
  double value = 0.0;
  bool clamped = false;
};

/// F = (K/d^2) p_s, clamped to [0,1] with a flag when K p_s > d^2.
FidelityFromSuccess fidelity_from_success(std::size_t ensemble_size, int d, double p_s);

/// (1/K^2) sum_{g,h} |Tr(U_g^dagger U_h)|^4; equals 2 for an exact qubit 2-design.
double frame_potential(const UnitaryEnsemble& ens, int order = 2);

/// Reference discrimination bound for single-state port-based teleportation,
/// N / (N + d^2 - 1).
double pbt_discrimination_bound(int ports, int d);

}  // namespace portsim::ensembles

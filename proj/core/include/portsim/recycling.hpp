// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "portsim/pgm.hpp"

namespace portsim::recycling {

enum class TwirlMode { CliffordTensor, HaarMc };

/// Collective twirl Delta(rho) = avg_U (U (x) ... (x) U) rho (...)^dagger with the
/// same single-qubit U on every subsystem of the operator. CliffordTensor is the
/// exact average over the 24 single-qubit Cliffords; HaarMc a Monte-Carlo average
/// over `samples` Haar unitaries. Singlet tensor powers are exact fixed points.
HermitianOperator twirl_ports(const HermitianOperator& op, TwirlMode mode, int samples,
                              std::uint64_t seed);

struct RecycleRound {
  int round = 0;
  int port = 0;           // chosen port z (0 = failure)
  bool success = false;
  double fid_teleported = 0.0;   // round ideal-configuration fidelity, 0 on failure
  double fid_resource_est = 0.0; // max over live ports of ||rho_j - singlet||_1
  double lemma2_bound = 0.0;     // 1 - 11 r / (2N), clamped at 0
};

struct RecycleTrace {
  int ports = 0;
  std::uint64_t seed = 0;
  std::vector<RecycleRound> rounds;
};

struct RecycleOptions {
  int dense_cap = pgm::kDefaultDenseCap;
  int max_qubits = 20;  // total simulated qubits 2N + 2k
};

/// Sequential recycling run: k rounds on one N-port resource, fresh input
/// singlet per round, port marking after Bob's swap, and a twirl of the
/// unmarked ports after every round. The twirl channel is applied by sampling
/// one Clifford per round (an exact unitary unraveling; every reported metric
/// is linear in the seed-averaged state). Failure rounds keep the protocol
/// running, marked success=false and counted as fidelity 0.
RecycleTrace recycle_protocol_run(int ports, int rounds, std::uint64_t seed,
                                  const RecycleOptions& opts = {});

/// Squared fidelity of the reduced state on (A_port, B_port) with the singlet.
double port_marginal_fidelity(const PureState& state, int port, const std::set<int>& marked = {});

}  // namespace portsim::recycling

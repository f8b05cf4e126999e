// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "portsim/states.hpp"

namespace portsim::qcore {

enum class ResourceKind { Singlet, CanonicalMes };

/// Tensor product of N two-qudit maximally entangled pairs on layout
/// A1 B1 ... AN BN. Singlets require d = 2; canonical MES is (1/sqrt d) sum |ii>.
PureState build_singlet_resource(int ports, int d, ResourceKind kind);

/// Amplitudes of the chosen two-qudit pair as a d x d matrix m(a, b).
Matrix pair_amplitudes(int d, ResourceKind kind);

HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<std::string>& keep);

/// Reduced density operator of a pure state on the kept subsystems.
HermitianOperator reduced_density(const PureState& state, const std::vector<std::string>& keep);

PureState permute_subsystems(const PureState& state, const std::map<std::string, std::string>& perm);
HermitianOperator permute_subsystems(const HermitianOperator& op,
                                     const std::map<std::string, std::string>& perm);

/// op tensored with identity on the complement of its labels in `full`,
/// reindexed to the ordering of `full`.
HermitianOperator embed_operator(const HermitianOperator& op, const SystemLayout& full);

/// Squared Uhlmann fidelity (pure-pure: |<a|b>|^2), symmetric in its arguments.
double uhlmann_fidelity(const PureState& a, const PureState& b);
double uhlmann_fidelity(const PureState& a, const HermitianOperator& b);
double uhlmann_fidelity(const HermitianOperator& a, const PureState& b);
double uhlmann_fidelity(const HermitianOperator& a, const HermitianOperator& b);

/// One-norm of the difference (sum of absolute eigenvalues).
double trace_distance(const HermitianOperator& a, const HermitianOperator& b);

enum class MatrixFn { Sqrt, InvSqrt, InvQuarter };

/// Eigendecompose, apply fn to eigenvalues above cutoff * lambda_max, zero the rest.
/// InvSqrt of a projector is the projector itself.
HermitianOperator matrix_function_on_support(const HermitianOperator& op, MatrixFn fn,
                                             double cutoff = kSupportCutoff);

/// Rank of the support at the standard relative eigenvalue cutoff.
int support_rank(const Matrix& hermitian, double cutoff = kSupportCutoff);

/// In-place (op x identity) application on the target subsystems of a state vector.
/// op is (prod target dims) square; target index is mixed-radix over `targets` order.
void apply_to_targets(Vector& amplitudes, const SystemLayout& layout, const Matrix& op,
                      const std::vector<std::string>& targets);

/// <phi|psi> contracted over phi's subsystems only; returns the residual vector on
/// psi's remaining subsystems (full inner product when none remain).
Vector partial_inner(const PureState& phi, const std::vector<std::string>& phi_labels,
                     const PureState& psi);

}  // namespace portsim::qcore

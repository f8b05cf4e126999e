// SPDX-License-Identifier: Apache-2.0
#include "portsim/states.hpp"

#include <cmath>

namespace portsim {

double stable_squared_norm(const Vector& v) {
  double sum = 0.0, comp = 0.0;
  for (std::int64_t i = 0; i < v.size(); ++i) {
    const double term = std::norm(v[i]);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

PureState::PureState(SystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
  if (amps_.size() != layout_.total_dim()) {
    throw DimensionError("amplitude vector size " + std::to_string(amps_.size()) +
                         " != layout dim " + std::to_string(layout_.total_dim()));
  }
  const double n = std::sqrt(stable_squared_norm(amps_));
  if (std::abs(n - 1.0) > kNormTol) {
    throw ArgumentError("pure state norm deviates from 1 by " + std::to_string(n - 1.0) +
                        " (tolerance 1e-12)");
  }
}

HermitianOperator::HermitianOperator(SystemLayout layout, Matrix matrix, OperatorKind kind)
    : layout_(std::move(layout)), mat_(std::move(matrix)), kind_(kind) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != layout_.total_dim()) {
    throw DimensionError("operator shape does not match layout dim " +
                         std::to_string(layout_.total_dim()));
  }
  const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol) {
    throw ArgumentError("matrix deviates from Hermitian by " + std::to_string(herm_dev));
  }
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  if (kind_ != OperatorKind::General) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < kPsdFloor) {
      throw NotPsdError("eigenvalue " + std::to_string(min_ev) + " below PSD floor");
    }
    if (kind_ == OperatorKind::Density) {
      const double tr = mat_.trace().real();
      if (std::abs(tr - 1.0) > kTraceTol) {
        throw ArgumentError("density operator trace " + std::to_string(tr) + " != 1");
      }
    }
  }
}

}  // namespace portsim

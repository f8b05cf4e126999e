// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "portsim/layout.hpp"

namespace portsim {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;  // relative to largest eigenvalue

/// Compensated (Neumaier) squared norm; plain summation noise at 2^18 entries
/// sits right at the 1e-12 state-norm tolerance.
double stable_squared_norm(const Vector& v);

/// Normalized amplitude vector over a SystemLayout.
class PureState {
public:
  PureState(SystemLayout layout, Vector amplitudes);

  const SystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amps_; }
  std::int64_t dim() const { return amps_.size(); }

private:
  SystemLayout layout_;
  Vector amps_;
};

enum class OperatorKind { General, Density, PovmElement };

/// Hermitian matrix over a SystemLayout, optionally validated as a density
/// operator or POVM element on construction.
class HermitianOperator {
public:
  HermitianOperator(SystemLayout layout, Matrix matrix, OperatorKind kind = OperatorKind::General);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return mat_; }
  OperatorKind kind() const { return kind_; }
  std::int64_t dim() const { return mat_.rows(); }
  double trace() const { return mat_.trace().real(); }

private:
  SystemLayout layout_;
  Matrix mat_;
  OperatorKind kind_;
};

}  // namespace portsim

// SPDX-License-Identifier: Apache-2.0
#include "portsim/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace portsim::qcore {

namespace {

// Offsets of every mixed-radix combination of the given positions, in the
// order the positions are listed (first listed = most significant).
std::vector<std::int64_t> offset_table(const SystemLayout& layout, const std::vector<int>& positions) {
  std::int64_t count = 1;
  for (int p : positions) count *= layout.at(p).dim;
  std::vector<std::int64_t> offs(static_cast<size_t>(count), 0);
  std::int64_t repeat = count;
  for (int p : positions) {
    const int d = layout.at(p).dim;
    const std::int64_t stride = layout.stride(p);
    repeat /= d;
    std::int64_t idx = 0;
    while (idx < count) {
      for (int digit = 0; digit < d; ++digit) {
        for (std::int64_t r = 0; r < repeat; ++r) offs[static_cast<size_t>(idx++)] += digit * stride;
      }
    }
  }
  return offs;
}

std::vector<int> positions_of(const SystemLayout& layout, const std::vector<std::string>& labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(layout.position(l));
  return out;
}

std::vector<int> complement_positions(const SystemLayout& layout, const std::vector<int>& keep) {
  std::vector<bool> kept(static_cast<size_t>(layout.count()), false);
  for (int p : keep) kept[static_cast<size_t>(p)] = true;
  std::vector<int> out;
  for (int i = 0; i < layout.count(); ++i) {
    if (!kept[static_cast<size_t>(i)]) out.push_back(i);
  }
  return out;
}

Eigen::SelfAdjointEigenSolver<Matrix> eigensolve(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw Error("Hermitian eigendecomposition failed");
  return es;
}

}  // namespace

Matrix pair_amplitudes(int d, ResourceKind kind) {
  if (kind == ResourceKind::Singlet) {
    if (d != 2) throw DimensionError("singlet pairs require d = 2, got d = " + std::to_string(d));
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0 / std::sqrt(2.0);
    m(1, 0) = -1.0 / std::sqrt(2.0);
    return m;
  }
  if (d < 2) throw DimensionError("canonical MES requires d >= 2");
  return Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
}

PureState build_singlet_resource(int ports, int d, ResourceKind kind) {
  if (ports < 1) throw ArgumentError("port count must be >= 1");
  const Matrix m = pair_amplitudes(d, kind);
  Vector pair(static_cast<std::int64_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) pair[a * d + b] = m(a, b);

  Vector amps = pair;
  for (int i = 1; i < ports; ++i) {
    Vector next(amps.size() * pair.size());
    for (std::int64_t x = 0; x < amps.size(); ++x)
      next.segment(x * pair.size(), pair.size()) = amps[x] * pair;
    amps.swap(next);
  }

  std::vector<Subsystem> subs;
  for (int i = 1; i <= ports; ++i) {
    subs.push_back({"A" + std::to_string(i), d});
    subs.push_back({"B" + std::to_string(i), d});
  }
  return PureState(SystemLayout(std::move(subs)), std::move(amps));
}

HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<std::string>& keep) {
  const SystemLayout& layout = op.layout();
  const SystemLayout sub = layout.sub(keep);
  const auto keep_pos = positions_of(layout, sub.labels());
  const auto tr_pos = complement_positions(layout, keep_pos);
  const auto koffs = offset_table(layout, keep_pos);
  const auto toffs = offset_table(layout, tr_pos);

  const Matrix& m = op.matrix();
  Matrix out = Matrix::Zero(sub.total_dim(), sub.total_dim());
  for (size_t r = 0; r < koffs.size(); ++r) {
    for (size_t c = 0; c < koffs.size(); ++c) {
      Complex acc = 0.0;
      for (std::int64_t t : toffs) acc += m(koffs[r] + t, koffs[c] + t);
      out(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c)) = acc;
    }
  }
  return HermitianOperator(sub, std::move(out), op.kind());
}

HermitianOperator reduced_density(const PureState& state, const std::vector<std::string>& keep) {
  const SystemLayout& layout = state.layout();
  const SystemLayout sub = layout.sub(keep);
  const auto keep_pos = positions_of(layout, sub.labels());
  const auto tr_pos = complement_positions(layout, keep_pos);
  const auto koffs = offset_table(layout, keep_pos);
  const auto toffs = offset_table(layout, tr_pos);

  Matrix g(koffs.size(), toffs.size());
  const Vector& psi = state.amplitudes();
  for (size_t r = 0; r < koffs.size(); ++r)
    for (size_t t = 0; t < toffs.size(); ++t)
      g(static_cast<std::int64_t>(r), static_cast<std::int64_t>(t)) = psi[koffs[r] + toffs[t]];
  Matrix rho = g * g.adjoint();
  return HermitianOperator(sub, std::move(rho), OperatorKind::Density);
}

namespace {

std::vector<std::int64_t> permutation_index_map(const SystemLayout& layout,
                                                const std::map<std::string, std::string>& perm) {
  const int n = layout.count();
  std::vector<int> dest(static_cast<size_t>(n));
  std::iota(dest.begin(), dest.end(), 0);
  for (const auto& [from, to] : perm) {
    const int pf = layout.position(from);
    const int pt = layout.position(to);
    if (layout.at(pf).dim != layout.at(pt).dim) {
      throw DimensionError("permutation maps '" + from + "' (dim " +
                           std::to_string(layout.at(pf).dim) + ") to '" + to + "' (dim " +
                           std::to_string(layout.at(pt).dim) + ")");
    }
    dest[static_cast<size_t>(pf)] = pt;
  }
  // must be a bijection
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int p : dest) {
    if (seen[static_cast<size_t>(p)]) throw LayoutError("subsystem permutation is not a bijection");
    seen[static_cast<size_t>(p)] = true;
  }
  std::vector<std::int64_t> map(static_cast<size_t>(layout.total_dim()));
  std::vector<int> digits(static_cast<size_t>(n)), moved(static_cast<size_t>(n));
  for (std::int64_t idx = 0; idx < layout.total_dim(); ++idx) {
    layout.decode(idx, digits.data());
    for (int i = 0; i < n; ++i) moved[static_cast<size_t>(dest[static_cast<size_t>(i)])] = digits[static_cast<size_t>(i)];
    map[static_cast<size_t>(idx)] = layout.encode(moved.data());
  }
  return map;
}

}  // namespace

PureState permute_subsystems(const PureState& state, const std::map<std::string, std::string>& perm) {
  const auto map = permutation_index_map(state.layout(), perm);
  Vector out(state.dim());
  for (std::int64_t i = 0; i < state.dim(); ++i) out[map[static_cast<size_t>(i)]] = state.amplitudes()[i];
  return PureState(state.layout(), std::move(out));
}

HermitianOperator permute_subsystems(const HermitianOperator& op,
                                     const std::map<std::string, std::string>& perm) {
  const auto map = permutation_index_map(op.layout(), perm);
  const Matrix& m = op.matrix();
  Matrix out(m.rows(), m.cols());
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (std::int64_t c = 0; c < m.cols(); ++c)
      out(map[static_cast<size_t>(r)], map[static_cast<size_t>(c)]) = m(r, c);
  return HermitianOperator(op.layout(), std::move(out), op.kind());
}

HermitianOperator embed_operator(const HermitianOperator& op, const SystemLayout& full) {
  const SystemLayout& small = op.layout();
  std::vector<std::int64_t> op_offs(static_cast<size_t>(small.total_dim()), 0);
  {
    std::vector<int> digits(static_cast<size_t>(small.count()));
    for (std::int64_t idx = 0; idx < small.total_dim(); ++idx) {
      small.decode(idx, digits.data());
      std::int64_t off = 0;
      for (int i = 0; i < small.count(); ++i) {
        const int pf = full.position(small.at(i).label);
        if (full.at(pf).dim != small.at(i).dim) {
          throw DimensionError("embedded subsystem '" + small.at(i).label + "' dim mismatch");
        }
        off += static_cast<std::int64_t>(digits[static_cast<size_t>(i)]) * full.stride(pf);
      }
      op_offs[static_cast<size_t>(idx)] = off;
    }
  }
  std::vector<int> comp;
  for (int i = 0; i < full.count(); ++i)
    if (!small.has(full.at(i).label)) comp.push_back(i);
  const auto coffs = offset_table(full, comp);

  const Matrix& m = op.matrix();
  Matrix out = Matrix::Zero(full.total_dim(), full.total_dim());
  for (size_t r = 0; r < op_offs.size(); ++r)
    for (size_t c = 0; c < op_offs.size(); ++c) {
      const Complex v = m(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c));
      if (v == Complex(0.0)) continue;
      for (std::int64_t t : coffs) out(op_offs[r] + t, op_offs[c] + t) = v;
    }
  return HermitianOperator(full, std::move(out), OperatorKind::General);
}

double uhlmann_fidelity(const PureState& a, const PureState& b) {
  if (a.layout() != b.layout()) throw LayoutError("fidelity operands have different layouts");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double uhlmann_fidelity(const PureState& a, const HermitianOperator& b) {
  if (a.layout() != b.layout()) throw LayoutError("fidelity operands have different layouts");
  const double f = (a.amplitudes().adjoint() * b.matrix() * a.amplitudes())(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double uhlmann_fidelity(const HermitianOperator& a, const PureState& b) {
  return uhlmann_fidelity(b, a);
}

double uhlmann_fidelity(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.layout() != b.layout()) throw LayoutError("fidelity operands have different layouts");
  auto es = eigensolve(a.matrix());
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_a = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Matrix inner = sqrt_a * b.matrix() * sqrt_a;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es2(inner, Eigen::EigenvaluesOnly);
  const double root_sum = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double trace_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.layout() != b.layout()) throw LayoutError("trace distance operands have different layouts");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

HermitianOperator matrix_function_on_support(const HermitianOperator& op, MatrixFn fn,
                                             double cutoff) {
  auto es = eigensolve(op.matrix());
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double ev_max = ev.maxCoeff();
  if (ev.minCoeff() < -1e-8) {
    throw NotPsdError("operator has eigenvalue " + std::to_string(ev.minCoeff()) +
                      " below -1e-8; not PSD");
  }
  const double floor = cutoff * std::max(ev_max, 0.0);
  Eigen::VectorXd mapped = Eigen::VectorXd::Zero(ev.size());
  for (std::int64_t i = 0; i < ev.size(); ++i) {
    if (ev[i] <= floor) continue;
    switch (fn) {
      case MatrixFn::Sqrt: mapped[i] = std::sqrt(ev[i]); break;
      case MatrixFn::InvSqrt: mapped[i] = 1.0 / std::sqrt(ev[i]); break;
      case MatrixFn::InvQuarter: mapped[i] = std::pow(ev[i], -0.25); break;
    }
  }
  Matrix out = es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  return HermitianOperator(op.layout(), std::move(out), OperatorKind::General);
}

int support_rank(const Matrix& hermitian, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  const double ev_max = es.eigenvalues().maxCoeff();
  if (ev_max <= 0.0) return 0;
  return static_cast<int>((es.eigenvalues().array() > cutoff * ev_max).count());
}

void apply_to_targets(Vector& amplitudes, const SystemLayout& layout, const Matrix& op,
                      const std::vector<std::string>& targets) {
  const auto tpos = positions_of(layout, targets);
  std::int64_t dim_t = 1;
  for (int p : tpos) dim_t *= layout.at(p).dim;
  if (op.rows() != dim_t || op.cols() != dim_t) {
    throw DimensionError("operator dim " + std::to_string(op.rows()) +
                         " != target subsystem dim " + std::to_string(dim_t));
  }

  // Fast path: targets are the leading block in layout order, rest is contiguous.
  bool prefix = static_cast<int>(tpos.size()) <= layout.count();
  for (size_t i = 0; i < tpos.size() && prefix; ++i)
    prefix = tpos[i] == static_cast<int>(i);
  const std::int64_t dim_rest = layout.total_dim() / dim_t;
  if (prefix) {
    Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
        amplitudes.data(), dim_t, dim_rest);
    view = op * view;
    return;
  }

  const auto toffs = offset_table(layout, tpos);
  const auto rpos = complement_positions(layout, tpos);
  const auto roffs = offset_table(layout, rpos);
  Vector x(dim_t), y(dim_t);
  for (std::int64_t base : roffs) {
    for (std::int64_t j = 0; j < dim_t; ++j) x[j] = amplitudes[base + toffs[static_cast<size_t>(j)]];
    y.noalias() = op * x;
    for (std::int64_t j = 0; j < dim_t; ++j) amplitudes[base + toffs[static_cast<size_t>(j)]] = y[j];
  }
}

Vector partial_inner(const PureState& phi, const std::vector<std::string>& phi_labels,
                     const PureState& psi) {
  const SystemLayout& big = psi.layout();
  if (phi_labels != phi.layout().labels()) {
    throw LayoutError("partial_inner: label list must match phi's layout order");
  }
  const auto ppos = positions_of(big, phi_labels);
  for (size_t i = 0; i < ppos.size(); ++i) {
    if (big.at(ppos[i]).dim != phi.layout().at(static_cast<int>(i)).dim) {
      throw DimensionError("partial_inner: dim mismatch on '" + phi_labels[i] + "'");
    }
  }
  const auto moffs = offset_table(big, ppos);
  const auto rpos = complement_positions(big, ppos);
  const auto roffs = offset_table(big, rpos);
  Vector out(static_cast<std::int64_t>(roffs.size()));
  for (size_t r = 0; r < roffs.size(); ++r) {
    Complex acc = 0.0;
    for (size_t m = 0; m < moffs.size(); ++m) {
      acc += std::conj(phi.amplitudes()[static_cast<std::int64_t>(m)]) *
             psi.amplitudes()[roffs[r] + moffs[m]];
    }
    out[static_cast<std::int64_t>(r)] = acc;
  }
  return out;
}

}  // namespace portsim::qcore

// SPDX-License-Identifier: Apache-2.0
#include "portsim/schur.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "portsim/errors.hpp"

namespace portsim::schur {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <typename Float>
Float to_float(const BigRat& r) {
  return Float(boost::multiprecision::numerator(r)) / Float(boost::multiprecision::denominator(r));
}

// 2^{-3(N-1)/2} without going through exp/log.
template <typename Float>
Float half_power_scale(int ports) {
  const int e3 = 3 * (ports - 1);
  Float v = boost::multiprecision::ldexp(Float(1), -(e3 / 2));
  if (e3 % 2) v /= boost::multiprecision::sqrt(Float(2));
  return v;
}

template <typename Float>
Float sigma_sqrtpi1_at(const SpinBlockSpectrum& spec) {
  using boost::multiprecision::sqrt;
  Float total = 0;
  for (const SpinRow& row : spec.rows) {
    const Float two_s1 = Float(row.twice_s + 1);
    const Float p = Float(row.twice_s) / (2 * two_s1);      // s/(2s+1)
    const Float q = Float(row.twice_s + 2) / (2 * two_s1);  // (s+1)/(2s+1)
    const Float lp = to_float<Float>(row.lambda_plus);
    const Float lm = to_float<Float>(row.lambda_minus);
    const Float a = p / sqrt(lm) + q / sqrt(lp);
    const Float b = p / lm + q / lp;
    total += Float(row.block_dim) * a * a / sqrt(b);
  }
  return total * half_power_scale<Float>(spec.ports);
}

}  // namespace

SpinBlockSpectrum spin_block_spectrum(int ports) {
  if (ports < 1) throw ArgumentError("ports must be >= 1");
  const int N = ports;
  SpinBlockSpectrum spec;
  spec.ports = N;
  const BigInt fact_n1 = factorial(N - 1);
  const int twice_sm = (N % 2 == 1) ? 0 : 1;
  for (int twice_s = twice_sm; twice_s <= N - 1; twice_s += 2) {
    SpinRow row;
    row.twice_s = twice_s;
    const int j = (N - 1 - twice_s) / 2;  // (N-1)/2 - s
    const BigInt num = BigInt(twice_s + 1) * fact_n1;
    const BigInt den = factorial(j) * factorial(N - j);
    if (num % den != 0) throw Error("non-integral spin multiplicity (internal)");
    row.degeneracy = num / den;
    row.block_dim = BigInt(twice_s + 1) * row.degeneracy;
    const BigInt two_pow = BigInt(1) << (N + 1);
    row.lambda_plus = BigRat(BigInt(N + twice_s + 3), two_pow);
    row.lambda_minus = BigRat(BigInt(N - twice_s + 1), two_pow);
    spec.rows.push_back(std::move(row));
  }
  return spec;
}

BigRat trace_pi1_exact_sum(int ports) {
  if (ports < 1) throw ArgumentError("ports must be >= 1");
  const int N = ports;
  const BigInt fact_n1 = factorial(N - 1);
  BigRat total = 0;
  const int twice_sm = (N % 2 == 1) ? 0 : 1;
  for (int twice_s = twice_sm; twice_s <= N - 1; twice_s += 2) {
    const int j = (N - 1 - twice_s) / 2;
    // s/(N/2 - s + 1/2) + (s+1)/(N/2 + s + 3/2), doubled numerators/denominators
    const BigRat bracket = BigRat(twice_s, N - twice_s + 1) + BigRat(twice_s + 2, N + twice_s + 3);
    const BigRat frac(BigInt(twice_s + 1) * fact_n1, factorial(j) * factorial(N - j));
    total += bracket * frac;
  }
  return 2 * total;
}

HighFloat trace_sigma_sqrtpi1_sum(int ports) {
  using Float50 = boost::multiprecision::cpp_bin_float_50;
  using Float200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
  const SpinBlockSpectrum spec = spin_block_spectrum(ports);
  const HighFloat v100 = sigma_sqrtpi1_at<HighFloat>(spec);
  const HighFloat v50 = HighFloat(sigma_sqrtpi1_at<Float50>(spec));
  if (boost::multiprecision::abs(v100 - v50) <= 1e-12 * boost::multiprecision::abs(v100)) {
    return v100;
  }
  // escalate once; the sum has positive terms only, so this should not trigger
  const Float200 v200 = sigma_sqrtpi1_at<Float200>(spec);
  return HighFloat(v200);
}

HighFloat recycle_fidelity_bound_hp(int ports) {
  using boost::multiprecision::ldexp;
  using boost::multiprecision::sqrt;
  const BigRat tp = trace_pi1_exact_sum(ports);
  const HighFloat tr_pi1 = to_float<HighFloat>(tp);
  const HighFloat ratio = ldexp(tr_pi1, -(ports - 1));
  return HighFloat(ports) / 4 * sqrt(ratio) * trace_sigma_sqrtpi1_sum(ports);
}

double recycle_fidelity_bound(int ports) {
  return static_cast<double>(recycle_fidelity_bound_hp(ports));
}

double accumulated_error_bound(int ports, int rounds) {
  if (ports < 1) throw ArgumentError("ports must be >= 1");
  if (rounds < 0) throw ArgumentError("rounds must be >= 0");
  const double f = 1.0 - 11.0 * rounds / (2.0 * ports);
  return std::max(0.0, f);
}

std::string asym_quantity_name(AsymQuantity q) {
  switch (q) {
    case AsymQuantity::TrPi1: return "tr-pi1";
    case AsymQuantity::TrSigmaSqrt: return "tr-sigma-sqrt";
    case AsymQuantity::RecycleBound: return "recycle-bound";
  }
  return "?";
}

AsymptoticReport asymptotic_expansion_check(AsymQuantity q, const std::vector<int>& grid) {
  if (grid.size() < 4) throw ArgumentError("asymptotic grid needs at least 4 values");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ArgumentError("asymptotic grid must be strictly increasing");
  }
  if (grid.back() < 200) throw ArgumentError("asymptotic grid maximum must be >= 200");

  AsymptoticReport rep;
  rep.quantity = asym_quantity_name(q);
  rep.grid = grid;
  for (int n : grid) {
    double y = 0.0;
    switch (q) {
      case AsymQuantity::TrPi1: {
        // N TrPi1 / 2^{N+1}
        const HighFloat v = to_float<HighFloat>(trace_pi1_exact_sum(n));
        y = static_cast<double>(boost::multiprecision::ldexp(v * n, -(n + 1)));
        break;
      }
      case AsymQuantity::TrSigmaSqrt: {
        // sqrt(N) * value / 2, normalized so the leading order is 1
        const HighFloat v = trace_sigma_sqrtpi1_sum(n);
        y = static_cast<double>(boost::multiprecision::sqrt(HighFloat(n)) * v / 2);
        break;
      }
      case AsymQuantity::RecycleBound:
        y = static_cast<double>(recycle_fidelity_bound_hp(n));
        break;
    }
    rep.values.push_back(y);
  }

  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd basis(m, 3);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = grid[static_cast<size_t>(i)];
    basis(i, 0) = 1.0;
    basis(i, 1) = 1.0 / n;
    basis(i, 2) = 1.0 / (n * n);
    rhs(i) = rep.values[static_cast<size_t>(i)];
  }
  const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
  rep.constant = coef(0);
  rep.c1 = coef(1);
  rep.c2 = coef(2);
  rep.max_residual = (basis * coef - rhs).cwiseAbs().maxCoeff();

  switch (q) {
    case AsymQuantity::TrPi1:
      rep.target_constant = 1.0;
      rep.target_c1 = -5.5;
      rep.target_c2 = -6.0;
      break;
    case AsymQuantity::TrSigmaSqrt:
      rep.target_constant = 1.0;
      break;
    case AsymQuantity::RecycleBound:
      rep.target_constant = 1.0;
      rep.target_c1 = -2.75;
      break;
  }
  return rep;
}

}  // namespace portsim::schur

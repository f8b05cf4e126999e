// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace portsim::schur {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;

/// Per-spin data for the closed-form sums. Spins are stored doubled so that
/// the half-integer values occurring for even N stay exact.
struct SpinRow {
  int twice_s = 0;
  BigInt degeneracy;   // g_s(N-1), a positive integer
  BigInt block_dim;    // d_s = (2s+1) g_s(N-1)
  BigRat lambda_plus;  // 2^{-N} (N/2 + s + 3/2)
  BigRat lambda_minus; // 2^{-N} (N/2 - s + 1/2)
};

struct SpinBlockSpectrum {
  int ports = 0;
  std::vector<SpinRow> rows;  // s = s_m .. (N-1)/2, ascending
};

SpinBlockSpectrum spin_block_spectrum(int ports);

/// Exact rational value of the finite spin sum for Tr Pi_1, evaluated in
/// arbitrary-precision rational arithmetic (both parities of N).
BigRat trace_pi1_exact_sum(int ports);

/// Tr(sigma^(1) sqrt(Pi_1)) evaluated per spin block. Each block contributes a
/// rank-one piece, so the trace is (2^{N-1})^{-3/2} sum_s d_s a_s^2 / sqrt(b_s)
/// with a_s, b_s the inverse-sqrt and inverse first moments of rho's eigenvalue
/// pair. Precision is validated by re-evaluating with doubled mantissa digits.
HighFloat trace_sigma_sqrtpi1_sum(int ports);

/// (N/4) sqrt(Tr Pi_1 / 2^{N-1}) Tr(sigma^(1) sqrt(Pi_1)).
HighFloat recycle_fidelity_bound_hp(int ports);
double recycle_fidelity_bound(int ports);

/// max(0, 1 - 11k/(2N)).
double accumulated_error_bound(int ports, int rounds);

enum class AsymQuantity { TrPi1, TrSigmaSqrt, RecycleBound };

std::string asym_quantity_name(AsymQuantity q);

/// Least-squares fit of the normalized quantity against a0 + a1/N + a2/N^2.
struct AsymptoticReport {
  std::string quantity;
  std::vector<int> grid;
  std::vector<double> values;
  double constant = 0.0, c1 = 0.0, c2 = 0.0;
  std::optional<double> target_constant, target_c1, target_c2;
  double max_residual = 0.0;
};

AsymptoticReport asymptotic_expansion_check(AsymQuantity q, const std::vector<int>& grid);

}  // namespace portsim::schur

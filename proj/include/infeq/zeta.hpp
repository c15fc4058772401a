#pragma once

#include <cstddef>

#include "infeq/scalar.hpp"

namespace infeq {

inline constexpr int kMaxCorrections = 6;

struct SeriesOptions {
  /// Arguments must satisfy Re(u) >= 1 + delta.
  double delta = 1e-3;
  /// Cap on the number of explicitly summed terms.
  std::size_t max_terms = std::size_t{1} << 26;
  /// Euler-Maclaurin correction terms added to the integral estimate of the
  /// remainder, 0..kMaxCorrections. With 0 the remainder is the bare integral.
  int corrections = 3;
};

/// Certified error of the bare integral estimate for sum_{j>N} j^(-u):
///
///   | sum_{j>N} j^(-u) - N^(1-u)/(u-1) | <= |u|/2 * (N^(-s-1) + N^(-s)/s),  s = Re(u).
///
/// Each term differs from the integral over [j-1, j] by at most |u|/2 (j-1)^(-s-1).
double integral_estimate_error(Complex u, double n);

/// Certified error of the estimate of sum_{j>N} j^(-u) with m corrections.
/// For m >= 1, with a = N + 1 and (u)_k the rising factorial,
///
///   estimate = a^(1-u)/(u-1) + a^(-u)/2 + sum_{k=1}^m B_2k/(2k)! (u)_{2k-1} a^(-u-2k+1)
///   error   <= |B_2m|/(2m)! |(u)_2m| a^(-s-2m+1) / (s+2m-1).
double tail_estimate_error(Complex u, double n, int corrections);

/// Number of explicit terms sum_{j=start}^{N} needed before the remainder
/// bound drops to tol. Returns +inf if not reachable below 2^62 terms.
double required_terms(Complex u, std::size_t start, double tol, int corrections = SeriesOptions{}.corrections);

/// sum_{j >= start} j^(-u) as a partial sum plus an estimate of the
/// remainder, with error_bound <= tol.
/// Throws ConvergenceTooSlow (detail = required terms) when Re(u) < 1 + delta
/// or the term cap would be exceeded.
BoundedValue power_tail_sum(Complex u, std::size_t start, double tol,
                            const SeriesOptions& options = {});

/// Riemann zeta for Re(s) >= 1 + delta.
BoundedValue zeta(Complex s, double tol, const SeriesOptions& options = {});

}  // namespace infeq

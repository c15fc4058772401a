#include "infeq/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "infeq/error.hpp"
#include "summation.hpp"

namespace infeq {

namespace {

constexpr double kFirstBlock = 64.0;
constexpr double kTermLimit = 4.611686018427387904e18;  // 2^62

// B_2k / (2k)!, k = 1..6
constexpr std::array<double, kMaxCorrections> kBernoulli = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
};

void check_corrections(int m) {
  if (m < 0 || m > kMaxCorrections) {
    throw Error(ErrorKind::InvalidInput, "correction count outside 0.." + std::to_string(kMaxCorrections));
  }
}

Complex power(double base, Complex exponent) { return std::exp(exponent * std::log(base)); }

// Estimate of sum_{j>n} j^(-u).
Complex tail_estimate(Complex u, double n, int m) {
  if (m == 0) return power(n, 1.0 - u) / (u - 1.0);
  const double a = n + 1.0;
  Complex out = power(a, 1.0 - u) / (u - 1.0) + 0.5 * power(a, -u);
  Complex rising = u;  // (u)_{2k-1}
  for (int k = 1; k <= m; ++k) {
    out += kBernoulli[static_cast<std::size_t>(k - 1)] * rising * power(a, -u - static_cast<double>(2 * k - 1));
    rising *= (u + static_cast<double>(2 * k - 1)) * (u + static_cast<double>(2 * k));
  }
  return out;
}

}  // namespace

double integral_estimate_error(Complex u, double n) {
  const double sigma = u.real();
  return 0.5 * std::abs(u) * (std::pow(n, -sigma - 1.0) + std::pow(n, -sigma) / sigma);
}

double tail_estimate_error(Complex u, double n, int corrections) {
  check_corrections(corrections);
  if (corrections == 0) return integral_estimate_error(u, n);
  const double a = n + 1.0;
  const double sigma = u.real();
  const int order = 2 * corrections;
  double rising = 1.0;
  for (int i = 0; i < order; ++i) rising *= std::abs(u + static_cast<double>(i));
  const double bernoulli = std::abs(kBernoulli[static_cast<std::size_t>(corrections - 1)]);
  return bernoulli * rising * std::pow(a, -sigma - order + 1.0) / (sigma + order - 1.0);
}

double required_terms(Complex u, std::size_t start, double tol, int corrections) {
  const double offset = static_cast<double>(start) - 1.0;
  for (double terms = kFirstBlock; terms <= kTermLimit; terms *= 2.0) {
    if (tail_estimate_error(u, offset + terms, corrections) <= tol) return terms;
  }
  return kInfinity;
}

BoundedValue power_tail_sum(Complex u, std::size_t start, double tol,
                            const SeriesOptions& options) {
  if (start < 1) throw Error(ErrorKind::InvalidInput, "series start index must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  check_corrections(options.corrections);

  if (u.real() < 1.0 + options.delta) {
    std::ostringstream msg;
    msg << "Re(u) = " << u.real() << " is within " << options.delta
        << " of the abscissa of convergence";
    const double needed = u.real() > 1.0 ? required_terms(u, start, tol, options.corrections) : kInfinity;
    throw Error(ErrorKind::ConvergenceTooSlow, msg.str(), needed);
  }

  const double terms = required_terms(u, start, tol, options.corrections);
  if (terms > static_cast<double>(options.max_terms)) {
    std::ostringstream msg;
    msg << "remainder bound for Re(u) = " << u.real() << " needs " << terms
        << " terms, cap is " << options.max_terms;
    throw Error(ErrorKind::ConvergenceTooSlow, msg.str(), terms);
  }

  const auto first = static_cast<double>(start);
  const double last = first - 1.0 + terms;

  // Smallest terms first.
  detail::CompensatedComplexSum sum;
  for (double j = last; j >= first; j -= 1.0) sum.add(detail::index_power(j, u));
  sum.add(tail_estimate(u, last, options.corrections));

  const Field field = u.imag() == 0.0 ? Field::Real : Field::Complex;
  return {Scalar(sum.value(), field), tail_estimate_error(u, last, options.corrections)};
}

BoundedValue zeta(Complex s, double tol, const SeriesOptions& options) {
  return power_tail_sum(s, 1, tol, options);
}

}  // namespace infeq

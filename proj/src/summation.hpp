#pragma once

#include <cmath>

#include "infeq/scalar.hpp"

namespace infeq::detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(const Complex& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/// j^(-u) for a positive integer index j.
inline Complex index_power(double j, const Complex& u) {
  if (u.imag() == 0.0) return {std::pow(j, -u.real()), 0.0};
  const double log_j = std::log(j);
  return std::polar(std::exp(-u.real() * log_j), -u.imag() * log_j);
}

}  // namespace infeq::detail

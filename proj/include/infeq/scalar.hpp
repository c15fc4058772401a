#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace infeq {

using Complex = std::complex<double>;

/// Exponents live on the extended reals; infinity stands for the sup-norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Field { Real, Complex };

inline Field join(Field a, Field b) {
  return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

/// A real or complex number. Under the real tag the imaginary part is zero.
class Scalar {
 public:
  Scalar() = default;
  Scalar(double re) : value_(re, 0.0) {}  // NOLINT: implicit from real is intended
  Scalar(Complex value, Field field) : field_(field), value_(value) {
    if (field_ == Field::Real) value_.imag(0.0);
  }

  static Scalar real(double re) { return Scalar(re); }
  static Scalar complex(double re, double im) { return {Complex(re, im), Field::Complex}; }
  /// Complex tag only when the imaginary part is nonzero.
  static Scalar infer(Complex value) {
    return {value, value.imag() != 0.0 ? Field::Complex : Field::Real};
  }

  Field field() const { return field_; }
  const Complex& value() const { return value_; }
  double re() const { return value_.real(); }
  double im() const { return value_.imag(); }
  double abs() const { return std::abs(value_); }
  bool is_zero() const { return value_ == Complex(0.0, 0.0); }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return {a.value_ + b.value_, join(a.field_, b.field_)};
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return {a.value_ - b.value_, join(a.field_, b.field_)};
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return {a.value_ * b.value_, join(a.field_, b.field_)};
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return {a.value_ / b.value_, join(a.field_, b.field_)};
  }
  Scalar conj() const { return {std::conj(value_), field_}; }

 private:
  Field field_ = Field::Real;
  Complex value_{0.0, 0.0};
};

/// An estimate together with a guaranteed bound on |true - estimate|.
///
/// The guarantee covers truncation of infinite sums assuming exact arithmetic
/// on the partial sums. Floating-point roundoff is not part of it; at the
/// problem sizes this library targets it is several orders of magnitude below
/// the tolerances callers ask for.
struct BoundedValue {
  Scalar estimate;
  double error_bound = 0.0;

  double lower() const { return estimate.re() - error_bound; }
  double upper() const { return estimate.re() + error_bound; }
  /// Upper bound on |true value|.
  double magnitude_bound() const { return estimate.abs() + error_bound; }
};

}  // namespace infeq

#pragma once

#include "infeq/scalar.hpp"

namespace infeq {

/// A Hölder conjugate pair (p, q). Only p is stored; q is derived from it, so
/// the two can never drift apart. {1, inf} and {inf, 1} are both allowed.
class ConjugatePair {
 public:
  double p() const { return p_; }
  double q() const;

  /// The pair with the roles of p and q exchanged.
  ConjugatePair swapped() const;

  friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;

 private:
  friend ConjugatePair make_conjugate(double p);
  explicit ConjugatePair(double p) : p_(p) {}
  double p_;
};

/// Throws InvalidExponent for p < 1 or NaN.
ConjugatePair make_conjugate(double p);

/// Builds the pair whose second exponent is q.
ConjugatePair conjugate_from_q(double q);

/// The conjugate exponent of p, with 1 <-> inf.
double conjugate_exponent(double p);

}  // namespace infeq

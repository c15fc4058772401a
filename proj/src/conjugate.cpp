#include "infeq/conjugate.hpp"

#include <cmath>
#include <string>

#include "infeq/error.hpp"

namespace infeq {

double conjugate_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorKind::InvalidExponent, "exponent must be >= 1, got " + std::to_string(p));
  }
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

ConjugatePair make_conjugate(double p) {
  conjugate_exponent(p);
  return ConjugatePair(p);
}

ConjugatePair conjugate_from_q(double q) { return make_conjugate(conjugate_exponent(q)); }

double ConjugatePair::q() const { return conjugate_exponent(p_); }

ConjugatePair ConjugatePair::swapped() const { return make_conjugate(q()); }

}  // namespace infeq

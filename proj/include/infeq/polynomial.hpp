#pragma once

#include <cstddef>
#include <vector>

#include "infeq/scalar.hpp"
#include "infeq/sequence.hpp"

namespace infeq {

/// (d_1, ..., d_k), every entry >= 1.
struct DegreeTuple {
  std::vector<unsigned> entries;

  unsigned sum() const;
  friend bool operator==(const DegreeTuple&, const DegreeTuple&) = default;
};

/// All k-tuples of positive integers with sum <= D, in lexicographic order.
/// There are binomial(D, k) of them. Throws InvalidArity unless 1 <= k <= D.
std::vector<DegreeTuple> enumerate_degree_tuples(unsigned D, unsigned k);

/// A polynomial of degree at most D in infinitely many variables whose
/// coefficients factor through one sequence per degree:
///
///   P(x) = sum_k sum_{(d_1..d_k)} sum_{(j_1..j_k)} prod_i a_{d_i, j_i} x_{j_i}^{d_i}
///
/// Only the sequences a_1..a_D are stored.
class MultiplicativePolynomial {
 public:
  /// Missing trailing coefficients are zero. Throws InvalidInput for D = 0 or
  /// more than D sequences, InvalidExponent unless D < q <= inf.
  MultiplicativePolynomial(unsigned D, double q, std::vector<SeqRep> coefficients);

  unsigned degree() const { return degree_; }
  double q() const { return q_; }
  /// a_d for 1 <= d <= D.
  const SeqRep& coefficient(unsigned d) const;
  /// The space a_d must live in: q / (q - d), or 1 when q = inf.
  double coefficient_exponent(unsigned d) const;
  Field field() const;

 private:
  unsigned degree_;
  double q_;
  std::vector<SeqRep> coefficients_;
};

/// P(x) through the product form sum_k sum_Delta prod_i (a_{d_i}, x^{d_i}).
/// x may be finitely supported, or a single (possibly scaled and shifted)
/// power law whose powers stay closed form; anything else is
/// UnsupportedRepresentation. Throws NotInSpace or ToleranceNotMet.
BoundedValue eval_product_form(const MultiplicativePolynomial& P, const SeqRep& x, double tol,
                               const SeriesOptions& options = {});

inline constexpr std::size_t kBruteforceCap = 10'000'000;

/// P(x) monomial by monomial over the support of a finitely supported x,
/// with repeated monomials summed separately. Throws UnsupportedRepresentation
/// for x without finite support, TooLarge when sum_k |D_k| m^k exceeds `cap`.
Scalar eval_bruteforce(const MultiplicativePolynomial& P, const SeqRep& x,
                       std::size_t cap = kBruteforceCap);

struct CoefficientMembership {
  unsigned degree;
  double exponent;
  bool member;
  /// Upper bound on the norm of a_d in l^exponent; infinite when refuted or
  /// when the norm could not be certified.
  double norm_bound;
};

struct MembershipReport {
  std::vector<CoefficientMembership> coefficients;
  bool all_members() const;
};

MembershipReport membership_check(const MultiplicativePolynomial& P, double tol = 1e-8,
                                  const SeriesOptions& options = {});

}  // namespace infeq

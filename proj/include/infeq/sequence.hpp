#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "infeq/conjugate.hpp"
#include "infeq/scalar.hpp"
#include "infeq/zeta.hpp"

namespace infeq {

/// Nesting limit for stored sequence expressions. Deeper expressions are
/// flattened into a combination of atoms and tail-restricted atoms.
inline constexpr int kMaxSequenceDepth = 4;

struct SeqTerm;

/// An infinite sequence (a_j), j >= 1, in closed form.
///
///   Sparse       finitely many nonzero entries, sorted by index
///   PowerLaw     a_j = j^(-s) for complex s
///   Tail         zero before `start`, the base sequence from `start` on
///   Combination  finite linear combination of sequences
///
/// Values are immutable and cheap to copy.
class SeqRep {
 public:
  enum class Kind { Sparse, PowerLaw, Tail, Combination };

  struct Entry {
    std::size_t index;
    Scalar value;
  };

  /// The zero sequence.
  SeqRep();

  /// Sorts by index and drops zero values. Throws InvalidInput on index 0 or
  /// a repeated index.
  static SeqRep sparse(std::vector<Entry> entries);
  static SeqRep power_law(Complex exponent);
  static SeqRep tail(SeqRep base, std::size_t start);
  static SeqRep combination(std::vector<SeqTerm> terms);

  /// e_j.
  static SeqRep unit(std::size_t index);

  Kind kind() const;
  std::span<const Entry> entries() const;
  Complex exponent() const;
  const SeqRep& base() const;
  std::size_t start() const;
  std::span<const SeqTerm> terms() const;

  /// a_j for j >= 1.
  Scalar operator[](std::size_t j) const;

  Field field() const;
  int depth() const;

  /// Last index that may hold a nonzero entry; empty if the support is infinite.
  std::optional<std::size_t> support_end() const;

 private:
  struct Node;
  explicit SeqRep(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct SeqTerm {
  Scalar coefficient;
  SeqRep sequence;
};

/// Whether membership of `a` in l^p can be certified. PowerLaw with exponent s
/// is in l^p iff Re(s) p > 1 (p finite) or Re(s) >= 0 (p = inf).
bool in_lp(const SeqRep& a, double p);

/// Certified l^p norm, error_bound <= tol. Finitely supported inputs are exact.
/// Throws NotInSpace or ToleranceNotMet.
BoundedValue lp_norm(const SeqRep& a, double p, double tol, const SeriesOptions& options = {});

/// Upper bound on (sum_{j>N} |a_j|^p)^(1/p), or sup_{j>N} |a_j| for p = inf.
/// Exact for finitely supported sequences. Throws NotInSpace.
double tail_norm_bound(const SeqRep& a, double p, std::size_t n);

/// The bilinear pairing sum_j a_j x_j (no conjugation), error_bound <= tol.
/// Power-law against power-law parts are summed in closed form through the
/// zeta evaluator; everything touching a finite support is an exact finite sum.
/// Throws NotInSpace or ToleranceNotMet.
BoundedValue holder_pairing(const SeqRep& a, const SeqRep& x, ConjugatePair pair, double tol,
                            const SeriesOptions& options = {});

/// The same pairing computed by brute truncation: partial sums up to N with
/// the remainder bounded by tail_p(a, N) * tail_q(x, N). Slow; kept as an
/// independent route for cross-checks.
BoundedValue truncated_pairing(const SeqRep& a, const SeqRep& x, ConjugatePair pair, double tol,
                               const SeriesOptions& options = {});

/// (x_j^d). Only finitely supported x. Throws UnsupportedRepresentation.
SeqRep power_coordinates(const SeqRep& x, unsigned d);

/// (conj(a_j)).
SeqRep conjugate(const SeqRep& a);

/// sum_i coefficients[i] * sequences[i].
SeqRep linear_combination(std::span<const Scalar> coefficients, std::span<const SeqRep> sequences);

}  // namespace infeq

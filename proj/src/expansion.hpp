#pragma once

// Normal form used by every numerical routine on SeqRep: a finitely supported
// head plus a list of shifted power laws c * j^(-s) * [j >= start], with at
// most one atom per exponent.

#include <cstddef>
#include <map>
#include <vector>

#include "infeq/scalar.hpp"
#include "infeq/sequence.hpp"

namespace infeq::detail {

struct PowerAtom {
  Complex coefficient;
  Complex exponent;
  std::size_t start;
};

struct Expansion {
  std::map<std::size_t, Complex> head;
  std::vector<PowerAtom> powers;

  bool finite() const { return powers.empty(); }
  Complex powers_at(std::size_t j) const;
  Complex at(std::size_t j) const;
  double max_magnitude() const;
};

Expansion expand(const SeqRep& a);

/// sum_i c_i a_i, merged.
Expansion expand_combination(std::span<const Complex> coefficients,
                             std::span<const SeqRep> sequences);

bool in_lp(const Expansion& e, double p);

/// Minkowski bound on the l^p norm of the part beyond index n, using the
/// midpoint rule sum_{j>M} j^(-a) <= (M + 1/2)^(1-a) / (a - 1) for the
/// power-law atoms.
double tail_bound(const Expansion& e, double p, std::size_t n);

/// True when every coefficient is at most `threshold` in magnitude.
bool negligible(const Expansion& e, double threshold);

Expansion conjugate(const Expansion& e);

BoundedValue pair(const Expansion& a, const Expansion& x, Field field, double tol,
                  const SeriesOptions& options);

BoundedValue norm(const Expansion& e, double p, double tol, const SeriesOptions& options);

}  // namespace infeq::detail

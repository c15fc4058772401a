#pragma once

#include <cstddef>
#include <vector>

#include "infeq/solver.hpp"
#include "infeq/zeta.hpp"

namespace infeq {

/// The triangular system sum_{j >= i} a_j x_j = 1, i = 1..r. Every finite
/// part is solvable, but the minimum norms grow without bound.
struct HellySpec {
  SeqRep base;
  ConjugatePair pair = make_conjugate(2.0);
  std::size_t r = 1;
};

/// a_j = ratio^j for j = 1..terms and zero afterwards. With ratio 1/2 every
/// entry is an exact power of two.
SeqRep geometric_sequence(double ratio, std::size_t terms = 64);

/// Rows tail(base, i) with right-hand side 1. Throws InvalidBase when some
/// a_i, i <= r, is zero.
LinearSystem helly_system(const HellySpec& spec);

/// x = (1 / a_r) e_r, which solves the first r equations exactly.
SeqRep helly_explicit_solution(const HellySpec& spec, std::size_t r);

/// 1 / ||tail(base, r)||_p, a lower bound on the norm of any solution of the
/// first r equations, with error_bound <= tol.
BoundedValue helly_lower_bound(const HellySpec& spec, std::size_t r, double tol,
                               const SeriesOptions& options = {});

/// Interpolation sum_n x_n n^(-s_i) = b_i with x in l^2.
struct DirichletSpec {
  std::vector<Complex> points;
  std::vector<Complex> values;
};

/// Power-law rows j^(-s_i) with q = 2. Throws OutsideHalfPlane unless every
/// Re(s_i) > 1/2, InvalidInput when the two lists differ in length.
LinearSystem dirichlet_system(const DirichletSpec& spec);

}  // namespace infeq

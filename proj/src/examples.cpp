#include "infeq/examples.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infeq/error.hpp"

namespace infeq {

SeqRep geometric_sequence(double ratio, std::size_t terms) {
  std::vector<SeqRep::Entry> entries;
  double v = 1.0;
  for (std::size_t j = 1; j <= terms; ++j) {
    v *= ratio;
    entries.push_back({j, Scalar(v)});
  }
  return SeqRep::sparse(std::move(entries));
}

LinearSystem helly_system(const HellySpec& spec) {
  if (spec.r == 0) throw Error(ErrorKind::InvalidInput, "need at least one row");
  std::vector<Row> rows;
  for (std::size_t i = 1; i <= spec.r; ++i) {
    if (spec.base[i].is_zero()) {
      throw Error(ErrorKind::InvalidBase, "base vanishes at index " + std::to_string(i));
    }
    rows.push_back({SeqRep::tail(spec.base, i), Scalar(1.0)});
  }
  return LinearSystem(spec.pair, std::move(rows));
}

SeqRep helly_explicit_solution(const HellySpec& spec, std::size_t r) {
  if (r < 1 || r > spec.r) throw Error(ErrorKind::InvalidInput, "row index outside the spec");
  const Scalar a = spec.base[r];
  if (a.is_zero()) throw Error(ErrorKind::InvalidBase, "base vanishes at index " + std::to_string(r));
  return SeqRep::sparse({{r, Scalar(1.0) / a}});
}

BoundedValue helly_lower_bound(const HellySpec& spec, std::size_t r, double tol,
                               const SeriesOptions& options) {
  if (r < 1) throw Error(ErrorKind::InvalidInput, "row index starts at 1");
  const auto tail = SeqRep::tail(spec.base, r);
  double inner = tol;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const auto n = lp_norm(tail, spec.pair.p(), inner, options);
    if (n.upper() == 0.0) throw Error(ErrorKind::InvalidBase, "tail of the base is zero");
    if (n.lower() > 0.0) {
      const double lo = 1.0 / n.upper();
      const double hi = 1.0 / n.lower();
      const double half = (hi - lo) / 2.0;
      if (half <= tol) return {Scalar((lo + hi) / 2.0), half};
      inner *= std::min(0.25, 0.5 * tol / half);
    } else {
      inner *= 0.01;
    }
  }
  throw Error(ErrorKind::ToleranceNotMet, "lower bound interval did not shrink to tolerance");
}

LinearSystem dirichlet_system(const DirichletSpec& spec) {
  if (spec.points.size() != spec.values.size()) {
    throw Error(ErrorKind::InvalidInput, "points and values differ in length");
  }
  std::vector<Row> rows;
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    const Complex s = spec.points[i];
    if (!(s.real() > 0.5)) {
      throw Error(ErrorKind::OutsideHalfPlane, "point " + std::to_string(i + 1) + " has Re(s) <= 1/2");
    }
    rows.push_back({SeqRep::power_law(s), Scalar::infer(spec.values[i])});
  }
  return LinearSystem(make_conjugate(2.0), std::move(rows));
}

}  // namespace infeq

#include "infeq/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "expansion.hpp"
#include "infeq/error.hpp"
#include "summation.hpp"

namespace infeq {

namespace {

Complex integer_power(Complex v, unsigned d) {
  Complex out(1.0, 0.0);
  for (unsigned i = 0; i < d; ++i) out *= v;
  return out;
}

void extend_tuples(unsigned remaining, unsigned slots, DegreeTuple& current,
                   std::vector<DegreeTuple>& out) {
  if (slots == 0) {
    out.push_back(current);
    return;
  }
  // Every later slot needs at least 1.
  for (unsigned d = 1; d + (slots - 1) <= remaining; ++d) {
    current.entries.push_back(d);
    extend_tuples(remaining - d, slots - 1, current, out);
    current.entries.pop_back();
  }
}

// (x_j^d) in a form the pairing code can sum: finitely supported, or one
// shifted power law c^d j^(-d s).
SeqRep coordinate_power(const SeqRep& x, unsigned d) {
  if (d == 1) return x;
  const auto e = detail::expand(x);
  if (e.finite()) {
    std::vector<SeqRep::Entry> entries;
    for (const auto& [j, v] : e.head) entries.push_back({j, Scalar(integer_power(v, d), x.field())});
    return SeqRep::sparse(std::move(entries));
  }
  if (e.head.empty() && e.powers.size() == 1) {
    const auto& atom = e.powers[0];
    const auto base = SeqRep::tail(SeqRep::power_law(static_cast<double>(d) * atom.exponent), atom.start);
    return SeqRep::combination({{Scalar(integer_power(atom.coefficient, d), x.field()), base}});
  }
  throw Error(ErrorKind::UnsupportedRepresentation,
              "coordinate powers need a finitely supported x or a single power law");
}

}  // namespace

unsigned DegreeTuple::sum() const {
  unsigned s = 0;
  for (unsigned d : entries) s += d;
  return s;
}

std::vector<DegreeTuple> enumerate_degree_tuples(unsigned D, unsigned k) {
  if (k < 1 || k > D) {
    throw Error(ErrorKind::InvalidArity,
                "tuple length " + std::to_string(k) + " outside 1.." + std::to_string(D));
  }
  std::vector<DegreeTuple> out;
  DegreeTuple current;
  extend_tuples(D, k, current, out);
  return out;
}

MultiplicativePolynomial::MultiplicativePolynomial(unsigned D, double q, std::vector<SeqRep> coefficients)
    : degree_(D), q_(q), coefficients_(std::move(coefficients)) {
  if (D == 0) throw Error(ErrorKind::InvalidInput, "degree must be at least 1");
  if (coefficients_.size() > D) {
    throw Error(ErrorKind::InvalidInput, "more coefficient sequences than the degree");
  }
  if (std::isnan(q) || !(q > static_cast<double>(D))) {
    throw Error(ErrorKind::InvalidExponent, "need D < q <= inf");
  }
  coefficients_.resize(D);
}

const SeqRep& MultiplicativePolynomial::coefficient(unsigned d) const {
  if (d < 1 || d > degree_) throw Error(ErrorKind::InvalidArity, "degree index out of range");
  return coefficients_[d - 1];
}

double MultiplicativePolynomial::coefficient_exponent(unsigned d) const {
  if (std::isinf(q_)) return 1.0;
  return q_ / (q_ - static_cast<double>(d));
}

Field MultiplicativePolynomial::field() const {
  Field f = Field::Real;
  for (const auto& a : coefficients_) f = join(f, a.field());
  return f;
}

BoundedValue eval_product_form(const MultiplicativePolynomial& P, const SeqRep& x, double tol,
                               const SeriesOptions& options) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  if (!in_lp(x, P.q())) throw Error(ErrorKind::NotInSpace, "x is not certifiably in l^q");
  const unsigned D = P.degree();

  std::vector<SeqRep> powers(D + 1);
  for (unsigned d = 1; d <= D; ++d) powers[d] = coordinate_power(x, d);
  auto factor = [&](unsigned d, double t) {
    return holder_pairing(P.coefficient(d), powers[d], make_conjugate(P.coefficient_exponent(d)), t,
                          options);
  };

  std::vector<DegreeTuple> tuples;
  for (unsigned k = 1; k <= D; ++k) {
    auto level = enumerate_degree_tuples(D, k);
    tuples.insert(tuples.end(), level.begin(), level.end());
  }
  const double per_term = tol / static_cast<double>(tuples.size());

  std::vector<BoundedValue> c(D + 1);
  for (unsigned d = 1; d <= D; ++d) c[d] = factor(d, tol);

  // Pilot bounds dominate |c_d| and every later estimate of it.
  std::vector<double> pilot(D + 1);
  for (unsigned d = 1; d <= D; ++d) pilot[d] = c[d].estimate.abs() + 3.0 * c[d].error_bound;
  std::vector<double> required(D + 1, kInfinity);
  for (const auto& t : tuples) {
    const auto k = static_cast<double>(t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      double others = 1.0;
      for (std::size_t l = 0; l < t.entries.size(); ++l) {
        if (l != i) others *= pilot[t.entries[l]];
      }
      const unsigned d = t.entries[i];
      if (others > 0.0) required[d] = std::min(required[d], per_term / (k * others));
    }
  }
  for (unsigned d = 1; d <= D; ++d) {
    if (c[d].error_bound > required[d]) c[d] = factor(d, required[d]);
  }

  std::vector<double> bound(D + 1);
  for (unsigned d = 1; d <= D; ++d) bound[d] = c[d].estimate.abs() + c[d].error_bound;
  detail::CompensatedComplexSum sum;
  double error = 0.0;
  for (const auto& t : tuples) {
    Complex product(1.0, 0.0);
    for (unsigned d : t.entries) product *= c[d].estimate.value();
    sum.add(product);
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      double others = c[t.entries[i]].error_bound;
      if (others == 0.0) continue;
      for (std::size_t l = 0; l < t.entries.size(); ++l) {
        if (l != i) others *= bound[t.entries[l]];
      }
      error += others;
    }
  }
  return {Scalar(sum.value(), join(P.field(), x.field())), error};
}

Scalar eval_bruteforce(const MultiplicativePolynomial& P, const SeqRep& x, std::size_t cap) {
  const auto e = detail::expand(x);
  if (!e.finite()) {
    throw Error(ErrorKind::UnsupportedRepresentation, "brute-force evaluation needs a finite support");
  }
  const unsigned D = P.degree();
  std::vector<std::size_t> support;
  std::vector<Complex> xs;
  for (const auto& [j, v] : e.head) {
    support.push_back(j);
    xs.push_back(v);
  }
  const std::size_t m = support.size();

  std::vector<std::vector<DegreeTuple>> levels(D + 1);
  double work = 0.0;
  for (unsigned k = 1; k <= D; ++k) {
    levels[k] = enumerate_degree_tuples(D, k);
    work += static_cast<double>(levels[k].size()) * std::pow(static_cast<double>(m), k);
  }
  if (work > static_cast<double>(cap)) {
    throw Error(ErrorKind::TooLarge, "monomial enumeration exceeds the cap", work);
  }

  // term[d][t] = a_{d, j_t} x_{j_t}^d
  std::vector<std::vector<Complex>> term(D + 1, std::vector<Complex>(m));
  for (unsigned d = 1; d <= D; ++d) {
    for (std::size_t t = 0; t < m; ++t) {
      term[d][t] = P.coefficient(d)[support[t]].value() * integer_power(xs[t], d);
    }
  }

  detail::CompensatedComplexSum sum;
  for (unsigned k = 1; k <= D; ++k) {
    for (const auto& delta : levels[k]) {
      std::function<void(std::size_t, Complex)> walk = [&](std::size_t i, Complex product) {
        if (i == delta.entries.size()) {
          sum.add(product);
          return;
        }
        for (std::size_t t = 0; t < m; ++t) walk(i + 1, product * term[delta.entries[i]][t]);
      };
      walk(0, Complex(1.0, 0.0));
    }
  }
  return Scalar(sum.value(), join(P.field(), x.field()));
}

bool MembershipReport::all_members() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const CoefficientMembership& c) { return c.member; });
}

MembershipReport membership_check(const MultiplicativePolynomial& P, double tol,
                                  const SeriesOptions& options) {
  MembershipReport report;
  for (unsigned d = 1; d <= P.degree(); ++d) {
    CoefficientMembership entry{d, P.coefficient_exponent(d), false, kInfinity};
    const auto& a = P.coefficient(d);
    entry.member = in_lp(a, entry.exponent);
    if (entry.member) {
      try {
        entry.norm_bound = lp_norm(a, entry.exponent, tol, options).upper();
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::ToleranceNotMet) throw;
      }
    }
    report.coefficients.push_back(entry);
  }
  return report;
}

}  // namespace infeq

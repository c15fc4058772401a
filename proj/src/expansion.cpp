#include "expansion.hpp"

#include <algorithm>
#include <cmath>

#include "infeq/error.hpp"
#include "summation.hpp"

namespace infeq::detail {

namespace {

void collect(const SeqRep& a, Complex coefficient, std::size_t start, Expansion& out) {
  switch (a.kind()) {
    case SeqRep::Kind::Sparse:
      for (const auto& e : a.entries()) {
        if (e.index >= start) out.head[e.index] += coefficient * e.value.value();
      }
      break;
    case SeqRep::Kind::PowerLaw:
      out.powers.push_back({coefficient, a.exponent(), start});
      break;
    case SeqRep::Kind::Tail:
      collect(a.base(), coefficient, std::max(start, a.start()), out);
      break;
    case SeqRep::Kind::Combination:
      for (const auto& t : a.terms()) {
        collect(t.sequence, coefficient * t.coefficient.value(), start, out);
      }
      break;
  }
}

// One atom per exponent: atoms with an earlier start are split into head
// entries up to the latest start of their group.
void merge(Expansion& e) {
  std::vector<PowerAtom> merged;
  std::vector<bool> used(e.powers.size(), false);
  for (std::size_t i = 0; i < e.powers.size(); ++i) {
    if (used[i]) continue;
    const Complex s = e.powers[i].exponent;
    std::size_t latest = 0;
    for (std::size_t k = i; k < e.powers.size(); ++k) {
      if (e.powers[k].exponent == s) latest = std::max(latest, e.powers[k].start);
    }
    Complex total{0.0, 0.0};
    for (std::size_t k = i; k < e.powers.size(); ++k) {
      if (used[k] || e.powers[k].exponent != s) continue;
      used[k] = true;
      const auto& atom = e.powers[k];
      total += atom.coefficient;
      for (std::size_t j = atom.start; j < latest; ++j) {
        e.head[j] += atom.coefficient * index_power(static_cast<double>(j), s);
      }
    }
    if (total != Complex(0.0, 0.0)) merged.push_back({total, s, latest});
  }
  e.powers = std::move(merged);
  std::erase_if(e.head, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
}

double atom_tail_sum_bound(double alpha, double after) {
  // sum_{j > after} j^(-alpha) <= int_{after+1/2}^inf t^(-alpha) dt (convexity).
  return std::pow(after + 0.5, 1.0 - alpha) / (alpha - 1.0);
}

BoundedValue root_interval(double value, double error, double p) {
  const double lo = std::pow(std::max(value - error, 0.0), 1.0 / p);
  const double hi = std::pow(std::max(value + error, 0.0), 1.0 / p);
  return {Scalar((lo + hi) / 2.0), (hi - lo) / 2.0};
}

// Norms whose p-th power comes from a certified sum: shrink the inner
// tolerance until the p-th root lands within tol.
template <class PowerSum>
BoundedValue adaptive_root(PowerSum&& power_sum, double p, double tol) {
  double inner = tol;
  for (int attempt = 0; attempt < 12; ++attempt) {
    BoundedValue v;
    try {
      v = power_sum(inner);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::ConvergenceTooSlow) {
        throw Error(ErrorKind::ToleranceNotMet, err.what(), err.detail());
      }
      throw;
    }
    const auto result = root_interval(v.estimate.re(), v.error_bound, p);
    if (result.error_bound <= tol) return result;
    const double slope_target = 0.5 * tol * p * std::pow(std::max(v.estimate.re(), 1e-300), 1.0 - 1.0 / p);
    inner = std::min(inner / 4.0, slope_target);
  }
  throw Error(ErrorKind::ToleranceNotMet, "norm interval did not shrink to tolerance");
}

BoundedValue exact_norm(const Expansion& e, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& [j, v] : e.head) m = std::max(m, std::abs(v));
    return {Scalar(m), 0.0};
  }
  CompensatedSum s;
  for (const auto& [j, v] : e.head) s.add(std::pow(std::abs(v), p));
  return {Scalar(std::pow(s.value(), 1.0 / p)), 0.0};
}

BoundedValue sup_norm_scan(const Expansion& e, double tol, const SeriesOptions& options) {
  double best = 0.0;
  std::size_t done = 0;
  for (std::size_t n = 64; n <= options.max_terms; n *= 2) {
    for (std::size_t j = done + 1; j <= n; ++j) best = std::max(best, std::abs(e.at(j)));
    done = n;
    const double beyond = tail_bound(e, kInfinity, n);
    if (beyond <= best) return {Scalar(best), 0.0};
    if ((beyond - best) / 2.0 <= tol) return {Scalar((best + beyond) / 2.0), (beyond - best) / 2.0};
  }
  throw Error(ErrorKind::ToleranceNotMet, "sup norm scan did not reach tolerance");
}

BoundedValue truncated_norm(const Expansion& e, double p, double tol,
                            const SeriesOptions& options) {
  CompensatedSum s;
  std::size_t done = 0;
  for (std::size_t n = 64; n <= options.max_terms; n *= 2) {
    for (std::size_t j = done + 1; j <= n; ++j) s.add(std::pow(std::abs(e.at(j)), p));
    done = n;
    const double rest = std::pow(tail_bound(e, p, n), p);
    const double lo = std::pow(s.value(), 1.0 / p);
    const double hi = std::pow(s.value() + rest, 1.0 / p);
    if ((hi - lo) / 2.0 <= tol) return {Scalar((lo + hi) / 2.0), (hi - lo) / 2.0};
  }
  throw Error(ErrorKind::ToleranceNotMet, "truncated norm did not reach tolerance");
}

}  // namespace

Complex Expansion::powers_at(std::size_t j) const {
  Complex sum{0.0, 0.0};
  const auto x = static_cast<double>(j);
  for (const auto& atom : powers) {
    if (j >= atom.start) sum += atom.coefficient * index_power(x, atom.exponent);
  }
  return sum;
}

Complex Expansion::at(std::size_t j) const {
  auto it = head.find(j);
  const Complex h = it == head.end() ? Complex(0.0, 0.0) : it->second;
  return h + powers_at(j);
}

double Expansion::max_magnitude() const {
  double m = 0.0;
  for (const auto& [j, v] : head) m = std::max(m, std::abs(v));
  for (const auto& atom : powers) m = std::max(m, std::abs(atom.coefficient));
  return m;
}

Expansion expand(const SeqRep& a) {
  Expansion e;
  collect(a, Complex(1.0, 0.0), 1, e);
  merge(e);
  return e;
}

Expansion expand_combination(std::span<const Complex> coefficients,
                             std::span<const SeqRep> sequences) {
  Expansion e;
  for (std::size_t i = 0; i < sequences.size(); ++i) collect(sequences[i], coefficients[i], 1, e);
  merge(e);
  return e;
}

bool in_lp(const Expansion& e, double p) {
  for (const auto& atom : e.powers) {
    const double sigma = atom.exponent.real();
    if (std::isinf(p) ? sigma < 0.0 : !(sigma * p > 1.0)) return false;
  }
  return true;
}

double tail_bound(const Expansion& e, double p, std::size_t n) {
  const bool sup = std::isinf(p);
  double head_part = 0.0;
  for (auto it = e.head.upper_bound(n); it != e.head.end(); ++it) {
    const double m = std::abs(it->second);
    head_part = sup ? std::max(head_part, m) : head_part + std::pow(m, p);
  }
  double total = sup ? head_part : std::pow(head_part, 1.0 / p);
  for (const auto& atom : e.powers) {
    const double after = static_cast<double>(std::max(n, atom.start - 1));
    const double sigma = atom.exponent.real();
    double piece = 0.0;
    if (sup) {
      piece = std::pow(after + 1.0, -sigma);
    } else {
      const double alpha = sigma * p;
      if (!(alpha > 1.0)) return kInfinity;
      piece = std::pow(atom_tail_sum_bound(alpha, after), 1.0 / p);
    }
    total += std::abs(atom.coefficient) * piece;
  }
  return total;
}

bool negligible(const Expansion& e, double threshold) {
  return e.max_magnitude() <= threshold;
}

Expansion conjugate(const Expansion& e) {
  Expansion out;
  for (const auto& [j, v] : e.head) out.head[j] = std::conj(v);
  for (const auto& atom : e.powers) {
    out.powers.push_back({std::conj(atom.coefficient), std::conj(atom.exponent), atom.start});
  }
  return out;
}

BoundedValue pair(const Expansion& a, const Expansion& x, Field field, double tol,
                  const SeriesOptions& options) {
  CompensatedComplexSum sum;
  for (const auto& [j, v] : a.head) sum.add(v * x.at(j));
  for (const auto& [j, v] : x.head) sum.add(v * a.powers_at(j));

  std::size_t weighted = 0;
  for (const auto& pa : a.powers) {
    for (const auto& px : x.powers) {
      if (pa.coefficient * px.coefficient != Complex(0.0, 0.0)) ++weighted;
    }
  }

  double error = 0.0;
  for (const auto& pa : a.powers) {
    for (const auto& px : x.powers) {
      const Complex w = pa.coefficient * px.coefficient;
      if (w == Complex(0.0, 0.0)) continue;
      const double share = tol / (static_cast<double>(weighted) * std::abs(w));
      BoundedValue z;
      try {
        z = power_tail_sum(pa.exponent + px.exponent, std::max(pa.start, px.start), share, options);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::ConvergenceTooSlow) {
          throw Error(ErrorKind::ToleranceNotMet, err.what(), err.detail());
        }
        throw;
      }
      sum.add(w * z.estimate.value());
      error += std::abs(w) * z.error_bound;
    }
  }
  return {Scalar(sum.value(), field), error};
}

BoundedValue norm(const Expansion& e, double p, double tol, const SeriesOptions& options) {
  if (e.finite()) return exact_norm(e, p);
  if (std::isinf(p)) return sup_norm_scan(e, tol, options);

  // A single power-law atom whose support starts after the head.
  if (e.powers.size() == 1 && (e.head.empty() || e.head.rbegin()->first < e.powers[0].start)) {
    const auto& atom = e.powers[0];
    const double head_sum = std::pow(exact_norm(e, p).estimate.re(), p);
    const double scale = std::pow(std::abs(atom.coefficient), p);
    const Complex alpha(atom.exponent.real() * p, 0.0);
    return adaptive_root(
        [&](double inner) {
          const auto z = power_tail_sum(alpha, atom.start, inner / scale, options);
          return BoundedValue{Scalar(head_sum + scale * z.estimate.re()), scale * z.error_bound};
        },
        p, tol);
  }

  if (p == 2.0) {
    const auto conj = conjugate(e);
    return adaptive_root(
        [&](double inner) {
          const auto v = pair(e, conj, Field::Real, inner, options);
          return BoundedValue{Scalar(v.estimate.re()), v.error_bound};
        },
        p, tol);
  }

  return truncated_norm(e, p, tol, options);
}

}  // namespace infeq::detail

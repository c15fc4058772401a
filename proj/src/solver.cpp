#include "infeq/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "expansion.hpp"
#include "infeq/error.hpp"
#include "summation.hpp"

namespace infeq {

namespace {

constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kRankThreshold = 1e-10;

void require_l2(const LinearSystem& sys) {
  if (sys.pair().q() != 2.0) throw Error(ErrorKind::UnsupportedNorm, "Gram solves need q = 2");
}

Field rows_field(const std::vector<Row>& rows) {
  Field f = Field::Real;
  for (const auto& row : rows) f = join(f, join(row.a.field(), row.b.field()));
  return f;
}

Eigen::VectorXcd rhs(const LinearSystem& sys) {
  Eigen::VectorXcd b(static_cast<Eigen::Index>(sys.size()));
  for (std::size_t i = 0; i < sys.size(); ++i) b(static_cast<Eigen::Index>(i)) = sys.rows()[i].b.value();
  return b;
}

std::vector<Scalar> to_scalars(const Eigen::VectorXcd& v, Field field) {
  std::vector<Scalar> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.emplace_back(v(i), field);
  return out;
}

struct PseudoSolve {
  Eigen::VectorXcd h;
  GramSpectrum spectrum;
  double ls_residual = 0.0;
};

// Minimum-norm least-squares solution of a Hermitian PSD system, with a
// relative eigenvalue cutoff and a few rounds of refinement.
PseudoSolve pseudo_solve(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const Eigen::MatrixXcd& V = es.eigenvectors();
  PseudoSolve out;
  out.spectrum.max_eigenvalue = lambda.size() ? lambda.maxCoeff() : 0.0;
  out.spectrum.min_eigenvalue = lambda.size() ? lambda.minCoeff() : 0.0;
  out.spectrum.threshold = kRankThreshold * std::max(out.spectrum.max_eigenvalue, 0.0);
  Eigen::VectorXd inverse = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > out.spectrum.threshold && lambda(i) > 0.0) {
      inverse(i) = 1.0 / lambda(i);
      ++out.spectrum.rank;
    }
  }
  auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return V * (inverse.asDiagonal() * (V.adjoint() * v));
  };
  out.h = apply(b);
  for (int round = 0; round < 3; ++round) out.h += apply(b - G * out.h);
  out.ls_residual = b.size() ? (G * out.h - b).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

BoundedValue sqrt_interval(double value, double error) {
  const double lo = std::sqrt(std::max(value - error, 0.0));
  const double hi = std::sqrt(std::max(value + error, 0.0));
  return {Scalar((lo + hi) / 2.0), (hi - lo) / 2.0};
}

double lq_norm(const Eigen::VectorXcd& x, double q) {
  detail::CompensatedSum s;
  for (Eigen::Index j = 0; j < x.size(); ++j) s.add(std::pow(std::abs(x(j)), q));
  return std::pow(s.value(), 1.0 / q);
}

SeqRep sparse_from(const Eigen::VectorXcd& x, Field field) {
  std::vector<SeqRep::Entry> entries;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) != Complex(0.0, 0.0)) entries.push_back({static_cast<std::size_t>(j + 1), Scalar(x(j), field)});
  }
  return SeqRep::sparse(std::move(entries));
}

Eigen::MatrixXcd truncated_rows(const LinearSystem& sys, std::size_t N) {
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(sys.size()), static_cast<Eigen::Index>(N));
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto e = detail::expand(sys.rows()[i].a);
    for (std::size_t j = 1; j <= N; ++j) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = e.at(j);
    }
  }
  return A;
}

// (b - G h) for the least-squares h of an inconsistent system; it lies in the
// null space of G, so its conjugate kills the rows but not the right-hand side.
Eigen::VectorXcd infeasibility_direction(const LinearSystem& sys, double tol, const SeriesOptions& options) {
  const auto g = gram_matrix(sys, tol, options);
  const auto b = rhs(sys);
  const auto s = pseudo_solve(g.values, b);
  return b - g.values * s.h;
}

}  // namespace

LinearSystem::LinearSystem(ConjugatePair pair, std::vector<Row> rows)
    : pair_(pair), rows_(std::move(rows)), field_(rows_field(rows_)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!in_lp(rows_[i].a, pair_.p())) {
      throw Error(ErrorKind::NotInSpace, "row " + std::to_string(i + 1) + " is not certifiably in l^p");
    }
  }
}

LinearSystem::LinearSystem(ConjugatePair pair, std::vector<Row> rows, Field field)
    : LinearSystem(pair, std::move(rows)) {
  if (field == Field::Real && field_ == Field::Complex) {
    throw Error(ErrorKind::InvalidInput, "complex data in a system tagged real");
  }
  field_ = field;
}

LinearSystem LinearSystem::prefix(std::size_t r) const {
  if (r > rows_.size()) throw Error(ErrorKind::InvalidInput, "prefix longer than the system");
  return LinearSystem(pair_, std::vector<Row>(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(r)),
                      field_);
}

std::string to_string(MinNormResult::Method method) {
  return method == MinNormResult::Method::GramExact ? "gram_exact" : "truncated_irls";
}

std::string to_string(TraceEntry::Status status) {
  switch (status) {
    case TraceEntry::Status::Ok: return "ok";
    case TraceEntry::Status::Infeasible: return "infeasible";
    case TraceEntry::Status::Error: return "error";
  }
  return "error";
}

std::string to_string(Certificate::Verdict verdict) {
  switch (verdict) {
    case Certificate::Verdict::BoundedBy: return "BoundedBy";
    case Certificate::Verdict::DivergenceEvidence: return "DivergenceEvidence";
    case Certificate::Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

GramMatrix gram_matrix(const LinearSystem& sys, double tol, const SeriesOptions& options) {
  require_l2(sys);
  const auto r = static_cast<Eigen::Index>(sys.size());
  std::vector<detail::Expansion> rows;
  std::vector<detail::Expansion> conj_rows;
  for (const auto& row : sys.rows()) {
    rows.push_back(detail::expand(row.a));
    conj_rows.push_back(detail::conjugate(rows.back()));
  }
  GramMatrix g{Eigen::MatrixXcd::Zero(r, r), Eigen::MatrixXd::Zero(r, r)};
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index k = i; k < r; ++k) {
      const auto v = detail::pair(rows[static_cast<std::size_t>(i)], conj_rows[static_cast<std::size_t>(k)],
                                  Field::Complex, tol, options);
      Complex value = v.estimate.value();
      if (i == k) value.imag(0.0);
      g.values(i, k) = value;
      g.values(k, i) = std::conj(value);
      g.errors(i, k) = g.errors(k, i) = v.error_bound;
    }
  }
  return g;
}

MinNormResult min_norm_l2(const LinearSystem& sys, double tol, const SeriesOptions& options) {
  require_l2(sys);
  if (sys.size() == 0) throw Error(ErrorKind::InvalidInput, "system has no rows");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  const auto b = rhs(sys);
  const auto r = static_cast<Eigen::Index>(sys.size());

  double gram_tol = tol / (4.0 * static_cast<double>(r));
  for (int attempt = 0; attempt < 10; ++attempt) {
    const auto g = gram_matrix(sys, gram_tol, options);
    auto s = pseudo_solve(g.values, b);
    if (sys.field() == Field::Real) s.h = s.h.real().cast<Complex>();
    if (s.ls_residual > std::sqrt(tol)) {
      throw Error(ErrorKind::Infeasible, "right-hand side is not in the range of the Gram matrix",
                  s.ls_residual);
    }
    const Eigen::VectorXd magnitude = s.h.cwiseAbs();
    const Eigen::VectorXcd residual = g.values * s.h - b;
    const Eigen::VectorXd residual_error = g.errors * magnitude;
    const double quad_error = magnitude.dot(g.errors * magnitude);
    const double value = (s.h.adjoint() * g.values * s.h)(0, 0).real();
    const auto norm = sqrt_interval(value, quad_error);
    const double worst_error = residual_error.maxCoeff();

    if ((worst_error <= tol / 2.0 && norm.error_bound <= tol) || g.errors.maxCoeff() == 0.0) {
      MinNormResult out;
      out.method = MinNormResult::Method::GramExact;
      out.h = to_scalars(s.h, sys.field());
      out.norm = norm;
      out.spectrum = s.spectrum;
      std::vector<SeqTerm> terms;
      for (Eigen::Index k = 0; k < r; ++k) {
        if (s.h(k) == Complex(0.0, 0.0)) continue;
        terms.push_back({out.h[static_cast<std::size_t>(k)], conjugate(sys.rows()[static_cast<std::size_t>(k)].a)});
      }
      out.x = SeqRep::combination(std::move(terms));
      for (Eigen::Index i = 0; i < r; ++i) {
        out.residuals.push_back({Scalar(residual(i), sys.field()), residual_error(i)});
        if (out.residuals.back().magnitude_bound() > tol) {
          throw Error(ErrorKind::ToleranceNotMet, "residual of the Gram solve exceeds the tolerance",
                      out.residuals.back().magnitude_bound());
        }
      }
      return out;
    }
    double factor = 0.25;
    if (worst_error > 0.0) factor = std::min(factor, 0.5 * (tol / 2.0) / worst_error);
    if (norm.error_bound > 0.0) factor = std::min(factor, 0.5 * tol / norm.error_bound);
    gram_tol = std::min(gram_tol, g.errors.maxCoeff()) * factor;
  }
  throw Error(ErrorKind::ToleranceNotMet, "Gram entries could not be certified tightly enough");
}

BoundedValue riesz_ratio(const LinearSystem& sys, std::span<const Scalar> h, double tol,
                         const SeriesOptions& options) {
  if (h.size() != sys.size()) throw Error(ErrorKind::InvalidInput, "need one multiplier per row");
  std::vector<Complex> coefficients;
  std::vector<SeqRep> sequences;
  detail::CompensatedComplexSum numerator;
  double row_scale = 0.0;
  double rhs_scale = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& row = sys.rows()[i];
    coefficients.push_back(h[i].value());
    sequences.push_back(row.a);
    numerator.add(h[i].value() * row.b.value());
    row_scale = std::max(row_scale, h[i].abs() * detail::expand(row.a).max_magnitude());
    rhs_scale += h[i].abs() * row.b.abs();
  }
  const auto combo = detail::expand_combination(coefficients, sequences);
  const double top = std::abs(numerator.value());
  if (detail::negligible(combo, kRoundoff * row_scale)) {
    if (top > kRoundoff * rhs_scale) {
      throw Error(ErrorKind::CertifiedInfeasible,
                  "the rows combine to zero while the right-hand side does not");
    }
    throw Error(ErrorKind::UndefinedRatio, "both sides of the ratio vanish");
  }
  if (top == 0.0) return {Scalar(0.0), 0.0};

  double inner = tol;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const auto n = detail::norm(combo, sys.pair().p(), inner, options);
    if (n.lower() > 0.0) {
      const double lo = top / n.upper();
      const double hi = top / n.lower();
      const double half = (hi - lo) / 2.0;
      if (half <= tol) return {Scalar((lo + hi) / 2.0), half};
      inner *= std::min(0.25, 0.5 * tol / half);
    } else {
      inner *= 0.01;
    }
  }
  throw Error(ErrorKind::ToleranceNotMet, "ratio interval did not shrink to tolerance");
}

double riesz_sup_search(const LinearSystem& sys, int iterations, double tol, std::uint64_t seed,
                        const SeriesOptions& options) {
  const std::size_t r = sys.size();
  if (r == 0) throw Error(ErrorKind::InvalidInput, "system has no rows");
  const bool complex = sys.field() == Field::Complex;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  int used = 0;
  bool infeasible = false;
  double best = 0.0;
  std::vector<Scalar> best_h;
  auto evaluate = [&](const std::vector<Scalar>& h) {
    ++used;
    try {
      return riesz_ratio(sys, h, tol, options).lower();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CertifiedInfeasible) infeasible = true;
      if (e.kind() != ErrorKind::CertifiedInfeasible && e.kind() != ErrorKind::UndefinedRatio) throw;
      return -kInfinity;
    }
  };
  auto consider = [&](const std::vector<Scalar>& h, double value) {
    if (value > best || best_h.empty()) {
      best = std::max(best, value);
      best_h = h;
    }
  };

  auto refine = [&](std::vector<Scalar> h, double value) {
    double scale = 0.0;
    for (const auto& v : h) scale = std::max(scale, v.abs());
    double step = 0.5 * scale;
    std::vector<Complex> directions = {1.0, -1.0};
    if (complex) {
      directions.emplace_back(0.0, 1.0);
      directions.emplace_back(0.0, -1.0);
    }
    while (step > 1e-6 * scale && used < iterations && !infeasible) {
      bool improved = false;
      for (std::size_t i = 0; i < r && used < iterations && !infeasible; ++i) {
        for (const Complex& d : directions) {
          if (used >= iterations || infeasible) break;
          auto trial = h;
          trial[i] = Scalar(trial[i].value() + step * d, sys.field());
          const double v = evaluate(trial);
          if (v > value) {
            h = trial;
            value = v;
            improved = true;
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    consider(h, value);
  };

  for (std::size_t i = 0; i < r && used < iterations && !infeasible; ++i) {
    std::vector<Scalar> h(r, Scalar(0.0));
    h[i] = Scalar(1.0);
    consider(h, evaluate(h));
  }
  if (!best_h.empty() && !infeasible) refine(best_h, best);
  while (used < iterations && !infeasible) {
    std::vector<Scalar> h;
    for (std::size_t i = 0; i < r; ++i) {
      const double re = gauss(rng);
      h.push_back(complex ? Scalar::complex(re, gauss(rng)) : Scalar(re));
    }
    refine(h, evaluate(h));
  }
  return infeasible ? kInfinity : best;
}

MinNormResult min_norm_truncated_q(const LinearSystem& sys, std::size_t N, double tol, int iter_cap) {
  const double q = sys.pair().q();
  if (!(q > 1.0) || std::isinf(q)) throw Error(ErrorKind::UnsupportedNorm, "truncated solves need 1 < q < inf");
  if (N == 0) throw Error(ErrorKind::InvalidInput, "truncation length must be positive");
  if (sys.size() == 0) throw Error(ErrorKind::InvalidInput, "system has no rows");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  const auto b = rhs(sys);
  const bool real = sys.field() == Field::Real;

  struct Solution {
    Eigen::VectorXcd x;
    Eigen::VectorXcd h;
    int iterations = 0;
  };

  auto solve = [&](std::size_t n) {
    const Eigen::MatrixXcd A = truncated_rows(sys, n);
    const Eigen::MatrixXcd At = A.adjoint();
    auto start = pseudo_solve(A * At, b);
    if (start.ls_residual > std::sqrt(tol)) {
      throw Error(ErrorKind::Infeasible, "truncated rows cannot meet the right-hand side", start.ls_residual);
    }
    Solution s{At * start.h, start.h, 0};
    if (real) s.x = s.x.real().cast<Complex>();
    const double scale = s.x.cwiseAbs().maxCoeff();
    if (q == 2.0 || scale == 0.0) return s;

    // Smoothed weights (|x_j|^2 + eps^2)^((2-q)/2), eps driven to zero.
    const double damping = q > 2.0 ? 1.0 / (q - 1.0) : 1.0;
    double eps = scale;
    for (s.iterations = 1; s.iterations <= iter_cap; ++s.iterations) {
      Eigen::VectorXd w(s.x.size());
      for (Eigen::Index j = 0; j < s.x.size(); ++j) {
        w(j) = std::pow(std::norm(s.x(j)) + eps * eps, (2.0 - q) / 2.0);
      }
      const Eigen::MatrixXcd WAt = w.asDiagonal() * At;
      const auto step = pseudo_solve(A * WAt, b);
      Eigen::VectorXcd next = WAt * step.h;
      if (real) next = next.real().cast<Complex>();
      next = (1.0 - damping) * s.x + damping * next;
      const double change = (next - s.x).cwiseAbs().maxCoeff() / scale;
      s.x = next;
      s.h = step.h;
      if (change < 1e-2 * eps / scale || change < 1e-15) {
        if (eps / scale < 1e-12 && change < 1e-12) {
          // Project back onto the constraints to clear accumulated drift.
          const auto fix = pseudo_solve(A * At, b - A * s.x);
          s.x += At * fix.h;
          if (real) s.x = s.x.real().cast<Complex>();
          return s;
        }
        eps /= 10.0;
      }
    }
    throw Error(ErrorKind::NotConverged, "reweighting did not settle within the iteration cap");
  };

  const auto at_n = solve(N);
  const auto at_2n = solve(2 * N);

  MinNormResult out;
  out.method = MinNormResult::Method::TruncatedIrls;
  out.h = to_scalars(at_n.h, sys.field());
  out.x = sparse_from(at_n.x, sys.field());
  out.norm = {Scalar(lq_norm(at_n.x, q)), 0.0};
  const Eigen::MatrixXcd A = truncated_rows(sys, N);
  const Eigen::VectorXcd residual = A * at_n.x - b;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    out.residuals.push_back({Scalar(residual(i), sys.field()), 0.0});
  }
  TruncationReport report;
  report.N = N;
  report.value_at_N = out.norm.estimate.re();
  report.value_at_2N = lq_norm(at_2n.x, q);
  report.iterations = at_n.iterations;
  for (const auto& row : sys.rows()) {
    const auto end = row.a.support_end();
    if (!end || *end > N) report.surrogate = true;
  }
  out.truncation = report;
  return out;
}

NormTrace norm_trace(const LinearSystem& sys, std::size_t r_max, double tol, const SeriesOptions& options) {
  NormTrace trace;
  const std::size_t n = std::min(r_max, sys.size());
  for (std::size_t r = 1; r <= n; ++r) {
    TraceEntry entry;
    entry.r = r;
    const auto prefix = sys.prefix(r);
    try {
      const auto result = min_norm_l2(prefix, tol, options);
      entry.min_norm = result.norm;
      std::vector<Scalar> dual;
      for (const auto& h : result.h) dual.push_back(h.conj());
      try {
        entry.lower_bound = std::max(0.0, riesz_ratio(prefix, dual, tol, options).lower());
      } catch (const Error& e) {
        entry.lower_bound = e.kind() == ErrorKind::CertifiedInfeasible ? kInfinity : 0.0;
      }
    } catch (const Error& e) {
      entry.message = e.what();
      if (e.kind() == ErrorKind::Infeasible) {
        entry.status = TraceEntry::Status::Infeasible;
        try {
          const auto v = infeasibility_direction(prefix, tol, options);
          std::vector<Scalar> dual;
          for (Eigen::Index i = 0; i < v.size(); ++i) dual.emplace_back(std::conj(v(i)), prefix.field());
          entry.lower_bound = riesz_ratio(prefix, dual, tol, options).lower();
        } catch (const Error& inner) {
          if (inner.kind() == ErrorKind::CertifiedInfeasible) entry.lower_bound = kInfinity;
        }
      } else {
        entry.status = TraceEntry::Status::Error;
      }
    }
    trace.entries.push_back(std::move(entry));
  }
  return trace;
}

Certificate certify(const NormTrace& trace, double M) {
  Certificate c;
  c.M = M;
  c.r_max = trace.entries.empty() ? 0 : trace.entries.back().r;
  bool bounded = !trace.entries.empty();
  bool growth = trace.entries.size() >= 2;
  double previous = -kInfinity;
  for (const auto& e : trace.entries) {
    if (e.status != TraceEntry::Status::Ok || e.min_norm->upper() > M) bounded = false;
    double lower = e.lower_bound;
    if (e.status == TraceEntry::Status::Infeasible && std::isnan(lower)) lower = kInfinity;
    if (!std::isnan(lower) && lower > M) c.exceeding.emplace_back(e.r, lower);
    if (std::isnan(lower) || !(lower > previous)) growth = false;
    if (!std::isnan(lower)) previous = lower;
  }
  c.monotone_growth = growth;

  std::ostringstream text;
  text.precision(17);
  if (!c.exceeding.empty()) {
    c.verdict = Certificate::Verdict::DivergenceEvidence;
    text << "Certified lower bounds on the minimum solution norm exceed M = " << M << " at r =";
    for (const auto& [r, v] : c.exceeding) text << ' ' << r;
    text << ". Every solution of those finitely many equations has norm above M, so the infinite system "
            "has no solution with ||x||_q <= M.";
    if (c.monotone_growth) {
      text << " The lower bounds grow strictly along the whole trace, which is evidence (not proof) that "
              "no bound works for all finite subsets.";
    }
  } else if (bounded) {
    c.verdict = Certificate::Verdict::BoundedBy;
    text << "m_r + error <= M = " << M << " for r = 1.." << c.r_max
         << ". If every finite subset of the equations has a solution with ||x||_q <= M, the infinite "
            "system has an exact solution with ||x||_q <= M. The computed prefixes are evidence for that "
            "hypothesis, not a proof of it.";
  } else {
    c.verdict = Certificate::Verdict::Inconclusive;
    text << "The trace neither stays below M = " << M << " nor certifies a lower bound above it.";
  }
  c.text = text.str();
  return c;
}

namespace {

// Residuals of one search problem in real coordinates: complex unknowns and
// residuals are split into real and imaginary parts.
struct SearchProblem {
  std::size_t N = 0;
  bool complex = false;
  Eigen::VectorXd box;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> residual;
  std::function<std::vector<BoundedValue>(const SeqRep&, double)> certify;
  // Exact complex Jacobian when the residual is linear.
  std::optional<Eigen::MatrixXcd> linear;
};

Eigen::VectorXcd to_complex(const Eigen::VectorXd& z, bool complex) {
  const Eigen::Index n = complex ? z.size() / 2 : z.size();
  Eigen::VectorXcd x(n);
  for (Eigen::Index j = 0; j < n; ++j) x(j) = complex ? Complex(z(j), z(n + j)) : Complex(z(j), 0.0);
  return x;
}

Eigen::VectorXd to_real(const Eigen::VectorXcd& F, bool complex) {
  if (!complex) return F.real();
  Eigen::VectorXd out(2 * F.size());
  out << F.real(), F.imag();
  return out;
}

void project(Eigen::VectorXd& z, const SearchProblem& problem) {
  const auto n = static_cast<Eigen::Index>(problem.N);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = problem.box(j);
    if (!problem.complex) {
      z(j) = std::clamp(z(j), -m, m);
      continue;
    }
    const double r = std::hypot(z(j), z(n + j));
    if (r > m) {
      const double f = r > 0.0 ? m / r : 0.0;
      z(j) *= f;
      z(n + j) *= f;
    }
  }
}

Eigen::MatrixXd jacobian(const SearchProblem& problem, const Eigen::VectorXd& z, const Eigen::VectorXd& F) {
  if (problem.linear) {
    const auto& A = *problem.linear;
    if (!problem.complex) return A.real();
    const Eigen::Index r = A.rows();
    const Eigen::Index n = A.cols();
    Eigen::MatrixXd J(2 * r, 2 * n);
    J << A.real(), -A.imag(), A.imag(), A.real();
    return J;
  }
  Eigen::MatrixXd J(F.size(), z.size());
  for (Eigen::Index c = 0; c < z.size(); ++c) {
    const double h = 1e-7 * std::max(1.0, std::abs(z(c)));
    Eigen::VectorXd up = z;
    Eigen::VectorXd down = z;
    up(c) += h;
    down(c) -= h;
    J.col(c) = (to_real(problem.residual(to_complex(up, problem.complex)), problem.complex) -
                to_real(problem.residual(to_complex(down, problem.complex)), problem.complex)) /
               (2.0 * h);
  }
  return J;
}

// Projected Levenberg-Marquardt on sum_i |F_i|^2 from one start.
Eigen::VectorXd descend(const SearchProblem& problem, Eigen::VectorXd z, double eps, int iter_cap) {
  project(z, problem);
  Eigen::VectorXd F = to_real(problem.residual(to_complex(z, problem.complex)), problem.complex);
  double f = F.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < iter_cap; ++it) {
    if (F.size() == 0 || F.cwiseAbs().maxCoeff() <= eps / 4.0) break;
    const Eigen::MatrixXd J = jacobian(problem, z, F);
    const Eigen::MatrixXd H = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * F;
    const Eigen::MatrixXd damped = H + lambda * Eigen::MatrixXd::Identity(H.rows(), H.cols());
    Eigen::VectorXd trial = z - damped.ldlt().solve(g);
    project(trial, problem);
    const Eigen::VectorXd Ft = to_real(problem.residual(to_complex(trial, problem.complex)), problem.complex);
    const double ft = Ft.squaredNorm();
    if (ft < f) {
      const bool stalled = f - ft <= 1e-15 * f && (trial - z).cwiseAbs().maxCoeff() < 1e-15;
      z = trial;
      F = Ft;
      f = ft;
      lambda = std::max(lambda / 3.0, 1e-12);
      if (stalled) break;
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) break;
    }
  }
  return z;
}

Eigen::VectorXd read_box(const SeqRep& m, std::size_t N) {
  Eigen::VectorXd box(static_cast<Eigen::Index>(N));
  for (std::size_t j = 1; j <= N; ++j) {
    const Scalar v = m[j];
    if (v.im() != 0.0 || std::isnan(v.re()) || v.re() < 0.0) {
      throw Error(ErrorKind::InvalidInput, "box entries must be nonnegative reals");
    }
    box(static_cast<Eigen::Index>(j - 1)) = v.re();
  }
  return box;
}

FeasibilityResult search(const SearchProblem& problem, double eps, const FeasibilityOptions& options) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "eps must be positive");
  const auto n = static_cast<Eigen::Index>(problem.complex ? 2 * problem.N : problem.N);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  FeasibilityResult best;
  best.max_residual = kInfinity;
  for (int restart = 0; restart < std::max(options.restarts, 1); ++restart) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    if (restart > 0) {
      for (Eigen::Index c = 0; c < n; ++c) {
        z(c) = unit(rng) * problem.box(c % static_cast<Eigen::Index>(problem.N));
      }
    }
    z = descend(problem, z, eps, options.iter_cap);
    const Eigen::VectorXcd x = to_complex(z, problem.complex);
    const SeqRep witness = sparse_from(x, problem.complex ? Field::Complex : Field::Real);
    auto residuals = problem.certify(witness, eps / 4.0);
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, r.magnitude_bound());
    if (worst < best.max_residual) {
      best.x = witness;
      best.residuals = std::move(residuals);
      best.max_residual = worst;
    }
    best.restarts_used = restart + 1;
    if (worst <= eps) {
      best.found = true;
      break;
    }
  }
  return best;
}

}  // namespace

FeasibilityResult feasibility_search_boxed(const LinearSystem& sys, const SeqRep& m, double eps, std::size_t N,
                                           const FeasibilityOptions& options) {
  if (N == 0) throw Error(ErrorKind::InvalidInput, "search length must be positive");
  SearchProblem problem;
  problem.N = N;
  problem.complex = sys.field() == Field::Complex;
  problem.box = read_box(m, N);
  if (!in_lp(m, sys.pair().q())) throw Error(ErrorKind::NotInSpace, "box sequence is not in l^q");
  const Eigen::MatrixXcd A = truncated_rows(sys, N);
  const Eigen::VectorXcd b = rhs(sys);
  problem.linear = A;
  problem.residual = [A, b](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return A * x - b; };
  problem.certify = [&sys](const SeqRep& x, double tol) {
    std::vector<BoundedValue> out;
    for (const auto& row : sys.rows()) {
      const auto v = holder_pairing(row.a, x, sys.pair(), tol);
      out.push_back({v.estimate - row.b, v.error_bound});
    }
    return out;
  };
  return search(problem, eps, options);
}

FeasibilityResult feasibility_search_boxed(const PolynomialSystem& sys, const SeqRep& m, double eps,
                                           std::size_t N, const FeasibilityOptions& options) {
  if (N == 0) throw Error(ErrorKind::InvalidInput, "search length must be positive");
  SearchProblem problem;
  problem.N = N;
  problem.box = read_box(m, N);
  for (const auto& row : sys) {
    problem.complex = problem.complex || row.P.field() == Field::Complex || row.b.field() == Field::Complex;
    if (!in_lp(m, row.P.q())) throw Error(ErrorKind::NotInSpace, "box sequence is not in l^q");
  }
  const Field field = problem.complex ? Field::Complex : Field::Real;
  problem.residual = [&sys, field](const Eigen::VectorXcd& x) -> Eigen::VectorXcd {
    const SeqRep point = sparse_from(x, field);
    Eigen::VectorXcd F(static_cast<Eigen::Index>(sys.size()));
    for (std::size_t i = 0; i < sys.size(); ++i) {
      F(static_cast<Eigen::Index>(i)) =
          eval_product_form(sys[i].P, point, 1e-14).estimate.value() - sys[i].b.value();
    }
    return F;
  };
  problem.certify = [&sys](const SeqRep& x, double tol) {
    std::vector<BoundedValue> out;
    for (const auto& row : sys) {
      const auto v = eval_product_form(row.P, x, tol);
      out.push_back({v.estimate - row.b, v.error_bound});
    }
    return out;
  };
  return search(problem, eps, options);
}

}  // namespace infeq

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infeq/conjugate.hpp"
#include "infeq/polynomial.hpp"
#include "infeq/scalar.hpp"
#include "infeq/sequence.hpp"

namespace infeq {

/// One equation sum_j a_j x_j = b.
struct Row {
  SeqRep a;
  Scalar b;
};

/// Finitely many linear equations in infinitely many unknowns, with the rows
/// in l^p and solutions sought in l^q.
class LinearSystem {
 public:
  /// Field is inferred from the rows. Throws NotInSpace when a row is not
  /// certifiably in l^p.
  LinearSystem(ConjugatePair pair, std::vector<Row> rows);
  /// Throws InvalidInput when a complex row is tagged real.
  LinearSystem(ConjugatePair pair, std::vector<Row> rows, Field field);

  ConjugatePair pair() const { return pair_; }
  Field field() const { return field_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  /// The first r rows.
  LinearSystem prefix(std::size_t r) const;

 private:
  ConjugatePair pair_;
  std::vector<Row> rows_;
  Field field_;
};

/// G_ik = sum_j a_ij conj(a_kj) with per-entry error bounds.
struct GramMatrix {
  Eigen::MatrixXcd values;
  Eigen::MatrixXd errors;
};

/// Throws UnsupportedNorm unless q = 2.
GramMatrix gram_matrix(const LinearSystem& sys, double tol, const SeriesOptions& options = {});

struct GramSpectrum {
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
  /// Eigenvalues below this are treated as null directions.
  double threshold = 0.0;
  std::size_t rank = 0;
};

/// Truncated solves are reported at N and at 2N so the caller can judge how
/// far the truncation has converged.
struct TruncationReport {
  std::size_t N = 0;
  double value_at_N = 0.0;
  double value_at_2N = 0.0;
  /// Some row has entries beyond N. The value at N is still the norm of a
  /// genuine solution, but it may overestimate the infinite minimum.
  bool surrogate = false;
  int iterations = 0;
};

struct MinNormResult {
  enum class Method { GramExact, TruncatedIrls };

  std::vector<Scalar> h;
  SeqRep x;
  BoundedValue norm;
  /// (a_i, x) - b_i for the returned x.
  std::vector<BoundedValue> residuals;
  Method method = Method::GramExact;
  std::optional<GramSpectrum> spectrum;
  std::optional<TruncationReport> truncation;
};

std::string to_string(MinNormResult::Method method);

/// Minimum l^2 solution x = sum_i h_i conj(a_i) with G h = b; rank-deficient
/// consistent systems get the minimum-norm h. Residual bounds are <= tol.
/// Throws Infeasible (detail = least-squares residual) when b is not in the
/// range of G within sqrt(tol), UnsupportedNorm unless q = 2.
MinNormResult min_norm_l2(const LinearSystem& sys, double tol, const SeriesOptions& options = {});

/// |sum_i h_i b_i| / ||sum_i h_i a_i||_p, a lower bound for the norm of every
/// solution. Throws CertifiedInfeasible when the combination vanishes but the
/// right-hand side does not, UndefinedRatio when both vanish.
BoundedValue riesz_ratio(const LinearSystem& sys, std::span<const Scalar> h, double tol,
                         const SeriesOptions& options = {});

/// Largest certified lower bound from `iterations` ratio evaluations: unit
/// vectors first, then seeded random restarts, each refined by coordinate
/// search. Infinite when a certified infeasibility witness turns up.
double riesz_sup_search(const LinearSystem& sys, int iterations, double tol, std::uint64_t seed = 0,
                        const SeriesOptions& options = {});

/// Minimum l^q solution supported on 1..N by iteratively reweighted least
/// squares, 1 < q < inf. Throws NotConverged past iter_cap, Infeasible when
/// the truncated rows cannot meet b.
MinNormResult min_norm_truncated_q(const LinearSystem& sys, std::size_t N, double tol, int iter_cap = 500);

struct TraceEntry {
  enum class Status { Ok, Infeasible, Error };

  std::size_t r = 0;
  Status status = Status::Ok;
  /// Present when status is Ok.
  std::optional<BoundedValue> min_norm;
  /// Certified lower bound on the norm of any solution of the first r rows
  /// (riesz ratio at the conjugated Gram coefficients). NaN when unavailable.
  double lower_bound = std::numeric_limits<double>::quiet_NaN();
  std::string message;
};

std::string to_string(TraceEntry::Status status);

struct NormTrace {
  std::vector<TraceEntry> entries;
};

/// m_r for r = 1..r_max (capped at the number of rows). Failures are recorded
/// per entry rather than thrown.
NormTrace norm_trace(const LinearSystem& sys, std::size_t r_max, double tol,
                     const SeriesOptions& options = {});

struct Certificate {
  enum class Verdict { BoundedBy, DivergenceEvidence, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  double M = 0.0;
  std::size_t r_max = 0;
  /// (r, certified lower bound) for the entries whose lower bound exceeds M.
  std::vector<std::pair<std::size_t, double>> exceeding;
  /// Lower bounds strictly increase along the trace.
  bool monotone_growth = false;
  std::string text;
};

std::string to_string(Certificate::Verdict verdict);

Certificate certify(const NormTrace& trace, double M);

struct PolynomialRow {
  MultiplicativePolynomial P;
  Scalar b;
};

using PolynomialSystem = std::vector<PolynomialRow>;

struct FeasibilityOptions {
  int restarts = 16;
  int iter_cap = 200;
  std::uint64_t seed = 0;
};

struct FeasibilityResult {
  bool found = false;
  /// The witness when found, otherwise the best point seen.
  SeqRep x;
  std::vector<BoundedValue> residuals;
  double max_residual = 0.0;
  int restarts_used = 0;
};

/// Local search on coordinates 1..N inside the box |x_j| <= m_j for a point
/// whose residuals are all <= eps. The first start is x = 0; the rest are
/// seeded uniform points in the box. Not finding one says nothing about
/// infeasibility. Throws InvalidInput for a negative or complex box.
FeasibilityResult feasibility_search_boxed(const LinearSystem& sys, const SeqRep& m, double eps,
                                           std::size_t N, const FeasibilityOptions& options = {});
FeasibilityResult feasibility_search_boxed(const PolynomialSystem& sys, const SeqRep& m, double eps,
                                           std::size_t N, const FeasibilityOptions& options = {});

}  // namespace infeq

#include <doctest.h>

#include <cmath>

#include "infeq/error.hpp"
#include "infeq/examples.hpp"
#include "oracles.hpp"

using namespace infeq;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an infeq::Error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("helly systems") {
  const HellySpec harmonic{SeqRep::power_law(1.0), make_conjugate(2.0), 2};
  const auto sys = helly_system(harmonic);
  REQUIRE(sys.size() == 2);
  CHECK(sys.rows()[0].a[1].re() == 1.0);
  CHECK(sys.rows()[1].a[1].is_zero());
  CHECK(sys.rows()[1].a[4].re() == 0.25);
  CHECK(sys.rows()[1].b.re() == 1.0);

  CHECK(helly_system({SeqRep::power_law(1.0), make_conjugate(2.0), 1}).size() == 1);
  const auto gap = SeqRep::sparse({{1, Scalar(1.0)}, {3, Scalar(1.0)}});
  CHECK(kind_of([&] { helly_system({gap, make_conjugate(2.0), 3}); }) == ErrorKind::InvalidBase);
}

TEST_CASE("helly explicit solutions") {
  const HellySpec geometric{geometric_sequence(0.5), make_conjugate(2.0), 12};
  const auto x3 = helly_explicit_solution(geometric, 3);
  CHECK(x3[3].re() == 8.0);
  CHECK(lp_norm(x3, 2.0, 1e-12).estimate.re() == 8.0);

  const HellySpec harmonic{SeqRep::power_law(1.0), make_conjugate(2.0), 6};
  CHECK(helly_explicit_solution(harmonic, 5)[5].re() == doctest::Approx(5.0));
  CHECK(helly_explicit_solution(harmonic, 1)[1].re() == 1.0);

  // Residuals of the first r equations vanish exactly.
  const auto sys = helly_system(geometric);
  for (std::size_t r = 1; r <= 12; ++r) {
    const auto x = helly_explicit_solution(geometric, r);
    CHECK(lp_norm(x, 2.0, 1e-12).estimate.re() == std::ldexp(1.0, static_cast<int>(r)));
    for (std::size_t i = 1; i <= r; ++i) {
      const auto v = holder_pairing(sys.rows()[i - 1].a, x, sys.pair(), 1e-12);
      CHECK(v.estimate.re() == 1.0);
      CHECK(v.error_bound == 0.0);
    }
  }
}

TEST_CASE("helly lower bounds") {
  const HellySpec geometric{geometric_sequence(0.5), make_conjugate(2.0), 12};
  const auto b3 = helly_lower_bound(geometric, 3, 1e-10);
  CHECK(b3.estimate.re() == doctest::Approx(std::sqrt(48.0)).epsilon(1e-12));
  double previous = 0.0;
  for (std::size_t r = 1; r <= 12; ++r) {
    const auto b = helly_lower_bound(geometric, r, 1e-10);
    CHECK(b.estimate.re() == doctest::Approx(std::sqrt(3.0) * std::ldexp(1.0, static_cast<int>(r) - 1)).epsilon(1e-12));
    CHECK(b.estimate.re() > previous);
    previous = b.estimate.re();
  }

  const HellySpec harmonic{SeqRep::power_law(1.0), make_conjugate(2.0), 40};
  const auto first = helly_lower_bound(harmonic, 1, 1e-9);
  CHECK(std::abs(first.estimate.re() - 1.0 / std::sqrt(oracle::kZeta2)) <= first.error_bound + 1e-12);
  previous = 0.0;
  for (std::size_t r = 1; r <= 40; r += 3) {
    const auto b = helly_lower_bound(harmonic, r, 1e-9);
    CHECK(b.lower() > previous);
    previous = b.upper();
  }
  CHECK(previous > 5.0);

  const HellySpec outside{SeqRep::power_law(0.5), make_conjugate(2.0), 2};
  CHECK(kind_of([&] { helly_lower_bound(outside, 1, 1e-9); }) == ErrorKind::NotInSpace);
}

TEST_CASE("helly trace sits above the lower bound") {
  const HellySpec geometric{geometric_sequence(0.5), make_conjugate(2.0), 12};
  const auto trace = norm_trace(helly_system(geometric), 12, 1e-10);
  double previous = 0.0;
  for (const auto& e : trace.entries) {
    REQUIRE(e.status == TraceEntry::Status::Ok);
    const double bound = std::sqrt(3.0) * std::ldexp(1.0, static_cast<int>(e.r) - 1);
    CHECK(e.min_norm->estimate.re() >= bound * (1.0 - 1e-8));
    CHECK(e.min_norm->estimate.re() > previous);
    previous = e.min_norm->estimate.re();
  }
}

TEST_CASE("dirichlet systems") {
  const auto sys = dirichlet_system({{1.0, 2.0}, {1.0, 0.0}});
  const auto g = gram_matrix(sys, 1e-10);
  CHECK(std::abs(g.values(0, 0) - oracle::kZeta2) <= g.errors(0, 0) + 1e-13);
  CHECK(std::abs(g.values(0, 1) - oracle::kZeta3) <= g.errors(0, 1) + 1e-13);
  CHECK(std::abs(g.values(1, 1) - oracle::kZeta4) <= g.errors(1, 1) + 1e-13);
  CHECK(sys.field() == Field::Real);

  const auto single = min_norm_l2(dirichlet_system({{1.0}, {1.0}}), 1e-9);
  CHECK(std::abs(single.norm.estimate.re() - 1.0 / std::sqrt(oracle::kZeta2)) <= single.norm.error_bound + 1e-12);

  const auto dup = min_norm_l2(dirichlet_system({{1.5, 1.5}, {2.0, 2.0}}), 1e-9);
  CHECK(dup.spectrum->rank == 1);
  for (const auto& r : dup.residuals) CHECK(r.magnitude_bound() <= 1e-9);

  CHECK(kind_of([] { dirichlet_system({{0.5}, {1.0}}); }) == ErrorKind::OutsideHalfPlane);
  CHECK(kind_of([] { dirichlet_system({{1.0, 2.0}, {1.0}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("gram entries agree with direct pairings") {
  const std::vector<Complex> points{{1.2, 0.0}, {0.9, 2.0}, {2.0, -1.0}};
  const auto sys = dirichlet_system({points, {1.0, 1.0, 1.0}});
  const auto g = gram_matrix(sys, 1e-9);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto direct = holder_pairing(SeqRep::power_law(points[i]), SeqRep::power_law(std::conj(points[k])),
                                         make_conjugate(2.0), 1e-9);
      const auto gi = static_cast<Eigen::Index>(i);
      const auto gk = static_cast<Eigen::Index>(k);
      CHECK(std::abs(g.values(gi, gk) - direct.estimate.value()) <= g.errors(gi, gk) + direct.error_bound + 1e-12);
    }
  }
}

TEST_CASE("property: separated dirichlet interpolation meets the residual tolerance") {
  oracle::Generator gen(13);
  for (int trial = 0; trial < 8; ++trial) {
    const int r = gen.integer(1, 5);
    DirichletSpec spec;
    double re = gen.uniform(1.0, 1.2);
    for (int i = 0; i < r; ++i) {
      spec.points.emplace_back(re, gen.uniform(-1.0, 1.0));
      spec.values.emplace_back(gen.uniform(-1, 1), gen.uniform(-1, 1));
      re += gen.uniform(0.25, 0.5);
    }
    const auto result = min_norm_l2(dirichlet_system(spec), 1e-8);
    for (const auto& res : result.residuals) CHECK(res.magnitude_bound() <= 1e-8);
  }
}

#include <doctest.h>

#include <cmath>

#include "infeq/error.hpp"
#include "infeq/polynomial.hpp"
#include "oracles.hpp"

using namespace infeq;

namespace {

SeqRep sp(std::initializer_list<std::pair<std::size_t, double>> entries) {
  std::vector<SeqRep::Entry> out;
  for (auto [j, v] : entries) out.push_back({j, Scalar(v)});
  return SeqRep::sparse(std::move(out));
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("degree tuples") {
  const auto two = enumerate_degree_tuples(3, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0].entries == std::vector<unsigned>{1, 1});
  CHECK(two[1].entries == std::vector<unsigned>{1, 2});
  CHECK(two[2].entries == std::vector<unsigned>{2, 1});
  const auto three = enumerate_degree_tuples(3, 3);
  REQUIRE(three.size() == 1);
  CHECK(three[0].entries == std::vector<unsigned>{1, 1, 1});

  std::size_t total = 0;
  for (unsigned k = 1; k <= 10; ++k) total += enumerate_degree_tuples(10, k).size();
  CHECK(total == 1023);

  CHECK_THROWS_AS(enumerate_degree_tuples(3, 4), Error);
  CHECK_THROWS_AS(enumerate_degree_tuples(3, 0), Error);
}

TEST_CASE("property: tuple counts are binomial and tuples are sorted and valid") {
  for (unsigned D = 1; D <= 12; ++D) {
    std::size_t total = 0;
    for (unsigned k = 1; k <= D; ++k) {
      const auto tuples = enumerate_degree_tuples(D, k);
      CHECK(static_cast<double>(tuples.size()) == binomial(D, k));
      for (std::size_t i = 0; i < tuples.size(); ++i) {
        CHECK(tuples[i].entries.size() == k);
        CHECK(tuples[i].sum() <= D);
        if (i > 0) CHECK(tuples[i - 1].entries < tuples[i].entries);
      }
      total += tuples.size();
    }
    CHECK(total == (std::size_t{1} << D) - 1);
  }
}

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(MultiplicativePolynomial(2, 2.0, {}), Error);
  CHECK_THROWS_AS(MultiplicativePolynomial(0, 3.0, {}), Error);
  CHECK_THROWS_AS(MultiplicativePolynomial(1, 3.0, {sp({}), sp({})}), Error);
  const MultiplicativePolynomial P(2, 3.0, {sp({{1, 1.0}})});
  CHECK(P.coefficient(2).entries().empty());
  CHECK(P.coefficient_exponent(1) == doctest::Approx(1.5));
  CHECK(P.coefficient_exponent(2) == doctest::Approx(3.0));
  CHECK(MultiplicativePolynomial(3, kInfinity, {}).coefficient_exponent(3) == 1.0);
}

TEST_CASE("evaluation examples") {
  const MultiplicativePolynomial P(2, 3.0, {sp({{1, 1.0}, {2, 1.0}}), sp({{1, 1.0}})});
  const auto x = sp({{1, 1.0}, {2, 1.0}});
  const auto v = eval_product_form(P, x, 1e-12);
  CHECK(v.estimate.re() == 7.0);
  CHECK(v.error_bound == 0.0);
  CHECK(eval_bruteforce(P, x).re() == 7.0);

  CHECK(eval_product_form(P, SeqRep(), 1e-9).estimate.is_zero());
  CHECK(eval_bruteforce(P, SeqRep()).is_zero());
  CHECK(eval_bruteforce(MultiplicativePolynomial(3, 4.0, {}), x).is_zero());

  const auto e1 = sp({{1, 1.0}});
  const MultiplicativePolynomial cubic(3, 4.0, {e1, e1, e1});
  CHECK(eval_bruteforce(cubic, e1).re() == 7.0);
  CHECK(eval_product_form(cubic, e1, 1e-9).estimate.re() == 7.0);
}

TEST_CASE("degree one is the pairing") {
  const MultiplicativePolynomial P(1, 2.0, {SeqRep::power_law(1.0)});
  const auto x = SeqRep::power_law(1.0);
  const auto v = eval_product_form(P, x, 1e-8);
  CHECK(v.error_bound <= 1e-8);
  CHECK(std::abs(v.estimate.re() - oracle::kZeta2) <= v.error_bound + 1e-12);
}

TEST_CASE("power-law x stays closed form and tolerance propagates") {
  // D = 2, q = 3, a_1 = j^-1 in l^{3/2}, a_2 = j^-1 in l^3, x = j^-1 in l^3:
  // (a_1, x) = zeta(2), (a_2, x^2) = zeta(3), P = zeta(2) + zeta(3) + zeta(2)^2.
  const MultiplicativePolynomial P(2, 3.0, {SeqRep::power_law(1.0), SeqRep::power_law(1.0)});
  const double expected = oracle::kZeta2 + oracle::kZeta3 + oracle::kZeta2 * oracle::kZeta2;
  for (double tol : {1e-4, 1e-8, 1e-11}) {
    const auto v = eval_product_form(P, SeqRep::power_law(1.0), tol);
    CHECK(v.error_bound <= tol);
    CHECK(std::abs(v.estimate.re() - expected) <= v.error_bound + 1e-13);
  }
  // x = 2 j^-1 from index 2 on.
  const auto x = SeqRep::combination({{Scalar(2.0), SeqRep::tail(SeqRep::power_law(1.0), 2)}});
  const double z2 = 2.0 * (oracle::kZeta2 - 1.0);
  const double z3 = 4.0 * (oracle::kZeta3 - 1.0);
  const auto v = eval_product_form(P, x, 1e-9);
  CHECK(std::abs(v.estimate.re() - (z2 + z3 + z2 * z2)) <= v.error_bound + 1e-13);
}

TEST_CASE("evaluation failures") {
  const MultiplicativePolynomial P(1, 2.0, {SeqRep::power_law(0.4)});
  CHECK_THROWS_AS(eval_product_form(P, sp({{1, 1.0}}), 1e-6), Error);
  const MultiplicativePolynomial Q(2, 3.0, {SeqRep::power_law(1.0), SeqRep::power_law(1.0)});
  const auto mixed = SeqRep::combination({{Scalar(1.0), SeqRep::power_law(1.0)}, {Scalar(1.0), sp({{1, 1.0}})}});
  try {
    eval_product_form(Q, mixed, 1e-6);
    FAIL("expected UnsupportedRepresentation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedRepresentation);
  }
  try {
    eval_bruteforce(Q, SeqRep::power_law(1.0));
    FAIL("expected UnsupportedRepresentation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedRepresentation);
  }
  std::vector<SeqRep::Entry> wide;
  for (std::size_t j = 1; j <= 200; ++j) wide.push_back({j, Scalar(1.0)});
  const MultiplicativePolynomial deep(4, 5.0, {});
  try {
    eval_bruteforce(deep, SeqRep::sparse(wide));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("membership reports") {
  const auto one = membership_check(MultiplicativePolynomial(1, 2.0, {SeqRep::power_law(1.0)}));
  CHECK(one.all_members());
  CHECK(one.coefficients[0].exponent == 2.0);
  CHECK(one.coefficients[0].norm_bound >= std::sqrt(oracle::kZeta2));
  CHECK(one.coefficients[0].norm_bound <= std::sqrt(oracle::kZeta2) + 1e-7);

  const auto two = membership_check(MultiplicativePolynomial(2, 3.0, {sp({}), SeqRep::power_law(1.0)}));
  CHECK(two.coefficients[1].exponent == doctest::Approx(3.0));
  CHECK(two.coefficients[1].member);

  const auto refuted = membership_check(MultiplicativePolynomial(1, 2.0, {SeqRep::power_law(0.4)}));
  CHECK_FALSE(refuted.all_members());
  CHECK(std::isinf(refuted.coefficients[0].norm_bound));
}

TEST_CASE("property: product form equals brute-force monomial expansion") {
  oracle::Generator gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto D = static_cast<unsigned>(gen.integer(1, 4));
    const double q = gen.coin() ? kInfinity : static_cast<double>(D) + gen.uniform(0.5, 3.0);
    const bool complex = gen.coin();
    std::vector<SeqRep> coeffs;
    for (unsigned d = 1; d <= D; ++d) coeffs.push_back(gen.sparse(6, 8, complex));
    const MultiplicativePolynomial P(D, q, coeffs);
    const auto x = gen.sparse(6, 8, complex);
    const double tol = 1e-10;
    const auto fast = eval_product_form(P, x, tol);
    const auto slow = eval_bruteforce(P, x);
    const double scale = std::max(1.0, slow.abs());
    CHECK(std::abs(fast.estimate.value() - slow.value()) <= 10.0 * tol * scale);
  }
}

TEST_CASE("property: dropping the top degree removes exactly one pairing") {
  oracle::Generator gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto D = static_cast<unsigned>(gen.integer(2, 4));
    const double q = static_cast<double>(D) + gen.uniform(0.5, 2.0);
    std::vector<SeqRep> coeffs;
    for (unsigned d = 1; d <= D; ++d) coeffs.push_back(gen.sparse(5, 6, false));
    const MultiplicativePolynomial P(D, q, coeffs);
    auto lower = coeffs;
    lower.back() = SeqRep();
    const MultiplicativePolynomial Pl(D, q, lower);
    const auto x = gen.sparse(5, 6, false);
    const double top = holder_pairing(coeffs.back(), power_coordinates(x, D),
                                      make_conjugate(P.coefficient_exponent(D)), 1e-12)
                           .estimate.re();
    const double full = eval_bruteforce(P, x).re();
    const double rest = eval_bruteforce(Pl, x).re();
    CHECK(full - rest == doctest::Approx(top).epsilon(1e-12).scale(1.0));
  }
}

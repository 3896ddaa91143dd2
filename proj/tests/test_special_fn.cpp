#include <cmath>
#include <numbers>
#include <vector>

#include "catalynet/error.hpp"
#include "catalynet/special_fn.hpp"
#include "doctest.h"

using namespace catalynet;

namespace {
bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("laguerre low orders") {
  CHECK(close(laguerre(0, 0.7), 1.0));
  CHECK(close(laguerre(1, 3.0), -2.0));
  CHECK(close(laguerre(2, 1.0), -0.5));
}

TEST_CASE("normal_laguerre on number states") {
  // <n|:L_m(n x):|n> = sum_k (-1)^k C(n,k) C(m,k) x^k
  CHECK(normal_laguerre(0, 5, 0.3) == doctest::Approx(1.0));
  CHECK(normal_laguerre(1, 1, 2.0) == doctest::Approx(1.0 - 2.0));
  CHECK(normal_laguerre(2, 2, 0.5) == doctest::Approx(1.0 - 4 * 0.5 + 0.25));
  double direct = 0.0;
  for (int k = 0; k <= 3; ++k) direct += std::pow(-1.0, k) * binomial(4, k) * binomial(3, k) * std::pow(0.7, k);
  CHECK(normal_laguerre(4, 3, 0.7) == doctest::Approx(direct));
}

TEST_CASE("hermite2 generating-function values") {
  CHECK(close(hermite2(0, 0, {0.3, 0.2}, {-1.0, 4.0}), 1.0));
  CHECK(close(hermite2(1, 1, 2.0, 3.0), 5.0));
  CHECK(close(hermite2(2, 1, 1.0, 2.0), 0.0));
  CHECK_THROWS_AS(hermite2(-1, 0, 1.0, 1.0), DomainError);
}

TEST_CASE("hermite2 matches a truncated generating-function expansion") {
  // Coefficient extraction of exp(u xi + v eta - u v) through a double series.
  const cplx xi{0.4, -0.3}, eta{-0.2, 0.9};
  for (int p = 0; p <= 4; ++p) {
    for (int q = 0; q <= 4; ++q) {
      cplx sum = 0.0;
      // exp(u xi) exp(v eta) exp(-uv): pick u^a v^b from the first two and (uv)^k from the last
      for (int k = 0; k <= std::min(p, q); ++k) {
        sum += std::pow(xi, p - k) / factorial(p - k) * std::pow(eta, q - k) / factorial(q - k) * std::pow(-1.0, k) /
               factorial(k);
      }
      sum *= factorial(p) * factorial(q);
      CHECK(close(hermite2(p, q, xi, eta), sum, 1e-12));
    }
  }
}

TEST_CASE("pi_coeff") {
  CHECK(close(pi_coeff(3, 0, 0, 2.0, 5.0), 1.0));
  CHECK(close(pi_coeff(2, 1, 1, 2.0, 3.0), 24.0));
  CHECK(close(pi_coeff(2, 2, 0, -1.0, 5.0), 0.5));
  CHECK_THROWS_AS(pi_coeff(2, 3, 0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(pi_coeff(2, 0, 3, 1.0, 1.0), DomainError);
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(20) == 2432902008176640000.0);
  CHECK(factorial(25) == doctest::Approx(1.5511210043330986e25).epsilon(1e-12));
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(5, 7) == 0.0);
  CHECK(binomial(40, 20) == doctest::Approx(137846528820.0).epsilon(1e-12));
  CHECK(binomial_real(-0.5, 1) == doctest::Approx(-0.5));
  CHECK(binomial_real(-0.5, 2) == doctest::Approx(0.375));
}

TEST_CASE("series_build") {
  const std::vector<double> none;
  const auto delta = series_build(SeriesKind::delta, none, 2);
  CHECK(close(delta.at(2, 2), 1.0));
  CHECK(close(delta.at(0, 1), 1.0));

  const std::vector<double> zero{0.0};
  const auto a0 = series_build(SeriesKind::a_t, zero, 5);
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; j <= 5; ++j) CHECK(close(a0.at(i, j), (i == 0 && j == 0) ? 1.0 : 0.0));
  }

  const std::vector<double> pi3{std::numbers::pi / 3};
  const auto a = series_build(SeriesKind::a_t, pi3, 4);
  CHECK(close(a.at(1, 0), -3.0, 1e-12));
  // c_tau is the same series in the other variable
  const auto c = series_build(SeriesKind::c_tau, pi3, 4);
  CHECK(close(c.at(0, 1), -3.0, 1e-12));
  CHECK(close(c.at(1, 0), 0.0));
}

TEST_CASE("series arithmetic") {
  const int order = 6;
  const auto t = BivariateSeries::variable_t(order);
  const auto one = BivariateSeries::constant(order, 1.0);
  const auto r = series_recip(one - t);
  for (int k = 0; k <= order; ++k) CHECK(close(r.at(k, 0), 1.0));

  const auto half = series_powf(one - t, -0.5);
  CHECK(close(half.at(1, 0), 0.5));
  CHECK(close(half.at(2, 0), 0.375));

  const std::vector<double> none;
  const auto delta = series_build(SeriesKind::delta, none, order);
  const auto prod = series_mul(delta, one - t);
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; j <= order; ++j) CHECK(close(prod.at(i, j), i == 0 ? 1.0 : 0.0));
  }

  CHECK_THROWS_AS(series_recip(t), DomainError);
  CHECK_THROWS_AS(series_powf(t, 0.5), DomainError);
  CHECK_THROWS_AS(BivariateSeries(BivariateSeries::kMaxOrder + 1), DomainError);
}

TEST_CASE("dm_eval") {
  const std::vector<double> none;
  CHECK(close(dm_eval(series_build(SeriesKind::delta, none, 3), 2), 4.0));
  CHECK(close(dm_eval(BivariateSeries::constant(3, 1.0), 2), 0.0));
  CHECK(close(dm_eval(BivariateSeries::constant(3, 7.0), 0), 7.0));
  CHECK_THROWS_AS(dm_eval(BivariateSeries::constant(1, 1.0), 2), DomainError);
}

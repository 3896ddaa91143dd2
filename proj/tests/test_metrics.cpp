#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "catalynet/error.hpp"
#include "catalynet/metrics.hpp"
#include "catalynet/oracle.hpp"
#include "doctest.h"

using namespace catalynet;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ProbeSpec spec(Family f, double amp, double theta, int m, int d, int s = -1) {
  ProbeSpec p;
  p.family = f;
  p.amplitude = amp;
  p.theta = theta;
  p.m = m;
  p.d = d;
  p.s = s < 0 ? d : s;
  return p;
}

std::vector<double> coop_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 110; ++k) g.push_back(1.0 + 0.005 * k);
  return g;
}
}  // namespace

TEST_CASE("qfim structure") {
  const auto one = spec(Family::cwc, 0.8, 0.6, 2, 1);
  const auto model = make_model(one);
  const auto F1 = qfim(one);
  REQUIRE(F1.rows() == 1);
  CHECK(F1(0, 0) == doctest::Approx(effective_qfi(one)).epsilon(1e-12));

  // wc, d = 2: different W branches never populate two signal modes at once.
  const auto wc = spec(Family::wc, 1.0, 0, 0, 2);
  const double n1 = normalization(wc);
  const auto F = qfim(wc);
  CHECK(F(0, 1) == doctest::Approx(-4.0 * std::pow(n1 * n1 * 1.0, 2)).epsilon(1e-12));
  CHECK(F(0, 1) == doctest::Approx(F(1, 0)));
  const auto o = build_probe_fock(wc);
  const auto Fo = oracle_qfim(o.state, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(std::abs(F(i, j) - Fo(i, j)) <= 1e-8 * std::abs(Fo(i, j)));
  }
  (void)model;
}

TEST_CASE("weighted_qfi") {
  const auto p = spec(Family::pcwc, 1.1, 0.9, 2, 3, 1);
  CHECK(weighted_qfi(p, {1.0 / 3, 1.0 / 3, 1.0 / 3}) == doctest::Approx(effective_qfi(p) / 9.0).epsilon(1e-12));
  CHECK(weighted_qfi(p, {1.0, 0.0, 0.0}) == doctest::Approx(qfim(p)(0, 0)).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_qfi(p, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(weighted_qfi(p, {0.5, 0.6, -0.1}), DomainError);

  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto wc = spec(Family::wc, 0.9, 0, 0, 2);
  const auto Fo = oracle_qfim(build_probe_fock(wc).state, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = u(rng);
    const std::vector<double> w{a, 1.0 - a};
    const double oracle = a * a * Fo(0, 0) + 2 * a * (1 - a) * Fo(0, 1) + (1 - a) * (1 - a) * Fo(1, 1);
    CHECK(rel(weighted_qfi(wc, w), oracle) < 1e-8);
  }
}

TEST_CASE("effective_qfi examples") {
  CHECK(effective_qfi(spec(Family::wc, 1.0, 0, 0, 1)) == doctest::Approx(2.3898).epsilon(1e-4));
  CHECK(effective_qfi(spec(Family::ws, 1.0, 0, 0, 1)) == doctest::Approx(9.594).epsilon(1e-4));
  CHECK(rel(effective_qfi(spec(Family::cwc, 1.3, 0, 0, 4)), effective_qfi(spec(Family::wc, 1.3, 0, 0, 4))) < 1e-12);
  for (auto f : {Family::wc, Family::ws}) {
    const auto p = spec(f, is_coherent(f) ? 1.0 : 1.0, 0, 0, 1);
    CHECK(rel(effective_qfi(p), oracle_effective_qfi(build_probe_fock(p).state, 1)) < 1e-8);
  }
}

TEST_CASE("effective_qfi equals the QFIM element sum") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> th(0.0, 1.4), amp(0.1, 1.5);
  std::uniform_int_distribution<int> dm(1, 8), mm(0, 6);
  for (auto f : {Family::wc, Family::cwc, Family::pcwc, Family::ws, Family::cws, Family::pcws}) {
    for (int trial = 0; trial < 6; ++trial) {
      const int d = dm(rng);
      const int s = is_partial(f) ? std::uniform_int_distribution<int>(0, d)(rng) : d;
      const double a = is_coherent(f) ? amp(rng) : 0.6 * amp(rng);
      const auto p = spec(f, a, th(rng), mm(rng), d, s);
      CHECK(rel(effective_qfi(p), qfim(p).sum()) < 1e-10);
    }
  }
}

TEST_CASE("success_probability") {
  for (auto f : {Family::cwc, Family::pcwc, Family::cws, Family::pcws}) {
    CHECK(success_probability(spec(f, 0.7, 0.0, 3, 3, is_partial(f) ? 1 : 3)) == doctest::Approx(1.0));
  }
  CHECK(success_probability(spec(Family::wc, 1.0, 0, 0, 5)) == 1.0);

  const auto p = spec(Family::cwc, 1.0, 0.7, 1, 1);
  CHECK(rel(success_probability(p), build_probe_fock(p).success_prob) < 1e-8);

  // P falls as theta grows at fixed m.
  const double a = solve_amplitude_for_resource(1.0, 5, Family::wc);
  double prev = 2.0;
  for (double th : {0.2, 0.6, 1.0}) {
    const double pr = success_probability(spec(Family::cwc, a, th, 5, 5));
    CHECK(pr < prev);
    CHECK(pr > 0.0);
    prev = pr;
  }
}

TEST_CASE("gain_db") {
  CHECK(gain_db(3.0, 3.0) == 0.0);
  CHECK(gain_db(10.0, 1.0) == doctest::Approx(10.0));
  CHECK(gain_db(20.0, 2.0) == doctest::Approx(gain_db(10.0, 1.0)));
  CHECK_THROWS_AS(gain_db(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gain_db(1.0, -1.0), DomainError);
}

TEST_CASE("cooperation") {
  CHECK(cooperation(spec(Family::cwc, 1.0, 0.0, 3, 4), spec(Family::wc, 1.0, 0, 0, 4)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(cooperation(spec(Family::cwc, 1.0, 0.3, 3, 4), spec(Family::ws, 1.0, 0, 0, 4)), DomainError);
  CHECK_THROWS_AS(cooperation(spec(Family::cwc, 1.0, 0.3, 3, 4), spec(Family::wc, 1.0, 0, 0, 3)), DomainError);
}

TEST_CASE("cooperation: partial beats global by three orders of magnitude") {
  const double a = solve_amplitude_for_resource(1.0, 2, Family::wc);
  const auto ref = spec(Family::wc, a, 0, 0, 2);
  for (int m : {5, 6, 7}) {
    double best_global = -1e300, best_partial = -1e300;
    for (double th : coop_grid()) {
      best_global = std::max(best_global, cooperation(spec(Family::cwc, a, th, m, 2), ref));
      best_partial = std::max(best_partial, cooperation(spec(Family::pcwc, a, th, m, 2, 1), ref));
    }
    INFO("m = " << m << " global " << best_global << " partial " << best_partial);
    CHECK(best_global > 0.0);
    CHECK(best_partial >= 1e3 * best_global);
  }
}

TEST_CASE("cooperation: global R falls as m grows") {
  const double a = solve_amplitude_for_resource(1.0, 2, Family::wc);
  const auto ref = spec(Family::wc, a, 0, 0, 2);
  std::vector<double> peaks;
  for (int m : {5, 6, 7}) {
    double best = -1e300;
    for (double th : coop_grid()) best = std::max(best, cooperation(spec(Family::cwc, a, th, m, 2), ref));
    peaks.push_back(best);
  }
  CHECK(peaks[1] < peaks[0]);
  CHECK(peaks[2] < peaks[1]);
}

TEST_CASE("single_mode_qfi") {
  CHECK(single_mode_qfi(SingleModeKind::coherent, 1.0, 0, 0) == doctest::Approx(4.0));
  CHECK(single_mode_qfi(SingleModeKind::squeezed, 1.0, 0, 0) ==
        doctest::Approx(8 * std::pow(std::sinh(1.0), 2) * (std::pow(std::sinh(1.0), 2) + 1)));
  CHECK(single_mode_qfi(SingleModeKind::squeezed, 1.0, 0, 0) == doctest::Approx(26.30823).epsilon(1e-6));
  CHECK(single_mode_qfi(SingleModeKind::cat_coherent, 1.7, 0.0, 0) == doctest::Approx(4 * 1.7 * 1.7));
  const auto lit = catalyze_literal(coherent_state(1.0, 30), kPi / 4, 2);
  const double n = std::real(moment(lit.state, {{0, "n"}}));
  const double n2 = std::real(moment(lit.state, {{0, "n n"}}));
  CHECK(rel(single_mode_qfi(SingleModeKind::cat_coherent, 1.0, kPi / 4, 2), 4 * (n2 - n * n)) < 1e-8);
}

TEST_CASE("weak_qcrb") {
  CHECK(weak_qcrb(4.0) == 0.5);
  CHECK(weak_qcrb(1.0) == 1.0);
  CHECK_THROWS_AS(weak_qcrb(0.0), DomainError);
}

TEST_CASE("evaluate") {
  const auto p = spec(Family::cwc, 1.0, 0.9, 3, 4);
  const auto ref = spec(Family::wc, 1.0, 0, 0, 4);
  const auto r = evaluate(p, ref);
  CHECK(r.H == doctest::Approx(effective_qfi(p)));
  CHECK(r.P == doctest::Approx(success_probability(p)));
  CHECK(r.N_bar == doctest::Approx(mean_photon(p)));
  REQUIRE(r.G_db.has_value());
  CHECK(*r.G_db == doctest::Approx(gain_db(r.H, effective_qfi(ref))));
  REQUIRE(r.R.has_value());
  CHECK(*r.R == doctest::Approx(cooperation(p, ref)));
  CHECK_FALSE(evaluate(p).G_db.has_value());
}

TEST_CASE("pcwc at s = d reproduces cwc") {
  for (double th : {0.3, 1.0}) {
    const auto g = spec(Family::cwc, 0.8, th, 4, 5);
    const auto q = spec(Family::pcwc, 0.8, th, 4, 5, 5);
    CHECK(rel(effective_qfi(q), effective_qfi(g)) < 1e-10);
    CHECK(rel(success_probability(q), success_probability(g)) < 1e-10);
    CHECK(rel(mean_photon(q), mean_photon(g)) < 1e-10);
  }
}

TEST_CASE("optimal_catalysis_modes") {
  const auto scan = optimal_catalysis_modes(6, 3, 1.0, 1.0, Family::pcwc);
  REQUIRE(scan.gains.size() == 7);
  for (double g : scan.gains) CHECK(g <= scan.gains[static_cast<std::size_t>(scan.s_opt)]);
  for (int s = 0; s < scan.s_opt; ++s) CHECK(scan.gains[static_cast<std::size_t>(s)] < scan.gain_db);
  CHECK(scan.amplitude == doctest::Approx(solve_amplitude_for_resource(1.0, 6, Family::wc)));
  CHECK_THROWS_AS(optimal_catalysis_modes(6, 3, 1.0, 1.0, Family::cwc), DomainError);
}

TEST_CASE("optimize_theta refines the grid maximum") {
  const double r = solve_amplitude_for_resource(1.0, 5, Family::ws);
  const auto cat = spec(Family::cws, r, 0.5, 4, 5);
  const auto ref = spec(Family::ws, r, 0, 0, 5);
  const auto opt = optimize_theta(cat, ref, 200);
  for (double v : opt.values) CHECK(v <= opt.value + 1e-9);
  auto at = cat;
  at.theta = opt.theta;
  CHECK(opt.value == doctest::Approx(gain_db(effective_qfi(at), effective_qfi(ref))));
}

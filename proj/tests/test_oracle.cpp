#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "catalynet/error.hpp"
#include "catalynet/loss.hpp"
#include "catalynet/metrics.hpp"
#include "catalynet/oracle.hpp"
#include "catalynet/special_fn.hpp"
#include "doctest.h"

using namespace catalynet;

namespace {
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

double max_diff(const FockVector& a, const FockVector& b) {
  REQUIRE(a.amps.size() == b.amps.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i) worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  return worst;
}
}  // namespace

TEST_CASE("build_probe_fock trivial cases") {
  const auto wc = build_probe_fock(spec(Family::wc, 0.8, 0, 0, 2));
  CHECK(wc.success_prob == 1.0);
  CHECK(wc.state.norm2() == doctest::Approx(1.0).epsilon(1e-14));
  const auto cwc = build_probe_fock(spec(Family::cwc, 0.8, 0.0, 0, 2));
  CHECK(cwc.success_prob == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_diff(wc.state, cwc.state) < 1e-14);
  CHECK_THROWS_AS(build_probe_fock(spec(Family::wc, 0.8, 0, 0, 4)), DomainError);
  CHECK_THROWS_AS(build_probe_fock(spec(Family::cwc, 0.8, 0.3, 4, 2)), DomainError);
}

TEST_CASE("success probability against the closed form") {
  const auto p = spec(Family::cwc, 1.0, 0.7, 1, 1);
  CHECK(rel(build_probe_fock(p).success_prob, success_probability(p)) < 1e-8);
}

TEST_CASE("fully literal construction agrees for d = 1") {
  // With every mode catalyzed the heralding weights are the same on each
  // branch, so the literal state is the equal-weight probe itself.
  for (auto f : {Family::cwc, Family::cws}) {
    const auto p = spec(f, is_coherent(f) ? 0.7 : 0.4, 0.6, 1, 1);
    const auto fast = build_probe_fock(p, 16);
    const auto lit = build_probe_fock_literal(p, 16);
    CHECK(rel(lit.success_prob, fast.success_prob) < 1e-8);
    CHECK(rel(oracle_effective_qfi(lit.state, 1), oracle_effective_qfi(fast.state, 1)) < 1e-8);
  }
}

TEST_CASE("literal partial catalysis carries the heralding weights") {
  // Only some modes are catalyzed, so each branch is scaled by the heralding
  // amplitude of its own factors. Rebuild that superposition by hand.
  const int K = 16;
  const auto p = spec(Family::pcwc, 0.7, 0.6, 1, 1, 0);
  const auto lit = build_probe_fock_literal(p, K);
  const auto fast = build_probe_fock(p, K);
  CHECK(rel(lit.success_prob, fast.success_prob) < 1e-8);

  const auto psi = coherent_state(0.7, K);
  const auto vac = vacuum({K});
  auto weighted = [&](const FockVector& in) {
    auto c = catalyze_literal(in, p.theta, p.m);
    for (auto& a : c.state.amps) a *= std::sqrt(c.probability);
    return c.state;
  };
  const auto cat_psi = weighted(psi), cat_vac = weighted(vac);
  FockVector expect = vacuum({K, K});
  expect.amps.assign(expect.amps.size(), 0.0);
  for (int k = 0; k <= p.d; ++k) {
    std::vector<const FockVector*> f;
    for (int j = 0; j <= p.d; ++j) {
      const bool cat = p.mode_catalyzed(j);
      f.push_back(j == k ? (cat ? &cat_psi : &psi) : (cat ? &cat_vac : &vac));
    }
    accumulate_product(expect, f, 1.0);
  }
  expect = normalize(expect);
  // The heralded branch may carry an overall sign from the beam splitter.
  const double ov = std::abs(std::inner_product(expect.amps.begin(), expect.amps.end(), lit.state.amps.begin(), cplx{},
                                                std::plus<>(), [](cplx a, cplx b) { return std::conj(a) * b; }));
  CHECK(ov == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rel(oracle_effective_qfi(lit.state, 1), oracle_effective_qfi(expect, 1)) < 1e-8);
}

TEST_CASE("oracle_effective_qfi") {
  CHECK(oracle_effective_qfi(vacuum({4, 4}), 1) == 0.0);
  // A single coherent mode placed in mode 1 of a two-mode product.
  const auto s = tensor(vacuum({3}), coherent_state(1.0, 30));
  CHECK(oracle_effective_qfi(s, 1) == doctest::Approx(4.0).epsilon(1e-10));
  const auto wc = spec(Family::wc, 1.0, 0, 0, 2);
  CHECK(rel(oracle_effective_qfi(build_probe_fock(wc).state, 2), effective_qfi(wc)) < 1e-8);
  // A lone mode stands for its own signal mode when d = 1.
  CHECK(oracle_effective_qfi(coherent_state(1.0, 30), 1) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK_THROWS_AS(oracle_effective_qfi(vacuum({3}), 2), DomainError);
  CHECK_THROWS_AS(oracle_effective_qfi(vacuum({3, 3}), 2), DomainError);
}

TEST_CASE("oracle_homodyne") {
  const auto v = oracle_homodyne(vacuum({3, 3}), 1, 0.4);
  CHECK(std::abs(v.mean_x) < 1e-15);
  CHECK(v.mean_x2 == doctest::Approx(0.5));
  const auto p = spec(Family::cwc, 1.0, 0.0, 0, 1);
  const auto o = oracle_homodyne(build_probe_fock(p).state, 1, 0.0);
  const auto a = x_moments_global(1.0, 0.0, 0, 1, 0.0);
  CHECK(std::abs(o.mean_x - a.mean_x) < 1e-8);
  CHECK(rel(a.mean_x2, o.mean_x2) < 1e-8);
  CHECK(o.mean_x2 >= o.mean_x * o.mean_x);
}

TEST_CASE("oracle_lossy_qfi") {
  const auto p = spec(Family::cwc, 0.9, 0.7, 2, 2);
  const auto st = build_probe_fock(p).state;
  CHECK(rel(oracle_lossy_qfi(st, 2, 1.0), oracle_effective_qfi(st, 2)) < 1e-12);
  CHECK(oracle_lossy_qfi(st, 2, 0.0) == 0.0);
  const auto wc = spec(Family::wc, 1.0, 0, 0, 2);
  const auto ws = build_probe_fock(wc).state;
  for (double eta : {0.3, 0.7}) CHECK(rel(oracle_lossy_qfi(ws, 2, eta), lossy_effective_qfi(wc, eta)) < 1e-8);
}

TEST_CASE("catalytic operator identity") {
  // N_m :L_m(n tan^2 theta): cos^(n+m) theta |alpha>, expanded in the number basis.
  const double alpha = 0.9, theta = 0.8;
  const int m = 3;
  const auto in = coherent_state(alpha, 30);
  const auto lit = catalyze_literal(in, theta, m);
  const double t2 = std::pow(std::tan(theta), 2);
  std::vector<cplx> amps(in.amps.size());
  double n2 = 0.0;
  for (std::size_t n = 0; n < amps.size(); ++n) {
    const int k = static_cast<int>(n);
    amps[n] = in.amps[n] * normal_laguerre(k, m, t2) * std::pow(std::cos(theta), k + m);
    n2 += std::norm(amps[n]);
  }
  CHECK(lit.probability == doctest::Approx(n2).epsilon(1e-10));
  // Global sign of the heralded branch is fixed by the beam-splitter convention.
  const double sign = std::real(lit.state.amps[0]) * std::real(amps[0]) >= 0 ? 1.0 : -1.0;
  for (std::size_t n = 0; n < amps.size(); ++n) {
    CHECK(std::abs(lit.state.amps[n] - sign * amps[n] / std::sqrt(n2)) < 1e-8);
  }
}

TEST_CASE("WSQ generation") {
  const auto zero = simulate_wsq_generation({0.6, 0.7, 0.8, 0.9}, 0.0);
  CHECK(zero.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  const auto res = simulate_wsq_generation({0.6, 0.7, 0.8, 0.9}, 0.5);
  double total = 0.0;
  for (double p : res.rail_probs) total += p;
  // The photon never leaves the three rails, so the no-detection outcome has
  // zero weight and the rail probabilities alone exhaust the distribution.
  CHECK(std::abs(total - 1.0) <= 1e-8);
  CHECK(res.herald_prob == doctest::Approx(res.rail_probs[0]));
  CHECK_THROWS_AS(simulate_wsq_generation({0.0, 0.7, 0.8, 0.9}, 0.5), DomainError);

  const auto opt = optimize_wsq_generation(0.5);
  CHECK(opt.model_fidelity == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(opt.result.fidelity >= 0.99);
  CHECK(opt.result.herald_prob > 0.0);
}

TEST_CASE("fast validation passes") {
  const auto rep = run_validation(ValidationLevel::fast);
  CHECK(rep.level == "fast");
  CHECK(rep.points > 0);
  for (const auto& e : rep.entries) {
    INFO(e.quantity << " worst " << e.worst_rel_error << " at " << e.worst_point);
    CHECK(e.worst_rel_error <= rep.tolerance);
  }
  CHECK(rep.passed());
}

#include <cmath>
#include <numbers>
#include <vector>

#include "catalynet/error.hpp"
#include "catalynet/fock.hpp"
#include "doctest.h"

using namespace catalynet;

namespace {
constexpr double kPi = std::numbers::pi;

FockVector two_mode(std::vector<std::pair<std::array<int, 2>, cplx>> terms, int cutoff = 4) {
  FockVector s = vacuum({cutoff, cutoff});
  s.amps.assign(s.amps.size(), 0.0);
  for (const auto& [ns, a] : terms) s.amps[s.index(ns)] = a;
  return s;
}

double diff(const FockVector& a, const FockVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i) worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
  return worst;
}
}  // namespace

TEST_CASE("coherent_state") {
  const auto v = coherent_state(0.0, 10);
  CHECK(std::abs(v.amps[0] - 1.0) < 1e-15);
  const auto c = coherent_state(1.0, 30);
  CHECK(std::abs(c.amps[1] / c.amps[0] - 1.0) < 1e-12);
  const auto big = coherent_state(1.4686, 40);
  CHECK(std::real(moment(big, {{0, "n"}})) == doctest::Approx(1.4686 * 1.4686).epsilon(1e-10));
  CHECK(std::real(moment(big, {{0, "n"}})) == doctest::Approx(2.1568).epsilon(1e-4));
  CHECK_THROWS_AS(coherent_state(5.0, 10), TruncationError);
}

TEST_CASE("squeezed_vacuum") {
  const auto v = squeezed_vacuum(0.0, 10);
  CHECK(std::abs(v.amps[0] - 1.0) < 1e-15);
  const auto s = squeezed_vacuum(0.5, 40);
  CHECK(std::real(moment(s, {{0, "n"}})) == doctest::Approx(std::pow(std::sinh(0.5), 2)).epsilon(1e-12));
  CHECK(std::real(moment(s, {{0, "n"}})) == doctest::Approx(0.27154).epsilon(1e-4));
  for (int k = 1; k <= 39; k += 2) CHECK(std::abs(s.amps[static_cast<std::size_t>(k)]) == 0.0);
  // The tail beyond n = 80 still carries about 1e-4 of the norm at r = 1.5501.
  CHECK_THROWS_AS(squeezed_vacuum(1.5501, 80), TruncationError);
  const auto l = squeezed_vacuum(1.5501, 240);
  CHECK(std::real(moment(l, {{0, "n"}})) == doctest::Approx(5.0622).epsilon(2e-4));
  CHECK(std::real(moment(s, {{0, "a adag"}})) == doctest::Approx(std::pow(std::cosh(0.5), 2)).epsilon(1e-12));
}

TEST_CASE("default cutoff rule") {
  CHECK(default_cutoff_coherent(1.0) == 20);
  CHECK(default_cutoff_coherent(3.0) == 33);
  CHECK(default_cutoff_squeezed(0.5) == 30);
  CHECK(default_cutoff_squeezed(2.0) % 2 == 0);
  CHECK(default_cutoff_ancilla(3) == 7);
  CHECK(coherent_state_auto(2.0).leakage <= kLeakageTarget);
  CHECK(squeezed_vacuum_auto(1.0).leakage <= kLeakageTarget);
}

TEST_CASE("apply_bs single photon and Hong-Ou-Mandel") {
  const double h = 1.0 / std::sqrt(2.0);
  const auto one = two_mode({{{1, 0}, 1.0}});
  const auto out = apply_bs(one, 0, 1, kPi / 4);
  CHECK(diff(out, two_mode({{{1, 0}, h}, {{0, 1}, -h}})) < 1e-14);

  const auto hom = apply_bs(two_mode({{{1, 1}, 1.0}}), 0, 1, kPi / 4);
  CHECK(diff(hom, two_mode({{{2, 0}, h}, {{0, 2}, -h}})) < 1e-14);

  const auto same = apply_bs(two_mode({{{2, 1}, 0.6}, {{0, 3}, cplx{0.0, 0.8}}}), 0, 1, 0.0);
  CHECK(diff(same, two_mode({{{2, 1}, 0.6}, {{0, 3}, cplx{0.0, 0.8}}})) < 1e-15);
  CHECK_THROWS_AS(apply_bs(one, 0, 0, 0.3), DomainError);
  CHECK_THROWS_AS(apply_bs(one, 0, 2, 0.3), DomainError);
}

TEST_CASE("apply_bs flags amplitude near the cutoff") {
  const auto edge = two_mode({{{3, 0}, 1.0}}, 4);
  CHECK(apply_bs(edge, 0, 1, 0.4).truncation_warning);
  const auto low = two_mode({{{1, 0}, 1.0}}, 4);
  CHECK_FALSE(apply_bs(low, 0, 1, 0.4).truncation_warning);
}

TEST_CASE("apply_phase") {
  const auto s = two_mode({{{1, 0}, 1.0}});
  CHECK(diff(apply_phase(s, 0, 0.0), s) < 1e-15);
  const auto flipped = apply_phase(s, 0, kPi);
  const std::array<int, 2> n10{1, 0};
  CHECK(std::abs(flipped.amplitude(n10) + 1.0) < 1e-15);
  const auto c = coherent_state(cplx{0.7, 0.2}, 20);
  CHECK(apply_phase(c, 0, 1.234).norm2() == doctest::Approx(c.norm2()).epsilon(1e-14));
}

TEST_CASE("project_mode") {
  const auto vac = vacuum({3, 3});
  const auto p0 = project_mode(vac, 1, 0);
  CHECK(p0.probability == doctest::Approx(1.0));
  CHECK(p0.state.modes() == 1);

  const double h = 1.0 / std::sqrt(2.0);
  const auto bell = two_mode({{{1, 0}, h}, {{0, 1}, h}});
  const auto p = project_mode(bell, 1, 0);
  CHECK(p.probability == doctest::Approx(0.5));
  CHECK(std::abs(std::abs(p.state.amps[1]) - 1.0) < 1e-14);

  const auto c = coherent_state(1.0, 30);
  CHECK(project_mode(c, 0, 1).probability == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(project_mode(c, 0, 1).probability == doctest::Approx(0.36788).epsilon(1e-5));

  CHECK_THROWS_AS(project_mode(two_mode({{{1, 0}, 1.0}}), 1, 1), DomainError);
  CHECK_THROWS_AS(project_mode(c, 0, 31), DomainError);
}

TEST_CASE("moment") {
  const std::array<int, 1> two{2};
  const auto n2 = basis_state({5}, two);
  CHECK(std::real(moment(n2, {{0, "n"}})) == doctest::Approx(2.0));
  const auto c = coherent_state(cplx{0.6, -0.3}, 30);
  const cplx a = moment(c, {{0, "a"}});
  CHECK(std::abs(a - cplx{0.6, -0.3}) < 1e-12);
}

TEST_CASE("number_statistics agrees with moment") {
  auto s = tensor(coherent_state(0.8, 20), squeezed_vacuum(0.4, 30));
  s = apply_bs(s, 0, 1, 0.5);
  const auto st = number_statistics(s);
  CHECK(st.mean(0) == doctest::Approx(std::real(moment(s, {{0, "n"}}))).epsilon(1e-12));
  CHECK(st.second(0, 1) == doctest::Approx(std::real(moment(s, {{0, "n"}, {1, "n"}}))).epsilon(1e-12));
  CHECK(st.second(1, 1) == doctest::Approx(std::real(moment(s, {{1, "n n"}}))).epsilon(1e-12));
}

TEST_CASE("accumulate_product equals tensor") {
  const auto a = coherent_state(0.5, 12);
  const auto b = squeezed_vacuum(0.3, 12);
  FockVector acc = vacuum({12, 12});
  acc.amps.assign(acc.amps.size(), 0.0);
  accumulate_product(acc, {&a, &b}, 2.0);
  const auto t = tensor(a, b);
  for (std::size_t i = 0; i < t.amps.size(); ++i) CHECK(std::abs(acc.amps[i] - 2.0 * t.amps[i]) < 1e-15);
}

TEST_CASE("squeeze_matrix reproduces the squeezed vacuum") {
  const auto S = squeeze_matrix(0.6, 40);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(41);
  v(0) = 1.0;
  const Eigen::VectorXcd out = S * v;
  const auto ref = squeezed_vacuum(0.6, 40);
  for (int k = 0; k <= 40; ++k) CHECK(std::abs(out(k) - ref.amps[static_cast<std::size_t>(k)]) < 1e-10);
}

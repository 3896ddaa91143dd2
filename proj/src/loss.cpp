#include "catalynet/loss.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "catalynet/error.hpp"
#include "catalynet/metrics.hpp"
#include "catalynet/parallel.hpp"

namespace catalynet {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
}

// H_l(eta) = (H - 4 N_s) eta^2 + 4 N_s eta.
struct LossQuadratic {
  double h;
  double ns;
  double value(double eta) const { return eta * eta * h + 4.0 * (1.0 - eta) * eta * ns; }
  double slope(double eta) const { return 2.0 * eta * h + 4.0 * ns - 8.0 * eta * ns; }
};

LossQuadratic quadratic(const ProbeModel& model) { return {effective_qfi(model), signal_photon(model)}; }

// Bisection on a bracketed sign change of f over [a, b].
double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

constexpr double kThetaStep = 1e-3;
constexpr double kEtaStep = 1e-3;

}  // namespace

KrausCoeffs kraus_coeffs(const LossChannel& ch) {
  check_eta(ch.eta);
  const double g1 = ch.gamma + 1.0;
  const double h1 = g1 * (1.0 - ch.eta) - 1.0;
  return {h1 * h1, g1 * g1 * (1.0 - ch.eta) * ch.eta};
}

double lossy_effective_qfi(const ProbeModel& model, double eta) {
  check_eta(eta);
  const auto k = kraus_coeffs({eta, 0.0});
  const double h = effective_qfi(model);
  if (k.h2 == 0.0) return k.abs_h1_sq * h;
  return k.abs_h1_sq * h + 4.0 * k.h2 * signal_photon(model);
}

double lossy_effective_qfi(const ProbeSpec& probe, double eta) { return lossy_effective_qfi(make_model(probe), eta); }

bool loss_enhanced_discriminant(const ProbeSpec& probe) {
  const auto q = quadratic(make_model(probe));
  return q.slope(1.0) < 0.0;
}

std::vector<ThetaInterval> lesr_interval_at(Family family, int m, int d, double amplitude, std::optional<int> s) {
  ProbeSpec p;
  p.family = family;
  p.amplitude = amplitude;
  p.m = m;
  p.d = d;
  p.s = s.value_or(d);
  if (is_partial(family) && !s) throw DomainError("lesr_interval: partial family needs s");
  if (!is_catalyzed(family)) {
    // No theta dependence: either everywhere or nowhere.
    if (loss_enhanced_discriminant(p)) return {{0.0, std::numbers::pi / 2, true}};
    return {};
  }
  // Positive inside the region.
  auto f = [&](double th) {
    ProbeSpec q = p;
    q.theta = th;
    const auto quad = quadratic(make_model(q));
    return 2.0 * quad.ns - quad.h;
  };
  const int n = static_cast<int>(std::floor((std::numbers::pi / 2 - kThetaLimitMargin) / kThetaStep));
  const auto values = parallel_map(static_cast<std::size_t>(n + 1), [&](std::size_t k) {
    return f(static_cast<double>(k) * kThetaStep);
  });
  std::vector<ThetaInterval> out;
  bool inside = values[0] > 0.0;
  double start = 0.0;
  for (int k = 1; k <= n; ++k) {
    const bool now = values[static_cast<std::size_t>(k)] > 0.0;
    if (now == inside) continue;
    const double edge = bisect(f, (k - 1) * kThetaStep, k * kThetaStep);
    if (now) {
      start = edge;
    } else {
      out.push_back({start, edge, false});
    }
    inside = now;
  }
  if (inside) out.push_back({start, std::numbers::pi / 2, true});
  return out;
}

std::vector<ThetaInterval> lesr_interval(Family family, int m, int d, double n_resource, std::optional<int> s) {
  const double amp = solve_amplitude_for_resource(n_resource, d, base_family(family));
  return lesr_interval_at(family, m, d, amp, s);
}

std::optional<double> crossover_eta(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref) {
  if (probe_cat.d != probe_ref.d) throw DomainError("crossover_eta: probes must share d");
  const auto qc = quadratic(make_model(probe_cat));
  const auto qr = quadratic(make_model(probe_ref));
  auto f = [&](double eta) { return qc.value(eta) - qr.value(eta); };
  const int n = static_cast<int>(std::lround(1.0 / kEtaStep));
  double hi = 1.0 - kEtaStep;
  double fhi = f(hi);
  for (int k = n - 2; k >= 1; --k) {
    const double lo = k * kEtaStep;
    const double flo = f(lo);
    if ((flo > 0.0) != (fhi > 0.0)) return bisect(f, lo, hi);
    hi = lo;
    fhi = flo;
  }
  return std::nullopt;
}

std::optional<double> critical_eta(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref) {
  if (probe_cat.d != probe_ref.d) throw DomainError("critical_eta: probes must share d");
  const auto qc = quadratic(make_model(probe_cat));
  const auto qr = quadratic(make_model(probe_ref));
  // Both conditions as "positive means inside".
  auto gain = [&](double eta) { return qc.value(eta) - qr.value(eta); };
  auto rising = [&](double eta) { return -qc.slope(eta); };
  auto inside = [&](double eta) { return gain(eta) > 0.0 && rising(eta) > 0.0; };

  const int n = static_cast<int>(std::lround(1.0 / kEtaStep));
  double eta_in = 1.0 - kEtaStep;
  if (!inside(eta_in)) return std::nullopt;
  for (int k = n - 2; k >= 1; --k) {
    const double eta = k * kEtaStep;
    if (inside(eta)) {
      eta_in = eta;
      continue;
    }
    // Refine on whichever condition fails first below eta_in.
    if (!(gain(eta) > 0.0)) return bisect(gain, eta, eta_in);
    return bisect(rising, eta, eta_in);
  }
  return eta_in;  // window reaches the bottom of the scan
}

LossMap lcbesr_map(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref, const std::vector<double>& theta_grid,
                   const std::vector<double>& eta_grid) {
  if (theta_grid.empty() || eta_grid.empty()) throw DomainError("lcbesr_map: empty grid");
  for (double eta : eta_grid) check_eta(eta);
  const auto qr = quadratic(make_model(probe_ref));
  LossMap map;
  map.theta_grid = theta_grid;
  map.eta_grid = eta_grid;
  const auto rows = parallel_map(theta_grid.size(), [&](std::size_t i) {
    ProbeSpec p = probe_cat;
    p.theta = theta_grid[i];
    const auto qc = quadratic(make_model(p));
    std::vector<LossMapCell> row;
    row.reserve(eta_grid.size());
    for (double eta : eta_grid) row.push_back({p.theta, eta, qc.value(eta) - qr.value(eta), qc.slope(eta) < 0.0});
    return row;
  });
  map.cells.reserve(theta_grid.size() * eta_grid.size());
  for (const auto& row : rows) map.cells.insert(map.cells.end(), row.begin(), row.end());
  return map;
}

}  // namespace catalynet

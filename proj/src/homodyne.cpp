#include "catalynet/homodyne.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "catalynet/error.hpp"

namespace catalynet {

ReadoutNetwork readout_matrix(int d) {
  if (d < 1) throw DomainError("readout_matrix: d must be at least 1");
  const int n = d + 1;
  ReadoutNetwork net;
  net.d = d;
  net.V.resize(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      // Reduce k*j modulo n first so the phase stays exact for large d.
      const double ang = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / n;
      net.V(k, j) = std::polar(scale, ang);
    }
  }
  return net;
}

namespace {

// <X> = Re[x0 + x1 e^{-i phi}],  <X^2> = y0 + Re[y1 e^{-i phi} + y2 e^{-2 i phi}].
struct Harmonics {
  cplx x0, x1;
  double y0;
  cplx y1, y2;
};

ProbeSpec coherent_partial(double alpha, double theta, int m, int d, int s) {
  ProbeSpec p;
  p.family = Family::pcwc;
  p.amplitude = alpha;
  p.theta = theta;
  p.m = m;
  p.d = d;
  p.s = s;
  return p;
}

// Partial catalysis on modes 0..s; s = d is global catalysis. The second
// moment uses the prefactor N'^2/(d+1) and constant 1/2 (vacuum noise) in
// front of the bracket built from A_3..A_7.
Harmonics harmonics(const ProbeSpec& spec) {
  const auto model = make_model(spec);
  const auto& c = model.catalyzed;
  const double alpha = spec.amplitude;
  const double d = spec.d;
  const double s = spec.s;
  const double e = model.plain.vacuum_overlap;  // e^{-alpha^2/2}
  const double lam = c.vacuum_overlap;
  const double eps = c.epsilon;
  const double om = c.omega;
  const double nn = std::pow(normalization(model), 2);
  const double nd = nn / std::sqrt(2.0 * (d + 1.0));
  const double r2 = std::numbers::sqrt2;

  const double a1 = c.a10 + s * eps * lam + (d - s) * eps * e;
  const double a2 = alpha * (1.0 + (d - s - 1.0) * e * e + (s + 1.0) * lam * e);
  const double a3 = c.a20 + r2 * s * lam * om + r2 * (d - s) * om * e;
  const double a4 = alpha * alpha * (1.0 + (d - s - 1.0) * e * e + (s + 1.0) * lam * e);
  const double a5 = s * eps * eps + (d - s) * eps * alpha * e;
  const double a6 = (s + 1.0) * (c.a11 - 1.0) + (d - s) * alpha * alpha + s * (s - 1.0) * eps * eps;
  const double a7 = (d - s) * e * (2.0 * s * alpha * eps + alpha * alpha * (d - s - 1.0) * e);

  Harmonics h{};
  h.x0 = 2.0 * nd * a1;
  h.x1 = 2.0 * nd * (s * a1 + (d - s) * a2);
  const double k = nn / (d + 1.0);
  h.y0 = 0.5 + k * (a6 + a7 + a3);
  h.y1 = 2.0 * k * a5;
  h.y2 = k * (s * a3 + (d - s) * a4);
  return h;
}

QuadratureMoments moments_from(const Harmonics& h, double phi) {
  const cplx e1 = std::polar(1.0, -phi);
  QuadratureMoments q;
  q.phase = phi;
  q.mean_x = std::real(h.x0 + h.x1 * e1);
  q.mean_x2 = h.y0 + std::real(h.y1 * e1 + h.y2 * e1 * e1);
  return q;
}

double sensitivity_from(const Harmonics& h, double phi) {
  const auto q = moments_from(h, phi);
  const double deriv = std::real(cplx{0.0, -1.0} * h.x1 * std::polar(1.0, -phi));
  if (std::abs(deriv) <= 1e-14 * std::max(1.0, std::abs(h.x1))) return std::numeric_limits<double>::infinity();
  return std::sqrt(std::max(q.variance(), 0.0)) / std::abs(deriv);
}

ProbeSpec as_partial(const ProbeSpec& probe) {
  probe.validate();
  switch (probe.family) {
    case Family::wc: return coherent_partial(probe.amplitude, 0.0, 0, probe.d, probe.d);
    case Family::cwc: return coherent_partial(probe.amplitude, probe.theta, probe.m, probe.d, probe.d);
    case Family::pcwc: return probe;
    default: throw DomainError("homodyne moments are available for coherent families only");
  }
}

}  // namespace

QuadratureMoments x_moments_global(double alpha, double theta, int m, int d, double phi_bar) {
  return moments_from(harmonics(coherent_partial(alpha, theta, m, d, d)), phi_bar);
}

QuadratureMoments x_moments_partial(double alpha, double theta, int m, int d, int s, double phi_bar) {
  return moments_from(harmonics(coherent_partial(alpha, theta, m, d, s)), phi_bar);
}

QuadratureMoments x_moments(const ProbeSpec& probe, double phi_bar) {
  return moments_from(harmonics(as_partial(probe)), phi_bar);
}

double x_mean_derivative(const ProbeSpec& probe, double phi_bar) {
  const auto h = harmonics(as_partial(probe));
  return std::real(cplx{0.0, -1.0} * h.x1 * std::polar(1.0, -phi_bar));
}

double phase_sensitivity(const ProbeSpec& probe, double phi_bar) {
  return sensitivity_from(harmonics(as_partial(probe)), phi_bar);
}

std::vector<std::pair<double, double>> sensitivity_curve(const ProbeSpec& probe, const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("sensitivity_curve: empty grid");
  const auto h = harmonics(as_partial(probe));
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double phi : grid) out.emplace_back(phi, sensitivity_from(h, phi));
  return out;
}

}  // namespace catalynet

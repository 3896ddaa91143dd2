#include "catalynet/probes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "catalynet/error.hpp"

namespace catalynet {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::wc: return "wc";
    case Family::cwc: return "cwc";
    case Family::pcwc: return "pcwc";
    case Family::ws: return "ws";
    case Family::cws: return "cws";
    case Family::pcws: return "pcws";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::wc, Family::cwc, Family::pcwc, Family::ws, Family::cws, Family::pcws}) {
    if (name == to_string(f)) return f;
  }
  throw DomainError("unknown probe family '" + std::string(name) + "'");
}

bool is_coherent(Family f) { return f == Family::wc || f == Family::cwc || f == Family::pcwc; }
bool is_catalyzed(Family f) { return f != Family::wc && f != Family::ws; }
bool is_partial(Family f) { return f == Family::pcwc || f == Family::pcws; }
Family base_family(Family f) { return is_coherent(f) ? Family::wc : Family::ws; }

void ProbeSpec::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw DomainError("amplitude must be finite and non-negative");
  if (d < 1) throw DomainError("d must be at least 1");
  if (is_catalyzed(family)) {
    if (m < 0) throw DomainError("catalytic photon number m must be non-negative");
    if (!(theta >= 0.0)) throw DomainError("theta must be non-negative");
    if (theta >= std::numbers::pi / 2 - kThetaLimitMargin) {
      throw DegenerateCatalysis("theta too close to pi/2: catalysis collapses onto vacuum");
    }
  }
  if (is_partial(family) && (s < 0 || s > d)) throw DomainError("s must lie in [0, d]");
}

int ProbeSpec::catalyzed_modes() const {
  if (!is_catalyzed(family)) return 0;
  return is_partial(family) ? s + 1 : d + 1;
}

bool ProbeSpec::mode_catalyzed(int j) const {
  if (!is_catalyzed(family)) return false;
  return is_partial(family) ? j <= s : true;
}

namespace {

void check_catalysis(double theta, int m) {
  if (m < 0) throw DomainError("catalytic photon number m must be non-negative");
  if (!(theta >= 0.0) || theta >= std::numbers::pi / 2 - kThetaLimitMargin) {
    throw DegenerateCatalysis("theta must lie in [0, pi/2)");
  }
}

// sum_{n,k} Pi^m_{n,k}(-mu, mu*) (-1)^q H_{p+n, q+k}(alpha_theta*, -alpha_theta),
// without the normalizer.
cplx hermite_sum(int q, int p, double alpha, double theta, int m) {
  const double c = std::cos(theta);
  const double t = std::tan(theta);
  const cplx mu = alpha * c * t * t;
  const cplx at = alpha * c;
  cplx sum{0.0, 0.0};
  for (int n = 0; n <= m; ++n) {
    for (int k = 0; k <= m; ++k) {
      sum += pi_coeff(m, n, k, -mu, std::conj(mu)) * hermite2(p + n, q + k, std::conj(at), -at);
    }
  }
  return (q % 2 == 0) ? sum : -sum;
}

struct SqueezedSeries {
  double d0, d1, d2;  // D_m(Delta/sqrt g), D_m(Delta/g^{3/2}), D_m(Delta h/g^{5/2})
};

SqueezedSeries squeezed_series(double r, double theta, int m) {
  const double b = std::cos(theta) * std::cos(theta) * std::tanh(r);
  const double th[] = {theta};
  const auto at = series_build(SeriesKind::a_t, th, m);
  const auto ct = series_build(SeriesKind::c_tau, th, m);
  const auto delta = series_build(SeriesKind::delta, {}, m);
  const auto x = series_scale(at * at * ct * ct, b * b);
  const auto one = BivariateSeries::constant(m, 1.0);
  const auto g = one - x;
  const auto h = BivariateSeries::constant(m, 2.0) + x;
  if (!(g.at(0, 0).real() > 0.0)) throw DomainError("squeezed series: non-positive constant term of g");
  SqueezedSeries s{};
  s.d0 = dm_eval(delta * series_powf(g, -0.5), m).real();
  s.d1 = dm_eval(delta * series_powf(g, -1.5), m).real();
  s.d2 = dm_eval(delta * h * series_powf(g, -2.5), m).real();
  return s;
}

}  // namespace

cplx cat_coherent_aqp(int q, int p, double alpha, double theta, int m) {
  if (q < 0 || p < 0) throw DomainError("A_qp: negative index");
  check_catalysis(theta, m);
  const cplx norm_inv = hermite_sum(0, 0, alpha, theta, m);
  if (!(norm_inv.real() > 1e-300)) throw DegenerateCatalysis("catalyzed coherent normalizer vanished");
  return hermite_sum(q, p, alpha, theta, m) / norm_inv;
}

cplx cat_squeezed_bpq(int p, int q, double r, double theta, int m) {
  check_catalysis(theta, m);
  if (p != q || p < 0 || p > 2) throw DomainError("B_pq implemented for (0,0), (1,1) and (2,2) only");
  const auto s = squeezed_series(r, theta, m);
  if (!(s.d0 > 1e-300)) throw DegenerateCatalysis("catalyzed squeezed normalizer vanished");
  if (p == 0) return 1.0;
  return (p == 1 ? s.d1 : s.d2) / s.d0;
}

SingleModeMoments coherent_moments(double alpha, double theta, int m) {
  check_catalysis(theta, m);
  if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
  SingleModeMoments mm;
  mm.squeezed = false;
  mm.amplitude = alpha;
  mm.theta = theta;
  mm.m = m;
  const double norm_inv = hermite_sum(0, 0, alpha, theta, m).real();
  if (!(norm_inv > 1e-300)) throw DegenerateCatalysis("catalyzed coherent normalizer vanished");
  const double nbar2 = 1.0 / norm_inv;
  const double a11 = hermite_sum(1, 1, alpha, theta, m).real() * nbar2;
  const double a22 = hermite_sum(2, 2, alpha, theta, m).real() * nbar2;
  mm.a10 = hermite_sum(1, 0, alpha, theta, m).real() * nbar2;
  mm.a20 = hermite_sum(2, 0, alpha, theta, m).real() * nbar2;
  mm.a11 = a11;
  mm.n1 = a11 - 1.0;
  mm.n2 = a22 - 3.0 * a11 + 1.0;
  mm.norm_closed_form = std::sqrt(nbar2);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // N-bar_m = cos^m theta exp(-alpha^2 sin^2 theta / 2) N_m
  const double n_m = mm.norm_closed_form / (std::pow(c, m) * std::exp(-0.5 * alpha * alpha * s * s));
  mm.catalysis_norm = 1.0 / n_m;
  const auto ov = overlaps_coherent(alpha, theta, m);
  mm.vacuum_overlap = ov.lambda;
  mm.epsilon = ov.epsilon;
  mm.omega = ov.omega;
  return mm;
}

CoherentOverlaps overlaps_coherent(double alpha, double theta, int m) {
  check_catalysis(theta, m);
  const double norm_inv = hermite_sum(0, 0, alpha, theta, m).real();
  if (!(norm_inv > 1e-300)) throw DegenerateCatalysis("catalyzed coherent normalizer vanished");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double t2 = std::tan(theta) * std::tan(theta);
  const double e = std::exp(-0.5 * alpha * alpha);
  const double n_m = 1.0 / (std::sqrt(norm_inv) * std::pow(c, m) * std::exp(-0.5 * alpha * alpha * s * s));
  CoherentOverlaps ov{};
  ov.lambda = n_m * std::pow(c, m) * e;
  // Fock weights of the catalysis operator are the normal-ordered Laguerre
  // values; for n = 1, 2 they differ from L_m(n tan^2) once m >= 2.
  ov.epsilon = n_m * normal_laguerre(1, m, t2) * std::pow(c, 1 + m) * e * alpha;
  ov.omega = n_m / std::numbers::sqrt2 * alpha * alpha * e * normal_laguerre(2, m, t2) * std::pow(c, 2 + m);
  return ov;
}

SingleModeMoments squeezed_moments(double r, double theta, int m) {
  check_catalysis(theta, m);
  if (!(r >= 0.0)) throw DomainError("squeezing r must be non-negative");
  SingleModeMoments mm;
  mm.squeezed = true;
  mm.amplitude = r;
  mm.theta = theta;
  mm.m = m;
  const auto s = squeezed_series(r, theta, m);
  if (!(s.d0 > 1e-300)) throw DegenerateCatalysis("catalyzed squeezed normalizer vanished");
  const double b11 = s.d1 / s.d0;
  const double b22 = s.d2 / s.d0;
  mm.a11 = b11;
  mm.n1 = b11 - 1.0;
  mm.n2 = b22 - 3.0 * b11 + 1.0;
  mm.norm_closed_form = 1.0 / std::sqrt(s.d0);  // N-tilde_m
  mm.vacuum_overlap = mm.norm_closed_form * factorial(m);
  // N-tilde_m = N'_m sqrt(sech r) cos^m theta / m!
  const double n_prime = mm.vacuum_overlap / (std::sqrt(1.0 / std::cosh(r)) * std::pow(std::cos(theta), m));
  mm.catalysis_norm = 1.0 / n_prime;
  return mm;
}

SingleModeMoments single_mode_moments(bool squeezed, double amplitude, double theta, int m) {
  return squeezed ? squeezed_moments(amplitude, theta, m) : coherent_moments(amplitude, theta, m);
}

ProbeModel make_model(const ProbeSpec& spec) {
  spec.validate();
  ProbeModel model;
  model.spec = spec;
  const bool sq = !is_coherent(spec.family);
  model.plain = single_mode_moments(sq, spec.amplitude, 0.0, 0);
  model.catalyzed = is_catalyzed(spec.family) ? single_mode_moments(sq, spec.amplitude, spec.theta, spec.m) : model.plain;
  return model;
}

ProbeModel ProbeModel::with_s(int new_s) const {
  ProbeModel out = *this;
  out.spec.s = new_s;
  out.spec.validate();
  return out;
}

double w_gram(const std::vector<double>& weights, const std::vector<double>& norms,
              const std::vector<double>& vacuum_overlaps) {
  const std::size_t n = weights.size();
  if (norms.size() != n || vacuum_overlaps.size() != n) throw DomainError("w_gram: size mismatch");
  double diag = 0.0;
  double lin = 0.0;
  double sq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    diag += weights[k] * weights[k] * norms[k] * norms[k];
    const double x = weights[k] * vacuum_overlaps[k];
    lin += x;
    sq += x * x;
  }
  return diag + lin * lin - sq;
}

double normalization(const ProbeModel& model) {
  const auto& sp = model.spec;
  const double d = sp.d;
  const double pl = model.plain.vacuum_overlap;
  const double ct = model.catalyzed.vacuum_overlap;
  double inv2 = 0.0;
  switch (sp.family) {
    case Family::wc:
    case Family::ws:
      inv2 = (d + 1.0) * (1.0 + d * pl * pl);
      break;
    case Family::cwc:
    case Family::cws:
      inv2 = (d + 1.0) * (1.0 + d * ct * ct);
      break;
    case Family::pcwc:
    case Family::pcws: {
      const double s = sp.s;
      inv2 = (s + 1.0) * (1.0 + s * ct * ct + (d - s) * pl * ct) +
             (d - s) * (1.0 + (d - s - 1.0) * pl * pl + (s + 1.0) * pl * ct);
      break;
    }
  }
  if (!(inv2 > 0.0)) throw DomainError("normalization: non-positive squared-norm sum");
  return 1.0 / std::sqrt(inv2);
}

double normalization(const ProbeSpec& probe) { return normalization(make_model(probe)); }

double mean_photon(const ProbeModel& model) {
  const auto& sp = model.spec;
  const double n2 = std::pow(normalization(model), 2);
  const int cat = sp.catalyzed_modes();
  const int plain = sp.d + 1 - cat;
  return n2 * (cat * model.catalyzed.n1 + plain * model.plain.n1);
}

double mean_photon(const ProbeSpec& probe) { return mean_photon(make_model(probe)); }

double signal_photon(const ProbeModel& model) {
  const auto& sp = model.spec;
  const double n2 = std::pow(normalization(model), 2);
  double sum = 0.0;
  for (int j = 1; j <= sp.d; ++j) sum += model.mode(j).n1;
  return n2 * sum;
}

double solve_amplitude_for_resource(double n_resource, int d, Family family) {
  if (!(n_resource > 0.0)) throw DomainError("resource N must be positive");
  if (family != Family::wc && family != Family::ws) throw DomainError("resource solver accepts wc or ws only");
  auto nbar = [&](double a) {
    ProbeSpec p;
    p.family = family;
    p.amplitude = a;
    p.d = d;
    return mean_photon(p);
  };
  double lo = 0.0;
  double hi = 1.0;
  constexpr double kCap = 1e3;
  while (nbar(hi) < n_resource) {
    lo = hi;
    hi *= 2.0;
    if (hi > kCap) throw SearchError("resource solver: N out of reach below amplitude cap");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = nbar(mid);
    if (v < n_resource) lo = mid;
    else hi = mid;
    if (hi - lo <= 4e-16 * hi) break;
  }
  const double a = 0.5 * (lo + hi);
  if (std::abs(nbar(a) - n_resource) > 1e-10) throw SearchError("resource solver did not converge");
  return a;
}

double squeezing_db(double r) {
  if (!(r >= 0.0)) throw DomainError("squeezing_db: r must be non-negative");
  return 10.0 * std::log10(std::exp(2.0 * r));
}

double squeezing_from_db(double db) {
  if (!(db >= 0.0)) throw DomainError("squeezing_from_db: dB must be non-negative");
  return db * std::log(10.0) / 20.0;
}

}  // namespace catalynet

#include "catalynet/metrics.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "catalynet/error.hpp"

namespace catalynet {

namespace {

// Photon-number statistics of the signal modes in the W branch picture:
// <n_j> = N^2 n1_j, <n_j^2> = N^2 n2_j, <n_i n_j> = 0 for i != j.
struct SignalStats {
  std::vector<double> n1;  // per signal mode 1..d
  std::vector<double> n2;
};

SignalStats signal_stats(const ProbeModel& model) {
  const double nn = std::pow(normalization(model), 2);
  SignalStats st;
  st.n1.reserve(static_cast<std::size_t>(model.spec.d));
  st.n2.reserve(static_cast<std::size_t>(model.spec.d));
  for (int j = 1; j <= model.spec.d; ++j) {
    st.n1.push_back(nn * model.mode(j).n1);
    st.n2.push_back(nn * model.mode(j).n2);
  }
  return st;
}

}  // namespace

Eigen::MatrixXd qfim(const ProbeModel& model) {
  const auto st = signal_stats(model);
  const int d = model.spec.d;
  Eigen::MatrixXd f(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double cross = (i == j) ? st.n2[static_cast<std::size_t>(i)] : 0.0;
      f(i, j) = 4.0 * (cross - st.n1[static_cast<std::size_t>(i)] * st.n1[static_cast<std::size_t>(j)]);
    }
  }
  return f;
}

Eigen::MatrixXd qfim(const ProbeSpec& probe) { return qfim(make_model(probe)); }

double weighted_qfi(const ProbeSpec& probe, const std::vector<double>& w) {
  if (static_cast<int>(w.size()) != probe.d) throw DomainError("weight vector length must equal d");
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw DomainError("weights must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");
  const Eigen::Map<const Eigen::VectorXd> v(w.data(), static_cast<Eigen::Index>(w.size()));
  return v.dot(qfim(probe) * v);
}

double effective_qfi(const ProbeModel& model) {
  const auto& sp = model.spec;
  const double nn = std::pow(normalization(model), 2);
  // Catalyzed signal modes: all d for global catalysis, s for partial.
  int cat_signal = 0;
  if (is_catalyzed(sp.family)) cat_signal = is_partial(sp.family) ? sp.s : sp.d;
  const int plain_signal = sp.d - cat_signal;
  const auto& c = model.catalyzed;
  const auto& p = model.plain;
  const double sum_n1 = cat_signal * c.n1 + plain_signal * p.n1;
  const double sum_n2 = cat_signal * c.n2 + plain_signal * p.n2;
  return 4.0 * (nn * sum_n2 - nn * nn * sum_n1 * sum_n1);
}

double effective_qfi(const ProbeSpec& probe) { return effective_qfi(make_model(probe)); }

double success_probability(const ProbeModel& model) {
  const auto& sp = model.spec;
  if (!is_catalyzed(sp.family)) return 1.0;
  ProbeSpec base = sp;
  base.family = base_family(sp.family);
  const double nu2 = std::pow(normalization(base), 2);

  // Every catalysis site that sees vacuum contributes cos^m theta; the excited
  // site contributes C|psi> (catalyzed) or |psi> (uncatalyzed).
  const int ncat = sp.catalyzed_modes();
  const double cm = std::pow(std::cos(sp.theta), sp.m);
  const double pl_vac = model.plain.vacuum_overlap;
  const std::size_t n = static_cast<std::size_t>(sp.d + 1);
  std::vector<double> weights(n), norms(n), vacs(n);
  for (int k = 0; k <= sp.d; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const bool cat = sp.mode_catalyzed(k);
    weights[i] = std::pow(cm, ncat - (cat ? 1 : 0));
    norms[i] = cat ? model.catalyzed.catalysis_norm : 1.0;
    vacs[i] = cat ? cm * pl_vac : pl_vac;
  }
  const double p = nu2 * w_gram(weights, norms, vacs);
  return std::min(p, 1.0);
}

double success_probability(const ProbeSpec& probe) { return success_probability(make_model(probe)); }

double gain_db(double h_new, double h_ref) {
  if (!(h_new > 0.0) || !(h_ref > 0.0)) throw DomainError("gain_db: inputs must be positive");
  return 10.0 * std::log10(h_new / h_ref);
}

double cooperation(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref) {
  if (probe_ref.family != base_family(probe_cat.family)) {
    throw DomainError("cooperation: reference must be the uncatalyzed family of the catalyzed probe");
  }
  if (probe_ref.d != probe_cat.d || probe_ref.amplitude != probe_cat.amplitude) {
    throw DomainError("cooperation: probes must share amplitude and d");
  }
  const auto model = make_model(probe_cat);
  return (effective_qfi(model) - effective_qfi(probe_ref)) * success_probability(model);
}

double single_mode_qfi(SingleModeKind kind, double amplitude, double theta, int m) {
  SingleModeMoments mm;
  switch (kind) {
    case SingleModeKind::coherent: mm = coherent_moments(amplitude, 0.0, 0); break;
    case SingleModeKind::squeezed: mm = squeezed_moments(amplitude, 0.0, 0); break;
    case SingleModeKind::cat_coherent: mm = coherent_moments(amplitude, theta, m); break;
    case SingleModeKind::cat_squeezed: mm = squeezed_moments(amplitude, theta, m); break;
  }
  return 4.0 * (mm.n2 - mm.n1 * mm.n1);
}

double weak_qcrb(double h) {
  if (!(h > 0.0)) throw DomainError("weak_qcrb: h must be positive");
  return 1.0 / std::sqrt(h);
}

MetricReport evaluate(const ProbeSpec& probe) {
  const auto model = make_model(probe);
  MetricReport r;
  r.H = effective_qfi(model);
  r.N_bar = mean_photon(model);
  r.P = success_probability(model);
  return r;
}

MetricReport evaluate(const ProbeSpec& probe, const ProbeSpec& reference) {
  MetricReport r = evaluate(probe);
  const double h_ref = effective_qfi(reference);
  r.G_db = gain_db(r.H, h_ref);
  r.R = (r.H - h_ref) * r.P;
  return r;
}

ModeScan optimal_catalysis_modes_at(int d, int m, double theta, double amplitude, Family family) {
  if (!is_partial(family)) throw DomainError("mode scan requires a partial family (pcwc or pcws)");
  ProbeSpec ref;
  ref.family = base_family(family);
  ref.amplitude = amplitude;
  ref.d = d;
  const double h_ref = effective_qfi(ref);

  ProbeSpec p = ref;
  p.family = family;
  p.theta = theta;
  p.m = m;
  p.s = 0;
  const auto model = make_model(p);

  ModeScan out;
  out.amplitude = amplitude;
  out.gains.resize(static_cast<std::size_t>(d + 1));
  for (int s = 0; s <= d; ++s) {
    const double g = gain_db(effective_qfi(model.with_s(s)), h_ref);
    out.gains[static_cast<std::size_t>(s)] = g;
    if (s == 0 || g > out.gain_db) {
      out.gain_db = g;
      out.s_opt = s;
    }
  }
  return out;
}

ModeScan optimal_catalysis_modes(int d, int m, double theta, double n_resource, Family family) {
  const double amp = solve_amplitude_for_resource(n_resource, d, base_family(family));
  return optimal_catalysis_modes_at(d, m, theta, amp, family);
}

ThetaOptimum optimize_theta(const ProbeSpec& probe_cat, const ProbeSpec& reference, int samples) {
  if (!is_catalyzed(probe_cat.family)) throw DomainError("optimize_theta: probe must be catalyzed");
  if (samples < 3) throw DomainError("optimize_theta: need at least 3 samples");
  const double h_ref = effective_qfi(reference);
  const double hi = std::numbers::pi / 2 - 1e-3;
  const double lo = 1e-3;
  auto gain_at = [&](double th) {
    ProbeSpec p = probe_cat;
    p.theta = th;
    return gain_db(effective_qfi(p), h_ref);
  };
  ThetaOptimum out;
  out.grid.resize(static_cast<std::size_t>(samples));
  out.values.resize(static_cast<std::size_t>(samples));
  std::size_t best = 0;
  for (int i = 0; i < samples; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.grid[k] = lo + (hi - lo) * i / (samples - 1);
    out.values[k] = gain_at(out.grid[k]);
    if (out.values[k] > out.values[best]) best = k;
  }
  const double a = out.grid[best == 0 ? 0 : best - 1];
  const double b = out.grid[std::min(best + 1, out.grid.size() - 1)];
  const auto r = boost::math::tools::brent_find_minima([&](double th) { return -gain_at(th); }, a, b, 40);
  if (-r.second >= out.values[best]) {
    out.theta = r.first;
    out.value = -r.second;
  } else {
    out.theta = out.grid[best];
    out.value = out.values[best];
  }
  return out;
}

}  // namespace catalynet

#include "figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "catalynet/homodyne.hpp"
#include "catalynet/loss.hpp"
#include "catalynet/metrics.hpp"
#include "catalynet/parallel.hpp"
#include "config.hpp"

namespace catalynet::app {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTheta5Pi12 = 5.0 * kPi / 12.0;
constexpr double kThetaPi3 = kPi / 3.0;
constexpr double kTheta11Pi25 = 11.0 * kPi / 25.0;

std::vector<double> linear(double a, double b, int n) { return GridSpec{a, b, n, Spacing::linear}.values(); }
std::vector<double> logspace(double a, double b, int n) { return GridSpec{a, b, n, Spacing::log}.values(); }
std::vector<int> range_int(int lo, int hi) {
  std::vector<int> v;
  for (int k = lo; k <= hi; ++k) v.push_back(k);
  return v;
}

ProbeSpec probe(Family f, double amp, double theta, int m, int d, int s = -1) {
  ProbeSpec p;
  p.family = f;
  p.amplitude = amp;
  p.d = d;
  p.s = s < 0 ? d : s;
  if (is_catalyzed(f)) {
    p.theta = theta;
    p.m = m;
  }
  return p;
}

double solver_amp(Family f, double n, int d) { return solve_amplitude_for_resource(n, d, base_family(f)); }
double quoted_amp(Family f) { return is_coherent(f) ? kQuotedAlpha : kQuotedR; }

double gain(const ProbeSpec& cat) {
  ProbeSpec ref = probe(base_family(cat.family), cat.amplitude, 0.0, 0, cat.d);
  return gain_db(effective_qfi(cat), effective_qfi(ref));
}

std::string name(Family f) { return std::string(to_string(f)); }

// Rows are evaluated concurrently and appended in index order.
Table tabulate(std::vector<std::string> columns, std::size_t n, const std::function<std::vector<double>(std::size_t)>& row) {
  Table t;
  t.columns = std::move(columns);
  auto rows = parallel_map(n, [&](std::size_t i) { return row(i); });
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

// Cartesian product helper: index -> (outer, inner).
template <class A, class B>
std::pair<A, B> split(std::size_t i, const std::vector<A>& outer, const std::vector<B>& inner) {
  return {outer[i / inner.size()], inner[i % inner.size()]};
}

std::optional<double> bisect_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  const double fb = f(b);
  if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
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

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// P_cat over the (N, theta) plane for each m.
FigureData success_surface(const std::string& id, Family fam, const std::vector<int>& ms) {
  FigureData fig;
  fig.id = id;
  fig.description = "success probability P_" + name(fam) + " over (N, theta), d = 5";
  fig.fixed = {{"family", name(fam)}, {"d", 5}, {"m", ms}};
  const auto ns = grids::n_surface();
  const auto ths = grids::theta_surface();
  const char* panel = "abcd";
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const int m = ms[k];
    Panel p{std::string(1, panel[k]), {}, "theta", "N", {"P"}, true};
    p.table = tabulate({"N", "theta", "P"}, ns.size() * ths.size(), [&](std::size_t i) {
      const auto [n, th] = split(i, ns, ths);
      return std::vector<double>{n, th, success_probability(probe(fam, solver_amp(fam, n, 5), th, m, 5))};
    });
    fig.panels.push_back(std::move(p));
  }
  return fig;
}

// Mean photon number versus theta (N = 1, both mappings) and versus N.
FigureData mean_photon_figure(const std::string& id, Family fam, const std::vector<int>& ms, double theta_b) {
  const Family base = base_family(fam);
  const std::string c = name(fam), b = name(base);
  FigureData fig;
  fig.id = id;
  fig.amplitude_mapping = "solver+quoted";
  fig.description = "mean photon number of " + c + " versus theta (N = 1) and versus N, d = 5";
  fig.fixed = {{"family", c}, {"d", 5}, {"m", ms}, {"n_resource_a", 1.0}, {"theta_b", theta_b}};
  const double a_sol = solver_amp(fam, 1.0, 5);
  const double a_quo = quoted_amp(fam);
  const auto ths = grids::theta();

  Panel pa{"a", {}, "theta", "m", {"N_bar_" + c + "_solver", "N_bar_" + c + "_quoted"}, false};
  pa.table = tabulate({"theta", "m", "N_bar_" + c + "_solver", "N_bar_" + c + "_quoted", "N_bar_" + b + "_solver",
                       "N_bar_" + b + "_quoted"},
                      ms.size() * ths.size(), [&](std::size_t i) {
                        const auto [m, th] = split(i, ms, ths);
                        return std::vector<double>{th,
                                                   static_cast<double>(m),
                                                   mean_photon(probe(fam, a_sol, th, m, 5)),
                                                   mean_photon(probe(fam, a_quo, th, m, 5)),
                                                   mean_photon(probe(base, a_sol, 0, 0, 5)),
                                                   mean_photon(probe(base, a_quo, 0, 0, 5))};
                      });
  fig.panels.push_back(std::move(pa));

  const auto ns = grids::n_resource();
  Panel pb{"b", {}, "N", "m", {"N_bar_" + c, "N_bar_" + b}, false};
  pb.table = tabulate({"N", "m", "N_bar_" + c, "N_bar_" + b}, ms.size() * ns.size(), [&](std::size_t i) {
    const auto [m, n] = split(i, ms, ns);
    const double a = solver_amp(fam, n, 5);
    return std::vector<double>{n, static_cast<double>(m), mean_photon(probe(fam, a, theta_b, m, 5)),
                               mean_photon(probe(base, a, 0, 0, 5))};
  });
  fig.panels.push_back(std::move(pb));
  return fig;
}

// Effective QFI (a-c) and gain (d-f) of global catalysis.
FigureData qfi_gain_figure(const std::string& id, Family fam, double theta0, int m_max, const std::vector<int>& ms_h,
                           const std::vector<int>& ms_g) {
  const std::string c = name(fam);
  FigureData fig;
  fig.id = id;
  fig.amplitude_mapping = "solver+quoted";
  fig.description = "H_" + c + " and G_" + c + "-" + name(base_family(fam)) + " versus m, theta and N";
  fig.fixed = {{"family", c}, {"theta", theta0}, {"n_resource", 1.0}, {"d_panels_ad", {1, 5, 10, 20}},
               {"d", 5}, {"m_panels_abc", ms_h}, {"m_panels_def", ms_g}};
  const double a_quo = quoted_amp(fam);
  const std::vector<int> ds = {1, 5, 10, 20};
  const auto ms_all = range_int(0, m_max);

  auto by_m = [&](bool want_gain) {
    return tabulate({"d", "m", want_gain ? "G_solver" : "H_solver", want_gain ? "G_quoted" : "H_quoted"},
                    ds.size() * ms_all.size(), [&](std::size_t i) {
                      const auto [d, m] = split(i, ds, ms_all);
                      const auto ps = probe(fam, solver_amp(fam, 1.0, d), theta0, m, d);
                      const auto pq = probe(fam, a_quo, theta0, m, d);
                      const double vs = want_gain ? gain(ps) : effective_qfi(ps);
                      const double vq = want_gain ? gain(pq) : effective_qfi(pq);
                      return std::vector<double>{static_cast<double>(d), static_cast<double>(m), vs, vq};
                    });
  };
  const auto ths = grids::theta();
  const double a5 = solver_amp(fam, 1.0, 5);
  auto by_theta = [&](bool want_gain, const std::vector<int>& ms) {
    return tabulate({"theta", "m", want_gain ? "G_solver" : "H_solver", want_gain ? "G_quoted" : "H_quoted"},
                    ms.size() * ths.size(), [&](std::size_t i) {
                      const auto [m, th] = split(i, ms, ths);
                      const auto ps = probe(fam, a5, th, m, 5);
                      const auto pq = probe(fam, a_quo, th, m, 5);
                      return std::vector<double>{th, static_cast<double>(m), want_gain ? gain(ps) : effective_qfi(ps),
                                                 want_gain ? gain(pq) : effective_qfi(pq)};
                    });
  };
  const auto ns = grids::n_resource();
  auto by_n = [&](bool want_gain, const std::vector<int>& ms) {
    return tabulate({"N", "m", want_gain ? "G" : "H"}, ms.size() * ns.size(), [&](std::size_t i) {
      const auto [m, n] = split(i, ms, ns);
      const auto p = probe(fam, solver_amp(fam, n, 5), theta0, m, 5);
      return std::vector<double>{n, static_cast<double>(m), want_gain ? gain(p) : effective_qfi(p)};
    });
  };
  fig.panels.push_back({"a", by_m(false), "m", "d", {"H_solver", "H_quoted"}, false});
  fig.panels.push_back({"b", by_theta(false, ms_h), "theta", "m", {"H_solver", "H_quoted"}, false});
  fig.panels.push_back({"c", by_n(false, ms_h), "N", "m", {"H"}, false});
  fig.panels.push_back({"d", by_m(true), "m", "d", {"G_solver", "G_quoted"}, false});
  fig.panels.push_back({"e", by_theta(true, ms_g), "theta", "m", {"G_solver", "G_quoted"}, false});
  fig.panels.push_back({"f", by_n(true, ms_g), "N", "m", {"G"}, false});
  return fig;
}

// Cooperation factor for global (a) and partial s = 1 (b) catalysis at d = 2.
FigureData cooperation_figure(const std::string& id, Family global, Family partial, const std::vector<int>& ms) {
  FigureData fig;
  fig.id = id;
  fig.amplitude_mapping = "solver+quoted";
  fig.description = "cooperation factor versus theta, N = 1, d = 2";
  fig.fixed = {{"d", 2}, {"s_partial", 1}, {"n_resource", 1.0}, {"m", ms}};
  const double a_sol = solver_amp(global, 1.0, 2);
  const double a_quo = quoted_amp(global);
  const auto ths = grids::theta_coop();
  auto panel = [&](Family fam, int s) {
    return tabulate({"theta", "m", "R_solver", "R_quoted"}, ms.size() * ths.size(), [&](std::size_t i) {
      const auto [m, th] = split(i, ms, ths);
      auto r = [&](double a) {
        return cooperation(probe(fam, a, th, m, 2, s), probe(base_family(fam), a, 0.0, 0, 2));
      };
      return std::vector<double>{th, static_cast<double>(m), r(a_sol), r(a_quo)};
    });
  };
  fig.panels.push_back({"a", panel(global, 2), "theta", "m", {"R_solver", "R_quoted"}, false});
  fig.panels.push_back({"b", panel(partial, 1), "theta", "m", {"R_solver", "R_quoted"}, false});
  return fig;
}

// Gain of partial catalysis versus the catalyzed-mode count at d = 20.
FigureData modes_figure(const std::string& id, Family fam, double theta, const std::vector<int>& ms) {
  FigureData fig;
  fig.id = id;
  fig.amplitude_mapping = "solver+quoted";
  fig.description = "G_" + name(fam) + "-" + name(base_family(fam)) + " versus s, d = 20, N = 1";
  fig.fixed = {{"family", name(fam)}, {"d", 20}, {"theta", theta}, {"n_resource", 1.0}, {"m", ms}};
  const double a_sol = solver_amp(fam, 1.0, 20);
  const double a_quo = quoted_amp(fam);
  std::vector<ModeScan> sol(ms.size()), quo(ms.size());
  for (std::size_t k = 0; k < ms.size(); ++k) {
    sol[k] = optimal_catalysis_modes_at(20, ms[k], theta, a_sol, fam);
    quo[k] = optimal_catalysis_modes_at(20, ms[k], theta, a_quo, fam);
  }
  Table t;
  t.columns = {"m", "s", "gain_db_solver", "gain_db_quoted"};
  json opt = json::array();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    for (int s = 0; s <= 20; ++s) {
      t.add_row({static_cast<double>(ms[k]), static_cast<double>(s), sol[k].gains[static_cast<std::size_t>(s)],
                 quo[k].gains[static_cast<std::size_t>(s)]});
    }
    opt.push_back({{"m", ms[k]},
                   {"s_opt_solver", sol[k].s_opt},
                   {"gain_db_solver", sol[k].gain_db},
                   {"s_opt_quoted", quo[k].s_opt},
                   {"gain_db_quoted", quo[k].gain_db}});
  }
  fig.panels.push_back({"", std::move(t), "s", "m", {"gain_db_solver", "gain_db_quoted"}, false});
  fig.annotations["optimal_modes"] = opt;
  return fig;
}

FigureData fig11() {
  FigureData fig;
  fig.id = "fig11";
  fig.description = "G_cws-cwc versus N, theta = pi/3, d = 5";
  const std::vector<int> ms = {0, 1, 4};
  fig.fixed = {{"theta", kThetaPi3}, {"d", 5}, {"m", ms}};
  auto g = [](double n, int m) {
    const auto s = probe(Family::cws, solver_amp(Family::cws, n, 5), kThetaPi3, m, 5);
    const auto c = probe(Family::cwc, solver_amp(Family::cwc, n, 5), kThetaPi3, m, 5);
    return gain_db(effective_qfi(s), effective_qfi(c));
  };
  const auto ns = grids::n_resource();
  Panel p{"", {}, "N", "m", {"G"}, false};
  p.table = tabulate({"N", "m", "G"}, ms.size() * ns.size(), [&](std::size_t i) {
    const auto [m, n] = split(i, ms, ns);
    return std::vector<double>{n, static_cast<double>(m), g(n, m)};
  });
  json roots = json::array();
  json maxima = json::object();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const int m = ms[k];
    double best = -1e300, best_n = 0.0;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      const double v = p.table.rows[k * ns.size() + j][2];
      if (v > best) {
        best = v;
        best_n = ns[j];
      }
      if (j > 0) {
        const double prev = p.table.rows[k * ns.size() + j - 1][2];
        if ((prev > 0.0) != (v > 0.0)) {
          const auto root = bisect_root([&](double n) { return g(n, m); }, ns[j - 1], ns[j]);
          roots.push_back({{"m", m}, {"N", opt_json(root)}});
        }
      }
    }
    maxima[std::to_string(m)] = {{"N", best_n}, {"G", best}};
  }
  fig.annotations["sign_changes"] = roots;
  fig.annotations["grid_maxima"] = maxima;
  fig.panels.push_back(std::move(p));
  return fig;
}

FigureData fig13() {
  FigureData fig;
  fig.id = "fig13";
  fig.amplitude_mapping = "solver+quoted";
  fig.description = "homodyne phase sensitivity versus phi, global (a) and partial s = 3 (b), d = 5, N = 1";
  const std::vector<int> ms = {5, 10, 15};
  fig.fixed = {{"theta", kTheta5Pi12}, {"d", 5}, {"s_partial", 3}, {"n_resource", 1.0}, {"m", ms}};
  const double a_sol = solver_amp(Family::cwc, 1.0, 5);
  const auto phis = grids::phi();
  auto panel = [&](Family fam, int s) {
    return tabulate({"phi", "m", "delta_phi_solver", "delta_phi_quoted", "qcrb_solver", "qcrb_quoted"},
                    ms.size() * phis.size(), [&](std::size_t i) {
                      const auto [m, phi] = split(i, ms, phis);
                      const auto ps = probe(fam, a_sol, kTheta5Pi12, m, 5, s);
                      const auto pq = probe(fam, kQuotedAlpha, kTheta5Pi12, m, 5, s);
                      return std::vector<double>{phi,
                                                 static_cast<double>(m),
                                                 phase_sensitivity(ps, phi),
                                                 phase_sensitivity(pq, phi),
                                                 weak_qcrb(effective_qfi(ps)),
                                                 weak_qcrb(effective_qfi(pq))};
                    });
  };
  fig.panels.push_back({"a", panel(Family::cwc, 5), "phi", "m", {"delta_phi_solver", "qcrb_solver"}, false});
  fig.panels.push_back({"b", panel(Family::pcwc, 3), "phi", "m", {"delta_phi_solver", "qcrb_solver"}, false});
  return fig;
}

json intervals_json(const std::vector<ThetaInterval>& iv) {
  json out = json::array();
  for (const auto& i : iv) out.push_back({{"lo", i.lo}, {"hi", i.hi}, {"open_above", i.open_above}});
  return out;
}

FigureData fig14() {
  FigureData fig;
  fig.id = "fig14";
  fig.description = "H_cat,l - H_wc,l over (theta, eta); global (a-c) and partial s = 19 (d-f), d = 20, N = 1/2";
  const std::vector<int> ms = {5, 10, 15};
  fig.fixed = {{"d", 20}, {"n_resource", 0.5}, {"s_partial", 19}, {"m", ms}};
  const double a = solver_amp(Family::cwc, 0.5, 20);
  const auto ths = grids::theta();
  const auto etas = grids::eta_map();
  const ProbeSpec ref = probe(Family::wc, a, 0.0, 0, 20);
  json lesr = json::object();
  const char* names = "abcdef";
  int idx = 0;
  for (Family fam : {Family::cwc, Family::pcwc}) {
    const int s = fam == Family::cwc ? 20 : 19;
    for (int m : ms) {
      const auto map = lcbesr_map(probe(fam, a, 0.0, m, 20, s), ref, ths, etas);
      Table t;
      t.columns = {"theta", "eta", "delta_h", "in_lesr", "dual"};
      for (const auto& c : map.cells) {
        t.add_row({c.theta, c.eta, c.delta_h, c.in_lesr ? 1.0 : 0.0, c.dual() ? 1.0 : 0.0});
      }
      const std::string pname(1, names[idx++]);
      fig.panels.push_back({pname, std::move(t), "eta", "theta", {"delta_h"}, true});
      lesr[pname] = {{"family", name(fam)}, {"m", m}, {"s", s},
                     {"intervals", intervals_json(lesr_interval_at(fam, m, 20, a, s))}};
    }
  }
  fig.annotations["lesr_intervals"] = lesr;
  return fig;
}

FigureData fig15() {
  FigureData fig;
  fig.id = "fig15";
  fig.description = "lossy effective QFI versus eta, d = 20, m = 5, N = 1/2, s = 19";
  fig.fixed = {{"d", 20}, {"m", 5}, {"n_resource", 0.5}, {"s_partial", 19}, {"theta_a", kTheta11Pi25},
               {"theta_b", kThetaPi3}};
  const auto etas = grids::eta();
  json notes = json::object();
  auto panel = [&](const std::string& pname, Family base, Family global, Family partial, double theta) {
    const double a = solver_amp(base, 0.5, 20);
    const auto pb = make_model(probe(base, a, 0.0, 0, 20));
    const auto pg = make_model(probe(global, a, theta, 5, 20));
    const auto pp = make_model(probe(partial, a, theta, 5, 20, 19));
    const std::string b = name(base), g = name(global), p = name(partial);
    Table t;
    t.columns = {"eta", "H_" + b + "_l", "H_" + g + "_l", "H_" + p + "_l"};
    for (double eta : etas) {
      t.add_row({eta, lossy_effective_qfi(pb, eta), lossy_effective_qfi(pg, eta), lossy_effective_qfi(pp, eta)});
    }
    fig.panels.push_back({pname, std::move(t), "eta", "", {"H_" + b + "_l", "H_" + g + "_l", "H_" + p + "_l"}, false});
    notes[pname] = {{"crossover_eta_global", opt_json(crossover_eta(pg.spec, pb.spec))},
                    {"crossover_eta_partial", opt_json(crossover_eta(pp.spec, pb.spec))},
                    {"critical_eta_global", opt_json(critical_eta(pg.spec, pb.spec))},
                    {"critical_eta_partial", opt_json(critical_eta(pp.spec, pb.spec))}};
  };
  panel("a", Family::wc, Family::cwc, Family::pcwc, kTheta11Pi25);
  panel("b", Family::ws, Family::cws, Family::pcws, kThetaPi3);
  notes["a"]["published_global"] = 0.798;
  notes["a"]["published_partial"] = 0.899;
  fig.annotations = notes;
  return fig;
}

FigureData figS2() {
  FigureData fig;
  fig.id = "figS2";
  fig.description = "single-mode QFI versus m, 50:50 beam splitter";
  const double r = 0.8814;
  fig.fixed = {{"alpha", 1.0}, {"r", r}, {"theta", kPi / 4}};
  const auto ms = range_int(0, 20);
  Table a, b;
  a.columns = {"m", "F_cat_coherent", "F_coherent"};
  b.columns = {"m", "F_cat_squeezed", "F_squeezed"};
  for (int m : ms) {
    a.add_row({static_cast<double>(m), single_mode_qfi(SingleModeKind::cat_coherent, 1.0, kPi / 4, m),
               single_mode_qfi(SingleModeKind::coherent, 1.0, 0.0, 0)});
    b.add_row({static_cast<double>(m), single_mode_qfi(SingleModeKind::cat_squeezed, r, kPi / 4, m),
               single_mode_qfi(SingleModeKind::squeezed, r, 0.0, 0)});
  }
  fig.panels.push_back({"a", std::move(a), "m", "", {"F_cat_coherent", "F_coherent"}, false});
  fig.panels.push_back({"b", std::move(b), "m", "", {"F_cat_squeezed", "F_squeezed"}, false});
  return fig;
}

std::size_t column_index(const Table& t, const std::string& c) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), c);
  if (it == t.columns.end()) throw std::logic_error("no column " + c);
  return static_cast<std::size_t>(it - t.columns.begin()) + 1;  // gnuplot counts from 1
}

std::string panel_file(const FigureData& fig, const Panel& p) { return fig.id + p.name + ".csv"; }

}  // namespace

namespace grids {
std::vector<double> theta() { return linear(0.0, 1.55, 156); }
std::vector<double> theta_coop() { return linear(1.0, 1.55, 111); }
std::vector<double> n_resource() { return logspace(0.01, 10.0, 121); }
std::vector<double> n_surface() { return logspace(0.05, 3.0, 60); }
std::vector<double> theta_surface() { return linear(0.0, 1.5, 31); }
std::vector<double> eta() { return linear(0.0, 1.0, 1001); }
std::vector<double> eta_map() { return linear(0.0, 1.0, 101); }
std::vector<double> phi() { return linear(0.0, 2.0 * kPi, 721); }
}  // namespace grids

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2",  "fig3",  "fig4",  "fig5",  "fig6",  "fig7",  "fig8", "fig9",
                                               "fig10", "fig11", "fig12", "fig13", "fig14", "fig15", "figS2"};
  return ids;
}

FigureData build_figure(const std::string& id) {
  if (id == "fig2") return success_surface(id, Family::cwc, {1, 5, 10, 15});
  if (id == "fig3") return mean_photon_figure(id, Family::cwc, {1, 5, 10, 20}, kTheta5Pi12);
  if (id == "fig4") return qfi_gain_figure(id, Family::cwc, kTheta5Pi12, 20, {1, 5, 10, 15}, {5, 10, 15, 20});
  if (id == "fig5") return cooperation_figure(id, Family::cwc, Family::pcwc, {5, 6, 7});
  if (id == "fig6") return modes_figure(id, Family::pcwc, kTheta5Pi12, {1, 5, 10, 15, 20});
  if (id == "fig7") return success_surface(id, Family::cws, {1, 4, 6, 8});
  if (id == "fig8") return mean_photon_figure(id, Family::cws, {1, 4, 6, 8}, kThetaPi3);
  if (id == "fig9") return qfi_gain_figure(id, Family::cws, kThetaPi3, 12, {1, 4, 6, 8}, {4, 6, 8});
  if (id == "fig10") return cooperation_figure(id, Family::cws, Family::pcws, {4, 5, 6});
  if (id == "fig11") return fig11();
  if (id == "fig12") return modes_figure(id, Family::pcws, kThetaPi3, {1, 4, 6, 8});
  if (id == "fig13") return fig13();
  if (id == "fig14") return fig14();
  if (id == "fig15") return fig15();
  if (id == "figS2") return figS2();
  throw std::invalid_argument("unknown figure id '" + id + "'");
}

json sidecar(const FigureData& fig, const std::vector<std::string>& csv_files) {
  json panels = json::array();
  for (std::size_t k = 0; k < fig.panels.size(); ++k) {
    const auto& p = fig.panels[k];
    panels.push_back({{"name", p.name},
                      {"file", k < csv_files.size() ? csv_files[k] : panel_file(fig, p)},
                      {"columns", p.table.columns},
                      {"rows", p.table.rows.size()}});
  }
  return {{"figure", fig.id},
          {"description", fig.description},
          {"version", CATALYNET_VERSION},
          {"amplitude_mapping",
           {{"mode", fig.amplitude_mapping},
            {"solver", "amplitude solves the uncatalyzed resource equation at the captioned d"},
            {"quoted_alpha", kQuotedAlpha},
            {"quoted_r", kQuotedR}}},
          {"fixed", fig.fixed},
          {"panels", panels},
          {"annotations", fig.annotations}};
}

std::string gnuplot_script(const FigureData& fig) {
  std::ostringstream gp;
  gp << "# gnuplot script for " << fig.id << "\n"
     << "set datafile separator ','\n"
     << "set terminal pngcairo size 900,650\n"
     << "set key outside right\n";
  for (const auto& p : fig.panels) {
    const std::string file = panel_file(fig, p);
    gp << "\nset output '" << fig.id << p.name << ".png'\n"
       << "set xlabel '" << p.x << "'\n";
    const auto xi = column_index(p.table, p.x);
    if (p.surface) {
      const auto yi = column_index(p.table, p.group);
      const auto zi = column_index(p.table, p.y.front());
      gp << "set ylabel '" << p.group << "'\n"
         << "set view map\n"
         << "splot '" << file << "' using " << xi << ':' << yi << ':' << zi << " with points pt 5 ps 0.6 palette notitle\n"
         << "unset view\n";
      continue;
    }
    gp << "unset ylabel\nplot ";
    bool first = true;
    std::vector<double> groups;
    if (!p.group.empty()) {
      const auto gi = column_index(p.table, p.group) - 1;
      for (const auto& row : p.table.rows) {
        if (std::find(groups.begin(), groups.end(), row[gi]) == groups.end()) groups.push_back(row[gi]);
      }
    }
    for (const auto& y : p.y) {
      const auto yi = column_index(p.table, y);
      if (groups.empty()) {
        gp << (first ? "" : ", \\\n     ") << "'" << file << "' using " << xi << ':' << yi << " with lines title '" << y
           << "'";
        first = false;
        continue;
      }
      const auto gi = column_index(p.table, p.group);
      for (double g : groups) {
        gp << (first ? "" : ", \\\n     ") << "'" << file << "' using " << xi << ":($" << gi << "==" << format_number(g)
           << " ? $" << yi << " : 1/0) with lines title '" << y << ' ' << p.group << '=' << format_number(g) << "'";
        first = false;
      }
    }
    gp << "\n";
  }
  return gp.str();
}

std::vector<std::string> write_figure(const FigureData& fig, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> csvs, written;
  for (const auto& p : fig.panels) {
    const std::string path = (fs::path(out_dir) / panel_file(fig, p)).string();
    write_csv(path, p.table);
    csvs.push_back(panel_file(fig, p));
    written.push_back(path);
  }
  const std::string js = (fs::path(out_dir) / (fig.id + ".json")).string();
  write_json(js, sidecar(fig, csvs));
  written.push_back(js);
  const std::string gp = (fs::path(out_dir) / (fig.id + ".gp")).string();
  write_text(gp, gnuplot_script(fig));
  written.push_back(gp);
  return written;
}

}  // namespace catalynet::app

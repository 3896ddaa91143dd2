#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>

#include "catalynet/error.hpp"
#include "catalynet/homodyne.hpp"
#include "catalynet/loss.hpp"
#include "catalynet/metrics.hpp"
#include "catalynet/parallel.hpp"
#include "figures.hpp"

namespace catalynet::app {

using nlohmann::json;

namespace {

ProbeSettings at_point(ProbeSettings ps, const std::string& parameter, double v) {
  if (parameter == "theta") ps.theta = v;
  else if (parameter == "m") ps.m = static_cast<int>(std::lround(v));
  else if (parameter == "d") ps.d = static_cast<int>(std::lround(v));
  else if (parameter == "s") ps.s = static_cast<int>(std::lround(v));
  else if (parameter == "amplitude") ps.amplitude = v;
  else if (parameter == "n_resource") {
    ps.n_resource = v;
    ps.amplitude.reset();
  } else if (parameter == "eta") ps.eta = v;
  else if (parameter == "phi") ps.phi = v;
  return ps;
}

// The reference shares d; it shares the amplitude when the probe's amplitude
// is explicit and otherwise solves the same resource equation for its own
// input light.
ProbeSpec reference_spec(const ProbeSettings& ps, const ProbeSpec& probe, const ReferenceBlock& rb) {
  ProbeSettings r = ps;
  r.family = rb.family;
  r.theta = is_catalyzed(rb.family) ? rb.theta : 0.0;
  r.m = is_catalyzed(rb.family) ? rb.m : 0;
  r.s = rb.s;
  if (ps.amplitude || base_family(rb.family) == base_family(ps.family)) r.amplitude = probe.amplitude;
  return r.spec();
}

std::vector<double> eval_point(const SweepConfig& cfg, double v) {
  const ProbeSettings ps = at_point(cfg.probe, cfg.parameter, v);
  const ProbeSpec p = ps.spec();
  p.validate();
  const ProbeModel model = make_model(p);
  std::optional<ProbeModel> ref;
  if (cfg.reference) ref = make_model(reference_spec(ps, p, *cfg.reference));
  std::vector<double> row{v};
  for (const auto& o : cfg.outputs) {
    if (o == "H") row.push_back(effective_qfi(model));
    else if (o == "N_bar") row.push_back(mean_photon(model));
    else if (o == "P") row.push_back(success_probability(model));
    else if (o == "G") row.push_back(gain_db(effective_qfi(model), effective_qfi(*ref)));
    else if (o == "R") row.push_back((effective_qfi(model) - effective_qfi(*ref)) * success_probability(model));
    else if (o == "delta_phi") row.push_back(phase_sensitivity(p, ps.phi));
    else if (o == "H_l") row.push_back(lossy_effective_qfi(model, ps.eta));
  }
  return row;
}

json settings_json(const ProbeSettings& ps) {
  json j = {{"family", std::string(to_string(ps.family))}, {"theta", ps.theta}, {"m", ps.m}, {"d", ps.d},
            {"s", ps.s}, {"amplitude", ps.resolved_amplitude()}};
  if (!ps.amplitude) j["n_resource"] = ps.n_resource;
  return j;
}

json interval_array(const std::vector<ThetaInterval>& iv) {
  json out = json::array();
  for (const auto& i : iv) out.push_back({{"lo", i.lo}, {"hi", i.hi}, {"open_above", i.open_above}});
  return out;
}

void emit(const json& j, const std::string& out, std::ostream& log) {
  if (out.empty()) {
    log << j.dump(2) << "\n";
  } else {
    write_json(out, j);
    log << "wrote " << out << "\n";
  }
}

char* fmt(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.3e", v);
  return buf;
}

}  // namespace

Table run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const auto grid = cfg.grid.values();
  Table t;
  t.columns.push_back(cfg.parameter);
  for (const auto& o : cfg.outputs) t.columns.push_back(o);
  auto rows = parallel_map(grid.size(), [&](std::size_t i) { return eval_point(cfg, grid[i]); });
  for (auto& r : rows) t.add_row(std::move(r));
  return t;
}

OptimizeKind parse_optimize_kind(const std::string& s) {
  if (s == "modes") return OptimizeKind::modes;
  if (s == "theta") return OptimizeKind::theta;
  if (s == "eta_crossover") return OptimizeKind::eta_crossover;
  if (s == "lesr") return OptimizeKind::lesr;
  throw ConfigError("unknown optimize kind '" + s + "' (expected modes, theta, eta_crossover or lesr)");
}

json run_optimize(OptimizeKind kind, const ProbeSettings& ps, std::optional<Family> reference) {
  const Family ref_family = reference.value_or(base_family(ps.family));
  const double amp = ps.resolved_amplitude();
  json out = {{"parameters", settings_json(ps)}};
  switch (kind) {
    case OptimizeKind::modes: {
      if (!is_partial(ps.family)) throw ConfigError("--family: modes search needs pcwc or pcws");
      const auto scan = optimal_catalysis_modes_at(ps.d, ps.m, ps.theta, amp, ps.family);
      json grid = json::array();
      for (int s = 0; s <= ps.d; ++s) grid.push_back(s);
      out["kind"] = "modes";
      out["optimum"] = {{"s", scan.s_opt}};
      out["objective"] = {{"name", "gain_db"}, {"value", scan.gain_db}};
      out["grid"] = grid;
      out["values"] = scan.gains;
      break;
    }
    case OptimizeKind::theta: {
      if (!is_catalyzed(ps.family)) throw ConfigError("--family: theta search needs a catalyzed family");
      ProbeSpec cat = ps.spec();
      ProbeSettings rs = ps;
      rs.family = ref_family;
      rs.theta = 0.0;
      rs.m = 0;
      if (base_family(ref_family) == base_family(ps.family)) rs.amplitude = amp;
      const auto opt = optimize_theta(cat, rs.spec());
      out["kind"] = "theta";
      out["reference"] = std::string(to_string(ref_family));
      out["optimum"] = {{"theta", opt.theta}};
      out["objective"] = {{"name", "gain_db"}, {"value", opt.value}};
      out["grid"] = opt.grid;
      out["values"] = opt.values;
      break;
    }
    case OptimizeKind::eta_crossover: {
      const ProbeSpec cat = ps.spec();
      ProbeSettings rs = ps;
      rs.family = ref_family;
      rs.theta = 0.0;
      rs.m = 0;
      if (base_family(ref_family) == base_family(ps.family)) rs.amplitude = amp;
      const ProbeSpec ref = rs.spec();
      const auto mc = make_model(cat);
      const auto mr = make_model(ref);
      const auto grid = grids::eta();
      std::vector<double> values;
      values.reserve(grid.size());
      for (double e : grid) values.push_back(lossy_effective_qfi(mc, e) - lossy_effective_qfi(mr, e));
      const auto x = crossover_eta(cat, ref);
      const auto c = critical_eta(cat, ref);
      out["kind"] = "eta_crossover";
      out["reference"] = std::string(to_string(ref_family));
      out["optimum"] = {{"eta", x ? json(*x) : json(nullptr)}, {"critical_eta", c ? json(*c) : json(nullptr)}};
      out["objective"] = {{"name", "H_cat_l - H_ref_l"}, {"value", x ? json(0.0) : json(nullptr)}};
      out["grid"] = grid;
      out["values"] = values;
      break;
    }
    case OptimizeKind::lesr: {
      std::optional<int> s;
      if (is_partial(ps.family)) s = ps.s;
      const auto iv = lesr_interval_at(ps.family, ps.m, ps.d, amp, s);
      const auto grid = grids::theta();
      std::vector<double> values;
      values.reserve(grid.size());
      for (double th : grid) {
        ProbeSettings q = ps;
        q.theta = th;
        q.amplitude = amp;
        const auto model = make_model(q.spec());
        values.push_back(2.0 * signal_photon(model) - effective_qfi(model));
      }
      out["kind"] = "lesr";
      out["optimum"] = {{"intervals", interval_array(iv)}};
      out["objective"] = {{"name", "2 N_s - H"}, {"value", nullptr}};
      out["grid"] = grid;
      out["values"] = values;
      break;
    }
  }
  return out;
}

json validation_json(const ValidationReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"quantity", e.quantity},
                       // Infinite when a closed form could not be evaluated at some point.
                       {"worst_rel_error", std::isfinite(e.worst_rel_error) ? json(e.worst_rel_error) : json(nullptr)},
                       {"worst_point", e.worst_point},
                       {"samples", e.samples},
                       {"passed", e.worst_rel_error <= report.tolerance}});
  }
  return {{"level", report.level},     {"tolerance", report.tolerance}, {"passed", report.passed()},
          {"points", report.points},   {"seconds", report.seconds},     {"entries", entries},
          {"version", CATALYNET_VERSION}};
}

int cmd_figure(const std::vector<std::string>& ids, const std::string& out_dir, std::ostream& log) {
  std::vector<std::string> todo;
  for (const auto& id : ids) {
    if (id == "all") {
      todo.insert(todo.end(), figure_ids().begin(), figure_ids().end());
      continue;
    }
    if (std::find(figure_ids().begin(), figure_ids().end(), id) == figure_ids().end()) {
      throw ConfigError("unknown figure id '" + id + "'");
    }
    todo.push_back(id);
  }
  for (const auto& id : todo) {
    const auto files = write_figure(build_figure(id), out_dir);
    log << id << ": " << files.size() << " files in " << out_dir << "\n";
  }
  return kOk;
}

int cmd_sweep(const SweepConfig& cfg, std::ostream& log) {
  const Table t = run_sweep(cfg);
  std::string text = cfg.format == "json" ? to_json(t).dump(2) + "\n" : to_csv(t);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_text(cfg.out, text);
    log << "wrote " << t.rows.size() << " rows to " << cfg.out << "\n";
  }
  return kOk;
}

int cmd_optimize(OptimizeKind kind, const ProbeSettings& probe, std::optional<Family> reference,
                 const std::string& out, std::ostream& log) {
  emit(run_optimize(kind, probe, reference), out, log);
  return kOk;
}

int cmd_validate(ValidationLevel level, const std::string& out, std::ostream& log) {
  const auto report = run_validation(level);
  char buf[32];
  log << "validation (" << report.level << "): " << report.points << " points, " << report.seconds << " s\n";
  for (const auto& e : report.entries) {
    log << "  " << e.quantity << std::string(e.quantity.size() < 20 ? 20 - e.quantity.size() : 1, ' ')
        << fmt(buf, sizeof buf, e.worst_rel_error) << (e.worst_rel_error <= report.tolerance ? "  ok    " : "  FAIL  ")
        << e.worst_point << "\n";
  }
  if (!out.empty()) write_json(out, validation_json(report));
  log << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? kOk : kValidationFailure;
}

}  // namespace catalynet::app

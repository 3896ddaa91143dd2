#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "catalynet/error.hpp"
#include "json.hpp"

namespace catalynet::app {

using nlohmann::json;

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return v;
  v.front() = start;
  if (count == 1) return v;
  const double n = static_cast<double>(count - 1);
  for (int k = 1; k < count - 1; ++k) {
    const double t = static_cast<double>(k) / n;
    v[static_cast<std::size_t>(k)] = spacing == Spacing::linear
                                         ? start + (stop - start) * t
                                         : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
  }
  v.back() = stop;
  return v;
}

double ProbeSettings::resolved_amplitude() const {
  if (amplitude) return *amplitude;
  return solve_amplitude_for_resource(n_resource, d, base_family(family));
}

ProbeSpec ProbeSettings::spec() const {
  ProbeSpec p;
  p.family = family;
  p.theta = theta;
  p.m = m;
  p.d = d;
  p.s = is_partial(family) ? s : d;
  p.amplitude = resolved_amplitude();
  return p;
}

namespace {

// Diagnostics carry the document line of the offending key when it can be
// located; the JSON pointer is always given.
class Reader {
 public:
  Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (const int line = line_of(pointer); line > 0) os << ':' << line;
    os << ": field " << pointer << ": " << what;
    throw ConfigError(os.str());
  }

  int line_of(const std::string& pointer) const {
    const auto slash = pointer.find_last_of('/');
    if (slash == std::string::npos || slash + 1 >= pointer.size()) return 0;
    const std::string key = "\"" + pointer.substr(slash + 1) + "\"";
    const auto pos = text_.find(key);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "must be finite");
    return v;
  }

  int integer(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected an integer");
    const double v = j.get<double>();
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(ptr, "expected an integer");
    return static_cast<int>(v);
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  Family family(const json& j, const std::string& ptr) const {
    const auto name = string(j, ptr);
    try {
      return parse_family(name);
    } catch (const DomainError&) {
      fail(ptr, "unknown family '" + name + "' (expected wc, cwc, pcwc, ws, cws or pcws)");
    }
  }

  void only_keys(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(ptr.empty() ? "/" : ptr, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(ptr + "/" + key, "unknown field");
    }
  }

  ProbeSettings probe(const json& doc) const {
    ProbeSettings p;
    if (doc.contains("family")) p.family = family(doc["family"], "/family");
    if (!doc.contains("fixed")) return p;
    const json& f = doc["fixed"];
    only_keys(f, "/fixed", {"theta", "m", "d", "s", "amplitude", "n_resource", "eta", "phi"});
    if (f.contains("theta")) p.theta = number(f["theta"], "/fixed/theta");
    if (f.contains("m")) p.m = integer(f["m"], "/fixed/m");
    if (f.contains("d")) p.d = integer(f["d"], "/fixed/d");
    if (f.contains("s")) p.s = integer(f["s"], "/fixed/s");
    if (f.contains("amplitude")) p.amplitude = number(f["amplitude"], "/fixed/amplitude");
    if (f.contains("n_resource")) p.n_resource = number(f["n_resource"], "/fixed/n_resource");
    if (f.contains("amplitude") && f.contains("n_resource")) {
      fail("/fixed/amplitude", "give either amplitude or n_resource, not both");
    }
    if (f.contains("eta")) p.eta = number(f["eta"], "/fixed/eta");
    if (f.contains("phi")) p.phi = number(f["phi"], "/fixed/phi");
    return p;
  }

  json parse() const {
    try {
      return json::parse(text_);
    } catch (const json::parse_error& e) {
      // byte offsets are 1-based and point just past the offending character
      const auto upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text_.size());
      const int line = 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
      throw ConfigError(source_ + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
    }
  }

 private:
  std::string_view text_;
  std::string source_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void check_probe(const ProbeSettings& p) {
  if (p.d < 1) throw ConfigError("field /fixed/d: must be >= 1");
  if (p.m < 0) throw ConfigError("field /fixed/m: must be >= 0");
  if (is_partial(p.family) && (p.s < 0 || p.s > p.d)) throw ConfigError("field /fixed/s: must lie in [0, d]");
  if (p.amplitude && *p.amplitude < 0.0) throw ConfigError("field /fixed/amplitude: must be >= 0");
  if (!p.amplitude && p.n_resource <= 0.0) throw ConfigError("field /fixed/n_resource: must be > 0");
  if (p.eta < 0.0 || p.eta > 1.0) throw ConfigError("field /fixed/eta: must lie in [0, 1]");
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text, const std::string& source) {
  const Reader r(text, source);
  const json doc = r.parse();
  r.only_keys(doc, "", {"family", "fixed", "sweep", "outputs", "reference", "out", "format"});

  SweepConfig cfg;
  cfg.probe = r.probe(doc);

  if (!doc.contains("sweep")) r.fail("/sweep", "missing");
  const json& sw = doc["sweep"];
  r.only_keys(sw, "/sweep", {"parameter", "start", "stop", "count", "spacing"});
  for (const char* key : {"parameter", "start", "stop", "count"}) {
    if (!sw.contains(key)) r.fail(std::string("/sweep/") + key, "missing");
  }
  cfg.parameter = r.string(sw["parameter"], "/sweep/parameter");
  if (std::find(kSweepParameters.begin(), kSweepParameters.end(), cfg.parameter) == kSweepParameters.end()) {
    r.fail("/sweep/parameter", "unknown parameter '" + cfg.parameter + "'");
  }
  cfg.grid.start = r.number(sw["start"], "/sweep/start");
  cfg.grid.stop = r.number(sw["stop"], "/sweep/stop");
  cfg.grid.count = r.integer(sw["count"], "/sweep/count");
  if (sw.contains("spacing")) {
    const auto sp = r.string(sw["spacing"], "/sweep/spacing");
    if (sp == "linear") cfg.grid.spacing = Spacing::linear;
    else if (sp == "log") cfg.grid.spacing = Spacing::log;
    else r.fail("/sweep/spacing", "expected 'linear' or 'log'");
  }
  if (cfg.grid.count < 1) r.fail("/sweep/count", "must be >= 1");
  if (cfg.grid.spacing == Spacing::log && (cfg.grid.start <= 0.0 || cfg.grid.stop <= 0.0)) {
    r.fail("/sweep/start", "log spacing needs positive endpoints");
  }

  if (!doc.contains("outputs")) r.fail("/outputs", "missing");
  if (!doc["outputs"].is_array()) r.fail("/outputs", "expected an array");
  for (std::size_t i = 0; i < doc["outputs"].size(); ++i) {
    const auto ptr = "/outputs/" + std::to_string(i);
    const auto name = r.string(doc["outputs"][i], ptr);
    if (std::find(kSweepOutputs.begin(), kSweepOutputs.end(), name) == kSweepOutputs.end()) {
      r.fail("/outputs", "unknown output '" + name + "'");
    }
    cfg.outputs.push_back(name);
  }

  if (doc.contains("reference")) {
    const json& ref = doc["reference"];
    r.only_keys(ref, "/reference", {"family", "theta", "m", "s"});
    ReferenceBlock rb;
    if (!ref.contains("family")) r.fail("/reference/family", "missing");
    rb.family = r.family(ref["family"], "/reference/family");
    if (ref.contains("theta")) rb.theta = r.number(ref["theta"], "/reference/theta");
    if (ref.contains("m")) rb.m = r.integer(ref["m"], "/reference/m");
    if (ref.contains("s")) rb.s = r.integer(ref["s"], "/reference/s");
    cfg.reference = rb;
  }
  if (doc.contains("out")) cfg.out = r.string(doc["out"], "/out");
  if (doc.contains("format")) cfg.format = r.string(doc["format"], "/format");

  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) { return parse_sweep_config(slurp(path), path); }

ProbeSettings load_probe_settings(const std::string& path) {
  const std::string text = slurp(path);
  const Reader r(text, path);
  const json doc = r.parse();
  if (!doc.is_object()) r.fail("/", "expected an object");
  ProbeSettings p = r.probe(doc);
  check_probe(p);
  return p;
}

void apply_overrides(ProbeSettings& p, const Overrides& o) {
  if (o.family) {
    try {
      p.family = parse_family(*o.family);
    } catch (const DomainError&) {
      throw ConfigError("--family: unknown family '" + *o.family + "'");
    }
  }
  if (o.theta) p.theta = *o.theta;
  if (o.m) p.m = *o.m;
  if (o.d) p.d = *o.d;
  if (o.s) p.s = *o.s;
  if (o.n_resource) {
    p.n_resource = *o.n_resource;
    p.amplitude.reset();
  }
  if (o.eta) p.eta = *o.eta;
}

void apply_overrides(SweepConfig& cfg, const Overrides& o) {
  apply_overrides(cfg.probe, o);
  if (o.out) cfg.out = *o.out;
  if (o.format) cfg.format = *o.format;
}

void validate(const SweepConfig& cfg) {
  check_probe(cfg.probe);
  if (cfg.grid.count < 1) throw ConfigError("field /sweep/count: must be >= 1");
  if (cfg.outputs.empty()) throw ConfigError("field /outputs: at least one output is required");
  const bool wants_ref = std::any_of(cfg.outputs.begin(), cfg.outputs.end(),
                                     [](const std::string& o) { return o == "G" || o == "R"; });
  if (wants_ref && !cfg.reference) throw ConfigError("field /reference: outputs G and R need a reference block");
  if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("field /format: expected 'csv' or 'json'");
  if (cfg.parameter == "m" || cfg.parameter == "d" || cfg.parameter == "s") {
    for (double v : cfg.grid.values()) {
      if (v != std::round(v)) throw ConfigError("field /sweep: integer parameter '" + cfg.parameter + "' needs integral grid values");
    }
  }
  const bool delta_phi = std::find(cfg.outputs.begin(), cfg.outputs.end(), "delta_phi") != cfg.outputs.end();
  if (delta_phi && !is_coherent(cfg.probe.family)) {
    throw ConfigError("field /outputs: delta_phi is defined for coherent families only");
  }
}

}  // namespace catalynet::app

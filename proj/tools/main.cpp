#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catalynet/error.hpp"
#include "commands.hpp"

using namespace catalynet;
using namespace catalynet::app;

namespace {

// Flags shared by `sweep` and `optimize`.
struct ProbeFlags {
  std::string config;
  Overrides o;
  std::optional<double> amplitude;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON config file");
    cmd->add_option("--family", o.family, "wc, cwc, pcwc, ws, cws or pcws");
    cmd->add_option("--theta", o.theta, "catalysis beam-splitter angle");
    cmd->add_option("--m", o.m, "catalytic photon number");
    cmd->add_option("--d", o.d, "number of encoded phases");
    cmd->add_option("--s", o.s, "partial catalysis: modes 0..s are catalyzed");
    cmd->add_option("--n-resource", o.n_resource, "input resource N (amplitude from the resource equation)");
    cmd->add_option("--eta", o.eta, "transmittance for H_l");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed multiphase sensing with catalyzed W-type probes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CATALYNET_VERSION));

  auto* fig = app.add_subcommand("figure", "write figure datasets (CSV + JSON sidecar + gnuplot script)");
  std::vector<std::string> fig_ids;
  std::string fig_out = "figures";
  fig->add_option("ids", fig_ids, "figure ids (fig2 .. fig15, figS2) or 'all'")->required();
  fig->add_option("--out-dir", fig_out, "output directory");

  auto* sweep = app.add_subcommand("sweep", "evaluate metrics over a parameter grid");
  ProbeFlags sweep_flags;
  sweep_flags.attach(sweep);
  std::optional<std::string> sweep_format;
  sweep->add_option("--format", sweep_format, "csv or json");
  sweep->get_option("--config")->required();

  auto* opt = app.add_subcommand("optimize", "optimal modes, theta, eta crossover or LESR interval");
  ProbeFlags opt_flags;
  opt_flags.attach(opt);
  std::string opt_kind;
  std::optional<std::string> opt_ref;
  opt->add_option("kind", opt_kind, "modes, theta, eta_crossover or lesr")->required();
  opt->add_option("--amplitude", opt_flags.amplitude, "explicit alpha or r (overrides --n-resource)");
  opt->add_option("--reference", opt_ref, "reference family (default: the uncatalyzed family)");

  auto* val = app.add_subcommand("validate", "compare closed forms with the Fock-space oracle");
  std::string level = "fast";
  std::string val_out;
  val->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  val->add_option("--out", val_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*fig) return cmd_figure(fig_ids, fig_out, std::cerr);
    if (*sweep) {
      SweepConfig cfg = load_sweep_config(sweep_flags.config);
      sweep_flags.o.format = sweep_format;
      apply_overrides(cfg, sweep_flags.o);
      validate(cfg);
      return cmd_sweep(cfg, std::cerr);
    }
    if (*opt) {
      const auto kind = parse_optimize_kind(opt_kind);
      ProbeSettings ps = opt_flags.config.empty() ? ProbeSettings{} : load_probe_settings(opt_flags.config);
      apply_overrides(ps, opt_flags.o);
      if (opt_flags.amplitude) ps.amplitude = opt_flags.amplitude;
      std::optional<Family> ref;
      if (opt_ref) {
        try {
          ref = parse_family(*opt_ref);
        } catch (const DomainError&) {
          throw ConfigError("--reference: unknown family '" + *opt_ref + "'");
        }
      }
      return cmd_optimize(kind, ps, ref, opt_flags.o.out.value_or(""), std::cerr);
    }
    if (*val) {
      return cmd_validate(level == "full" ? ValidationLevel::full : ValidationLevel::fast, val_out, std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const catalynet::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catalynet/probes.hpp"

namespace catalynet::app {

// Invalid configuration. The message names the field (as a JSON pointer) and,
// when the text is available, the line it sits on.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Spacing { linear, log };

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  Spacing spacing = Spacing::linear;

  // Endpoints are reproduced exactly; count == 1 yields {start}.
  std::vector<double> values() const;
};

// Probe parameters shared by `sweep` and `optimize`. When `amplitude` is
// unset, the amplitude solves the uncatalyzed resource equation at d.
struct ProbeSettings {
  Family family = Family::cwc;
  double theta = 0.0;
  int m = 0;
  int d = 1;
  int s = 0;
  std::optional<double> amplitude;
  double n_resource = 1.0;
  double eta = 1.0;
  double phi = 0.0;

  double resolved_amplitude() const;
  ProbeSpec spec() const;
};

struct ReferenceBlock {
  Family family = Family::wc;
  double theta = 0.0;
  int m = 0;
  int s = 0;
};

struct SweepConfig {
  ProbeSettings probe;
  std::string parameter = "theta";
  GridSpec grid;
  std::vector<std::string> outputs;
  std::optional<ReferenceBlock> reference;
  std::string out;
  std::string format = "csv";
};

// Long-name flag overrides; unset members leave the config untouched.
struct Overrides {
  std::optional<std::string> family;
  std::optional<double> theta;
  std::optional<int> m;
  std::optional<int> d;
  std::optional<int> s;
  std::optional<double> n_resource;
  std::optional<double> eta;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

inline const std::vector<std::string> kSweepParameters = {"theta", "m", "d", "s", "amplitude", "n_resource", "eta", "phi"};
inline const std::vector<std::string> kSweepOutputs = {"H", "N_bar", "P", "G", "R", "delta_phi", "H_l"};

// Parses a JSON document. `source` labels diagnostics (usually the path).
SweepConfig parse_sweep_config(std::string_view text, const std::string& source = "<config>");
SweepConfig load_sweep_config(const std::string& path);
// Reads only the probe block ("family" and "fixed") of a config document.
ProbeSettings load_probe_settings(const std::string& path);

void apply_overrides(ProbeSettings& probe, const Overrides& o);
void apply_overrides(SweepConfig& cfg, const Overrides& o);

// Cross-field checks; throws ConfigError.
void validate(const SweepConfig& cfg);

}  // namespace catalynet::app

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catalynet/oracle.hpp"
#include "config.hpp"
#include "json.hpp"
#include "output.hpp"

namespace catalynet::app {

// Process exit codes. I/O failures that are not configuration problems use
// kIoError.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kValidationFailure = 3;
inline constexpr int kDomainError = 4;

// Evaluates the configured grid; rows follow grid order.
Table run_sweep(const SweepConfig& cfg);

enum class OptimizeKind { modes, theta, eta_crossover, lesr };
OptimizeKind parse_optimize_kind(const std::string& s);

// `reference` defaults to the uncatalyzed family of probe.family.
nlohmann::json run_optimize(OptimizeKind kind, const ProbeSettings& probe, std::optional<Family> reference = {});

nlohmann::json validation_json(const ValidationReport& report);

// Commands print a short summary to `log` and return an exit code. They
// throw ConfigError / DomainError for the caller to map.
int cmd_figure(const std::vector<std::string>& ids, const std::string& out_dir, std::ostream& log);
int cmd_sweep(const SweepConfig& cfg, std::ostream& log);
int cmd_optimize(OptimizeKind kind, const ProbeSettings& probe, std::optional<Family> reference,
                 const std::string& out, std::ostream& log);
int cmd_validate(ValidationLevel level, const std::string& out, std::ostream& log);

}  // namespace catalynet::app

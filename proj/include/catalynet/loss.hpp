#pragma once

#include <optional>
#include <vector>

#include "catalynet/probes.hpp"

namespace catalynet {

// Uniform photon loss on the phase-bearing modes. eta = 1 means lossless;
// gamma is the loss-position constant (the lossy QFI uses gamma = 0).
struct LossChannel {
  double eta = 1.0;
  double gamma = 0.0;
};

struct KrausCoeffs {
  double abs_h1_sq;  // |h1|^2, h1 = i[(gamma+1)(1-eta) - 1]
  double h2;         // (gamma+1)^2 (1-eta) eta
};

KrausCoeffs kraus_coeffs(const LossChannel& ch);

// Purification bound |h1|^2 H + 4 h2 N_s, with N_s the mean photon number
// on the signal modes. Quadratic in eta; equals H at eta = 1.
double lossy_effective_qfi(const ProbeSpec& probe, double eta);
double lossy_effective_qfi(const ProbeModel& model, double eta);

// True when lowering eta just below 1 raises the lossy QFI (H < 2 N_s).
bool loss_enhanced_discriminant(const ProbeSpec& probe);

struct ThetaInterval {
  double lo;
  double hi;
  bool open_above = false;  // region continues up to pi/2
};

// Theta intervals of the loss-enhanced-sensitivity region. The amplitude
// solves the uncatalyzed resource equation at d; s is used by partial
// families only.
std::vector<ThetaInterval> lesr_interval(Family family, int m, int d, double n_resource,
                                         std::optional<int> s = std::nullopt);
std::vector<ThetaInterval> lesr_interval_at(Family family, int m, int d, double amplitude,
                                            std::optional<int> s = std::nullopt);

// Largest root in (0, 1) of H_cat,l(eta) - H_ref,l(eta), or nullopt.
std::optional<double> crossover_eta(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref);

// Lower end of the dual-enhanced window along eta: the smallest eta such that
// on [eta, 1) the catalyzed probe beats the reference and its lossy QFI still
// grows as eta decreases. nullopt when the window is empty.
std::optional<double> critical_eta(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref);

struct LossMapCell {
  double theta;
  double eta;
  double delta_h;  // H_cat,l - H_ref,l
  bool in_lesr;    // d H_cat,l / d eta < 0 at this point
  bool dual() const { return delta_h > 0.0 && in_lesr; }
};

struct LossMap {
  std::vector<double> theta_grid;
  std::vector<double> eta_grid;
  std::vector<LossMapCell> cells;  // theta-major
};

// probe_cat supplies family, m, d, s and amplitude; its theta is swept.
LossMap lcbesr_map(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref, const std::vector<double>& theta_grid,
                   const std::vector<double>& eta_grid);

}  // namespace catalynet

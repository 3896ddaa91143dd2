#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "catalynet/fock.hpp"
#include "catalynet/homodyne.hpp"
#include "catalynet/probes.hpp"

namespace catalynet {

// Result of one literal catalysis: input (x) ancilla |m>, beam splitter,
// projection of the ancilla onto |m>.
struct SingleModeCatalysis {
  FockVector state;    // normalized output
  double probability;  // squared norm of the heralded branch, ||C psi||^2
};

SingleModeCatalysis catalyze_literal(const FockVector& input, double theta, int m);

// Cutoff used by the oracle for a single-mode input: coherent states use the
// default rule; squeezed states use the smallest even cutoff whose
// n^2-weighted tail is below 1e-11 of <n^2>.
int oracle_cutoff(bool squeezed, double amplitude);

struct OracleProbe {
  FockVector state;            // normalized equal-weight probe over d+1 modes
  double success_prob = 1.0;   // physical heralding probability
  double normalization = 1.0;  // multimode normalization constant of `state`
  SingleModeCatalysis excited; // catalyzed single-mode excitation (or the input)
  FockVector input;            // uncatalyzed single-mode excitation
};

// Builds the probe by literal simulation. Requires d <= 3 and m <= 3.
// cutoff = 0 picks oracle_cutoff.
OracleProbe build_probe_fock(const ProbeSpec& probe, int cutoff = 0);

struct LiteralProbe {
  FockVector state;  // normalized post-selected state over d+1 modes
  double success_prob;
};
// Fully literal construction: the W state is built first, then one ancilla
// per catalyzed mode is attached, mixed and projected in sequence. The state
// space grows with every ancilla, so this is meant for d = 1 cross-checks.
LiteralProbe build_probe_fock_literal(const ProbeSpec& probe, int cutoff = 0);

double oracle_effective_qfi(const FockVector& state, int d);
Eigen::MatrixXd oracle_qfim(const FockVector& state, int d);
double oracle_mean_photon(const FockVector& state);
double oracle_signal_photon(const FockVector& state, int d);
QuadratureMoments oracle_homodyne(const FockVector& state, int d, double phi_bar);
double oracle_lossy_qfi(const FockVector& state, int d, double eta);

// Three-rail single-photon protocol that entangles three squeezed modes.
struct WsqResult {
  FockVector state;                // heralded three-mode squeezed state
  double fidelity = 0.0;           // |<target|state>|^2
  double herald_prob = 0.0;        // single photon on rail 1
  std::array<double, 3> rail_probs{};
  double constraint_residual = 0.0;
};

WsqResult simulate_wsq_generation(const std::array<double, 4>& angles, double r, int cutoff = 0);

struct WsqOptimum {
  std::array<double, 4> angles{};
  double model_fidelity = 0.0;  // from the single-photon transfer amplitudes
  WsqResult result;
};
// Searches the angles that balance the three branches (unit fidelity in the
// single-photon amplitude model) for the largest herald probability, then
// simulates the protocol in Fock space at that setting.
WsqOptimum optimize_wsq_generation(double r, int cutoff = 0);

enum class ValidationLevel { fast, full };

struct ValidationEntry {
  std::string quantity;
  double worst_rel_error = 0.0;
  std::string worst_point;
  int samples = 0;
};

struct ValidationReport {
  std::string level;
  double tolerance = 1e-8;
  std::vector<ValidationEntry> entries;
  int points = 0;
  double seconds = 0.0;
  bool passed() const;
};

// Compares every analytic quantity with its oracle counterpart on the
// product grid of families, d, m, theta and amplitudes.
ValidationReport run_validation(ValidationLevel level);

}  // namespace catalynet

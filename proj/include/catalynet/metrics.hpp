#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "catalynet/probes.hpp"

namespace catalynet {

// H, mean photons, success probability and, when a reference probe is given,
// the gain (dB) and the cooperation factor.
struct MetricReport {
  double H = 0.0;
  double N_bar = 0.0;
  double P = 1.0;
  std::optional<double> G_db;
  std::optional<double> R;
};

// Amplitudes that the figure captions quote for N = 1.
inline constexpr double kQuotedAlpha = 1.4686;
inline constexpr double kQuotedR = 1.5501;

// d x d quantum Fisher information matrix over the signal modes 1..d.
Eigen::MatrixXd qfim(const ProbeSpec& probe);
Eigen::MatrixXd qfim(const ProbeModel& model);

// w^T F w; w must have d non-negative entries summing to 1.
double weighted_qfi(const ProbeSpec& probe, const std::vector<double>& w);

double effective_qfi(const ProbeSpec& probe);
double effective_qfi(const ProbeModel& model);

// Joint heralding probability of every m-photon detection of the catalysis
// network (1 for wc and ws).
double success_probability(const ProbeSpec& probe);
double success_probability(const ProbeModel& model);

double gain_db(double h_new, double h_ref);
// (H_cat - H_ref) * P_cat. The reference must be the uncatalyzed family with
// the same amplitude and d.
double cooperation(const ProbeSpec& probe_cat, const ProbeSpec& probe_ref);

enum class SingleModeKind { coherent, squeezed, cat_coherent, cat_squeezed };
double single_mode_qfi(SingleModeKind kind, double amplitude, double theta, int m);

// Standard-deviation form of the weak quantum Cramer-Rao bound, 1/sqrt(h).
double weak_qcrb(double h);

MetricReport evaluate(const ProbeSpec& probe);
MetricReport evaluate(const ProbeSpec& probe, const ProbeSpec& reference);

struct ModeScan {
  int s_opt = 0;
  double gain_db = 0.0;
  std::vector<double> gains;  // indexed by s = 0..d
  double amplitude = 0.0;
};

// Exhaustive scan of the partial-catalysis count. The amplitude solves the
// uncatalyzed resource equation N_bar = N at d; ties go to the smaller s.
ModeScan optimal_catalysis_modes(int d, int m, double theta, double n_resource, Family family);
// Same scan at an explicitly given amplitude.
ModeScan optimal_catalysis_modes_at(int d, int m, double theta, double amplitude, Family family);

struct ThetaOptimum {
  double theta = 0.0;
  double value = 0.0;
  std::vector<double> grid;
  std::vector<double> values;
};

// Maximizes gain_db(H(cat at theta), H(reference)) over theta in (0, pi/2):
// coarse scan with `samples` points, then Brent refinement around the best
// sample. The catalyzed probe's theta field is overwritten.
ThetaOptimum optimize_theta(const ProbeSpec& probe_cat, const ProbeSpec& reference, int samples = 1571);

}  // namespace catalynet

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "catalynet/special_fn.hpp"

namespace catalynet {

enum class Family { wc, cwc, pcwc, ws, cws, pcws };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);  // throws DomainError on unknown names

bool is_coherent(Family f);
bool is_catalyzed(Family f);
bool is_partial(Family f);
// The uncatalyzed family with the same input light (wc for coherent, ws for squeezed).
Family base_family(Family f);

// One probe: family, amplitude (alpha >= 0 for coherent, r >= 0 for squeezed),
// catalysis beam-splitter angle theta in [0, pi/2), catalytic photon number m,
// d encoded phases on modes 1..d (mode 0 is the reference) and, for partial
// families, modes 0..s are catalyzed.
struct ProbeSpec {
  Family family = Family::wc;
  double amplitude = 1.0;
  double theta = 0.0;
  int m = 0;
  int d = 1;
  int s = 0;

  void validate() const;  // throws DomainError
  // Number of catalyzed modes among 0..d.
  int catalyzed_modes() const;
  bool mode_catalyzed(int j) const;
};

// Moments of a single-mode (possibly catalyzed) coherent or squeezed state.
struct SingleModeMoments {
  bool squeezed = false;
  double amplitude = 0.0;
  double theta = 0.0;
  int m = 0;
  // Closed-form normalizer: N-bar_m (coherent) or N-tilde_m (squeezed).
  double norm_closed_form = 1.0;
  // Norm of the unnormalized catalyzed vector C|psi>, i.e. 1/N_m or 1/N'_m.
  double catalysis_norm = 1.0;
  double vacuum_overlap = 1.0;  // <0|psi'>
  double n1 = 0.0;              // <n>
  double n2 = 0.0;              // <n^2>
  // Coherent only: A_10 = <a>, A_20 = <a^2>, A_11 = <a a^dag>, and the
  // one- and two-photon overlaps <1|psi'>, <2|psi'>.
  double a10 = 0.0;
  double a20 = 0.0;
  double a11 = 1.0;
  double epsilon = 0.0;
  double omega = 0.0;
};

// theta at or beyond this bound raises DegenerateCatalysis.
inline constexpr double kThetaLimitMargin = 1e-6;

// <psi'| a^q a^dag^p |psi'> for the catalyzed coherent state from the
// two-variable Hermite closed form, normalized so A_00 = 1.
cplx cat_coherent_aqp(int q, int p, double alpha, double theta, int m);
// <psi_s'| a^p a^dag^q |psi_s'> for the catalyzed squeezed vacuum; supports
// (p, q) in {(0,0), (1,1), (2,2)} through the bivariate series machinery.
cplx cat_squeezed_bpq(int p, int q, double r, double theta, int m);

struct CoherentOverlaps {
  double lambda;   // <0|psi'>
  double epsilon;  // <1|psi'>
  double omega;    // <2|psi'>
};
CoherentOverlaps overlaps_coherent(double alpha, double theta, int m);

SingleModeMoments coherent_moments(double alpha, double theta, int m);
SingleModeMoments squeezed_moments(double r, double theta, int m);
SingleModeMoments single_mode_moments(bool squeezed, double amplitude, double theta, int m);

// Multimode description used by every analytic formula: per-mode single-mode
// states of an equal-weight W superposition, indexed 0..d.
struct ProbeModel {
  ProbeSpec spec;
  SingleModeMoments plain;      // uncatalyzed excitation
  SingleModeMoments catalyzed;  // catalyzed excitation (equals plain for wc/ws)

  const SingleModeMoments& mode(int j) const {
    return spec.mode_catalyzed(j) ? catalyzed : plain;
  }
  // Same single-mode data with a different partial-catalysis count.
  ProbeModel with_s(int s) const;
};

ProbeModel make_model(const ProbeSpec& spec);

// Squared-norm sum of a weighted W superposition:
//   sum_k w_k^2 |v_k|^2 + sum_{k != l} w_k w_l <v_k|0><0|v_l>.
double w_gram(const std::vector<double>& weights, const std::vector<double>& norms,
              const std::vector<double>& vacuum_overlaps);

// Multimode normalization constant of the family.
double normalization(const ProbeSpec& probe);
double normalization(const ProbeModel& model);

// Mean total photon number over all d+1 modes.
double mean_photon(const ProbeSpec& probe);
double mean_photon(const ProbeModel& model);
// Mean photon number summed over the signal modes 1..d.
double signal_photon(const ProbeModel& model);

// Inverts the uncatalyzed resource map amplitude -> mean photon number.
double solve_amplitude_for_resource(double n_resource, int d, Family family);

double squeezing_db(double r);
double squeezing_from_db(double db);

}  // namespace catalynet

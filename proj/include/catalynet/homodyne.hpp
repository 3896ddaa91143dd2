#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "catalynet/probes.hpp"

namespace catalynet {

// Linear network that mixes the d+1 probe modes into outputs
// c_k = sum_j V_kj a_j. Output 0 is the equal-weight superposition.
struct ReadoutNetwork {
  int d = 1;
  Eigen::MatrixXcd V;
};

ReadoutNetwork readout_matrix(int d);

// First and second moments of X = (c_0 + c_0^dag)/sqrt(2) at phase phi_bar.
struct QuadratureMoments {
  double mean_x = 0.0;
  double mean_x2 = 0.0;
  double phase = 0.0;
  double variance() const { return mean_x2 - mean_x * mean_x; }
};

// Every phase is encoded symmetrically (phi_j = phi_bar on modes 1..d).
QuadratureMoments x_moments_global(double alpha, double theta, int m, int d, double phi_bar);
QuadratureMoments x_moments_partial(double alpha, double theta, int m, int d, int s, double phi_bar);

// Moments of the given coherent-family probe (wc, cwc or pcwc).
QuadratureMoments x_moments(const ProbeSpec& probe, double phi_bar);
// d<X>/d phi_bar in closed form.
double x_mean_derivative(const ProbeSpec& probe, double phi_bar);

// Error-propagation sensitivity sqrt(Var X)/|d<X>/d phi_bar|. Returns +inf
// where the derivative vanishes.
double phase_sensitivity(const ProbeSpec& probe, double phi_bar);

std::vector<std::pair<double, double>> sensitivity_curve(const ProbeSpec& probe, const std::vector<double>& grid);

}  // namespace catalynet

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "catalynet/special_fn.hpp"

namespace catalynet {

// Dense state on a truncated multimode Fock space. Mode 0 is the slowest
// index: amps[sum_j n_j * stride(j)] with stride(j) = prod_{k>j}(cutoff_k + 1).
struct FockVector {
  std::vector<int> cutoffs;
  std::vector<cplx> amps;
  // Norm that fell outside the cutoff when the state was constructed
  // (before renormalization).
  double leakage = 0.0;
  // Set by linear-optics operations when amplitude sits within two quanta of
  // a cutoff, where truncation error becomes possible.
  bool truncation_warning = false;

  int modes() const { return static_cast<int>(cutoffs.size()); }
  std::size_t size() const { return amps.size(); }
  std::size_t stride(int mode) const;
  std::size_t index(std::span<const int> ns) const;
  cplx amplitude(std::span<const int> ns) const { return amps[index(ns)]; }
  double norm2() const;
  bool normalized(double tol = 1e-10) const;
};

inline constexpr double kLeakageTarget = 1e-12;
inline constexpr double kLeakageLimit = 1e-8;

FockVector vacuum(std::vector<int> cutoffs);
FockVector basis_state(std::vector<int> cutoffs, std::span<const int> ns);
// Single-mode state from explicit amplitudes (cutoff = amps.size() - 1).
FockVector single_mode_state(std::vector<cplx> amps);

// Coherent state |alpha>, renormalized after truncation. Throws
// TruncationError when more than 1e-8 of the norm lies above the cutoff.
FockVector coherent_state(cplx alpha, int cutoff);
// Squeezed vacuum S(r)|0>, S(r) = exp(r/2 (a^dag^2 - a^2)). Negative r squeezes
// the conjugate quadrature.
FockVector squeezed_vacuum(double r, int cutoff);

int default_cutoff_coherent(double alpha);
int default_cutoff_squeezed(double r);
int default_cutoff_ancilla(int m);
// Build at the default cutoff, doubling it until leakage is at most 1e-12.
FockVector coherent_state_auto(double alpha);
FockVector squeezed_vacuum_auto(double r);

FockVector tensor(const FockVector& a, const FockVector& b);
FockVector normalize(const FockVector& s);
// Returns ca*a + cb*b; both must share cutoffs.
FockVector linear_combination(cplx ca, const FockVector& a, cplx cb, const FockVector& b);
// Change the cutoff of one mode. Shrinking drops amplitudes above the new cutoff.
FockVector resize_mode(const FockVector& s, int mode, int new_cutoff);

// Two-mode mixing a_i -> cos(theta) a_i + sin(theta) a_j,
// a_j -> -sin(theta) a_i + cos(theta) a_j, applied exactly inside each
// fixed-photon-number sector.
FockVector apply_bs(const FockVector& s, int i, int j, double theta);
// Multiplies each amplitude by exp(-i n_j phi).
FockVector apply_phase(const FockVector& s, int j, double phi);
// Multiplies each amplitude by exp(-i chi n_i n_j).
FockVector apply_cross_kerr(const FockVector& s, int i, int j, double chi);
// Applies a (cutoff+1)x(cutoff+1) matrix to mode j.
FockVector apply_single_mode(const FockVector& s, int j, const Eigen::MatrixXcd& op);

// Matrix of S(r) on a cutoff-truncated mode, obtained from the exponential of
// the generator on a larger space (cutoff + pad) and then cropped.
Eigen::MatrixXcd squeeze_matrix(double r, int cutoff, int pad = 64);

struct Projection {
  FockVector state;  // renormalized, mode removed
  double probability;
};

// Projects mode j onto |n>. The probability is the squared norm of the
// projected branch relative to the input norm.
Projection project_mode(const FockVector& s, int j, int n);

// One factor of a moment request: an operator word on one mode, applied
// right to left, e.g. {0, "a adag"} is a_0 a_0^dag.
struct ModeOp {
  int mode;
  std::string ops;
};

// <s| prod_k op_k |s> for a normalized state, exact within the truncated space.
cplx moment(const FockVector& s, std::span<const ModeOp> spec);
cplx moment(const FockVector& s, std::initializer_list<ModeOp> spec);

// Photon-number statistics of every mode from one pass over the amplitudes:
// mean(j) = <n_j>, second(i, j) = <n_i n_j>.
struct NumberStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd second;
};
NumberStats number_statistics(const FockVector& s);

// acc += weight * (factors[0] (x) factors[1] (x) ...), each factor a
// single-mode state whose cutoff matches the corresponding mode of acc.
// Zero factor amplitudes are skipped, so sums of few-excitation products stay
// cheap on large grids.
void accumulate_product(FockVector& acc, const std::vector<const FockVector*>& factors, cplx weight);

}  // namespace catalynet

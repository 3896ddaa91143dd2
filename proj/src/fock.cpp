#include "catalynet/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "catalynet/error.hpp"

namespace catalynet {

namespace {

std::size_t total_size(const std::vector<int>& cutoffs) {
  std::size_t n = 1;
  for (int c : cutoffs) {
    if (c < 0) throw DomainError("negative cutoff");
    n *= static_cast<std::size_t>(c + 1);
  }
  return n;
}

void check_mode(const FockVector& s, int j) {
  if (j < 0 || j >= s.modes()) throw DomainError("mode index out of range");
}

int occupation(std::size_t flat, std::size_t stride, int cutoff) {
  return static_cast<int>((flat / stride) % static_cast<std::size_t>(cutoff + 1));
}

// Norm of the part of a single-mode amplitude sequence beyond `cutoff`,
// continued with `next` until the terms are negligible.
template <typename Next>
double tail_norm2(cplx last, int cutoff, Next next) {
  double tail = 0.0;
  cplx a = last;
  for (int n = cutoff + 1; n < cutoff + 4000; ++n) {
    a = next(a, n);
    const double w = std::norm(a);
    tail += w;
    if (w < 1e-300 || (n > cutoff + 50 && w < 1e-30 * tail)) break;
  }
  return tail;
}

FockVector finish_single_mode(std::vector<cplx> amps, double tail, const char* what) {
  double kept = 0.0;
  for (const auto& a : amps) kept += std::norm(a);
  const double total = kept + tail;
  const double leakage = tail / total;
  if (leakage > kLeakageLimit) {
    std::ostringstream msg;
    msg << what << ": cutoff " << amps.size() - 1 << " too small (leakage " << leakage << ")";
    throw TruncationError(msg.str());
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps) a *= scale;
  FockVector s;
  s.cutoffs = {static_cast<int>(amps.size()) - 1};
  s.amps = std::move(amps);
  s.leakage = leakage;
  return s;
}

cplx squeezed_step(cplx prev, int n, double half_tanh) {
  // amplitude of |n> from |n-2>: sqrt((n-1) n)/(n/2) * tanh(r)/2
  const double k = n / 2;
  return prev * half_tanh * std::sqrt(static_cast<double>((n - 1) * n)) / k;
}

}  // namespace

std::size_t FockVector::stride(int mode) const {
  std::size_t acc = 1;
  for (int j = modes() - 1; j > mode; --j) acc *= static_cast<std::size_t>(cutoffs[static_cast<std::size_t>(j)] + 1);
  return acc;
}

std::size_t FockVector::index(std::span<const int> ns) const {
  if (static_cast<int>(ns.size()) != modes()) throw DomainError("occupation tuple has wrong length");
  std::size_t idx = 0;
  for (int j = 0; j < modes(); ++j) {
    const int n = ns[static_cast<std::size_t>(j)];
    if (n < 0 || n > cutoffs[static_cast<std::size_t>(j)]) throw DomainError("occupation exceeds cutoff");
    idx = idx * static_cast<std::size_t>(cutoffs[static_cast<std::size_t>(j)] + 1) + static_cast<std::size_t>(n);
  }
  return idx;
}

double FockVector::norm2() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

bool FockVector::normalized(double tol) const { return std::abs(norm2() - 1.0) <= tol; }

FockVector vacuum(std::vector<int> cutoffs) {
  FockVector s;
  s.amps.assign(total_size(cutoffs), cplx{0.0, 0.0});
  s.cutoffs = std::move(cutoffs);
  s.amps[0] = 1.0;
  return s;
}

FockVector basis_state(std::vector<int> cutoffs, std::span<const int> ns) {
  FockVector s;
  s.amps.assign(total_size(cutoffs), cplx{0.0, 0.0});
  s.cutoffs = std::move(cutoffs);
  s.amps[s.index(ns)] = 1.0;
  return s;
}

FockVector single_mode_state(std::vector<cplx> amps) {
  if (amps.empty()) throw DomainError("single_mode_state: empty amplitude list");
  FockVector s;
  s.cutoffs = {static_cast<int>(amps.size()) - 1};
  s.amps = std::move(amps);
  return s;
}

FockVector coherent_state(cplx alpha, int cutoff) {
  if (cutoff < 0) throw DomainError("coherent_state: negative cutoff");
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff + 1));
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) amps[static_cast<std::size_t>(n)] = amps[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(static_cast<double>(n));
  const double tail = tail_norm2(amps.back(), cutoff,
                                 [&](cplx a, int n) { return a * alpha / std::sqrt(static_cast<double>(n)); });
  return finish_single_mode(std::move(amps), tail, "coherent_state");
}

FockVector squeezed_vacuum(double r, int cutoff) {
  if (cutoff < 0) throw DomainError("squeezed_vacuum: negative cutoff");
  std::vector<cplx> amps(static_cast<std::size_t>(cutoff + 1), cplx{0.0, 0.0});
  const double half_tanh = 0.5 * std::tanh(r);
  amps[0] = std::sqrt(1.0 / std::cosh(r));
  for (int n = 2; n <= cutoff; n += 2) amps[static_cast<std::size_t>(n)] = squeezed_step(amps[static_cast<std::size_t>(n - 2)], n, half_tanh);
  const int last_even = cutoff - (cutoff % 2);
  // Continue the even-level recurrence past the cutoff; odd levels stay zero.
  double tail = 0.0;
  cplx a = amps[static_cast<std::size_t>(last_even)];
  for (int n = last_even + 2; n < last_even + 8000; n += 2) {
    a = squeezed_step(a, n, half_tanh);
    const double w = std::norm(a);
    tail += w;
    if (w < 1e-300 || (n > last_even + 100 && w < 1e-30 * tail)) break;
  }
  return finish_single_mode(std::move(amps), tail, "squeezed_vacuum");
}

int default_cutoff_coherent(double alpha) {
  const double a = std::abs(alpha);
  return std::max(20, static_cast<int>(std::ceil(a * a + 8.0 * a)));
}

int default_cutoff_squeezed(double r) {
  const double sh = std::sinh(r);
  int c = std::max(30, static_cast<int>(std::ceil(10.0 * sh * sh)));
  if (c % 2 != 0) ++c;
  return c;
}

int default_cutoff_ancilla(int m) { return m + 4; }

namespace {

// Doubles the cutoff until the leakage target is met. The default rule
// alone is not enough for strongly squeezed states, whose tails decay only
// geometrically in tanh r.
template <class Build>
FockVector grow_until_tight(Build build, int cutoff) {
  for (int round = 0; round < 12; ++round, cutoff *= 2) {
    try {
      FockVector s = build(cutoff);
      if (s.leakage <= kLeakageTarget) return s;
    } catch (const TruncationError&) {
    }
  }
  return build(cutoff);
}

}  // namespace

FockVector coherent_state_auto(double alpha) {
  return grow_until_tight([&](int c) { return coherent_state(alpha, c); }, default_cutoff_coherent(alpha));
}

FockVector squeezed_vacuum_auto(double r) {
  return grow_until_tight([&](int c) { return squeezed_vacuum(r, c); }, default_cutoff_squeezed(r));
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  FockVector s;
  s.cutoffs = a.cutoffs;
  s.cutoffs.insert(s.cutoffs.end(), b.cutoffs.begin(), b.cutoffs.end());
  s.amps.resize(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s.amps[i * b.size() + j] = a.amps[i] * b.amps[j];
  s.leakage = a.leakage + b.leakage;
  s.truncation_warning = a.truncation_warning || b.truncation_warning;
  return s;
}

FockVector normalize(const FockVector& s) {
  const double n2 = s.norm2();
  if (!(n2 > 0.0)) throw DomainError("normalize: zero state");
  FockVector out = s;
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : out.amps) a *= scale;
  return out;
}

FockVector linear_combination(cplx ca, const FockVector& a, cplx cb, const FockVector& b) {
  if (a.cutoffs != b.cutoffs) throw DomainError("linear_combination: cutoff mismatch");
  FockVector s = a;
  for (std::size_t i = 0; i < s.size(); ++i) s.amps[i] = ca * a.amps[i] + cb * b.amps[i];
  s.leakage = std::max(a.leakage, b.leakage);
  s.truncation_warning = a.truncation_warning || b.truncation_warning;
  return s;
}

FockVector resize_mode(const FockVector& s, int mode, int new_cutoff) {
  check_mode(s, mode);
  if (new_cutoff < 0) throw DomainError("resize_mode: negative cutoff");
  FockVector out;
  out.cutoffs = s.cutoffs;
  out.cutoffs[static_cast<std::size_t>(mode)] = new_cutoff;
  out.amps.assign(total_size(out.cutoffs), cplx{0.0, 0.0});
  out.leakage = s.leakage;
  out.truncation_warning = s.truncation_warning;
  const std::size_t old_stride = s.stride(mode);
  const int old_c = s.cutoffs[static_cast<std::size_t>(mode)];
  const std::size_t outer = s.size() / (old_stride * static_cast<std::size_t>(old_c + 1));
  const int keep = std::min(old_c, new_cutoff);
  for (std::size_t o = 0; o < outer; ++o) {
    for (int n = 0; n <= keep; ++n) {
      const std::size_t src = (o * static_cast<std::size_t>(old_c + 1) + static_cast<std::size_t>(n)) * old_stride;
      const std::size_t dst = (o * static_cast<std::size_t>(new_cutoff + 1) + static_cast<std::size_t>(n)) * old_stride;
      std::copy_n(s.amps.begin() + static_cast<std::ptrdiff_t>(src), old_stride,
                  out.amps.begin() + static_cast<std::ptrdiff_t>(dst));
    }
  }
  return out;
}

FockVector apply_bs(const FockVector& s, int i, int j, double theta) {
  check_mode(s, i);
  check_mode(s, j);
  if (i == j) throw DomainError("apply_bs: modes must differ");
  const int ci = s.cutoffs[static_cast<std::size_t>(i)];
  const int cj = s.cutoffs[static_cast<std::size_t>(j)];
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const int nmax = ci + cj;

  std::vector<double> cp(static_cast<std::size_t>(nmax + 1)), sp(static_cast<std::size_t>(nmax + 1));
  cp[0] = sp[0] = 1.0;
  for (int k = 1; k <= nmax; ++k) {
    cp[static_cast<std::size_t>(k)] = cp[static_cast<std::size_t>(k - 1)] * c;
    sp[static_cast<std::size_t>(k)] = sp[static_cast<std::size_t>(k - 1)] * sn;
  }
  // Pascal rows 0..nmax.
  std::vector<std::vector<double>> pascal(static_cast<std::size_t>(nmax + 1));
  for (int n = 0; n <= nmax; ++n) {
    auto& row = pascal[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n + 1), 1.0);
    for (int k = 1; k < n; ++k)
      row[static_cast<std::size_t>(k)] =
          pascal[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
          pascal[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
  }
  auto binom = [&](int n, int k) { return pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]; };
  auto cpow = [&](int k) { return cp[static_cast<std::size_t>(k)]; };
  auto spow = [&](int k) { return sp[static_cast<std::size_t>(k)]; };

  // Only sectors and columns that the input populates are built.
  std::vector<std::vector<bool>> needed(static_cast<std::size_t>(nmax + 1));
  for (int N = 0; N <= nmax; ++N) needed[static_cast<std::size_t>(N)].assign(static_cast<std::size_t>(N + 1), false);
  {
    const std::size_t si0 = s.stride(i);
    const std::size_t sj0 = s.stride(j);
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
      if (s.amps[flat] == cplx{0.0, 0.0}) continue;
      const int ni = occupation(flat, si0, ci);
      const int nj = occupation(flat, sj0, cj);
      needed[static_cast<std::size_t>(ni + nj)][static_cast<std::size_t>(ni)] = true;
    }
  }

  // sector[N](p, k) = <p, N-p| U |k, N-k> for the mixing convention
  // a_i^dag -> c a_i^dag - s a_j^dag, a_j^dag -> s a_i^dag + c a_j^dag.
  std::vector<Eigen::MatrixXd> sector(static_cast<std::size_t>(nmax + 1));
  for (int N = 0; N <= nmax; ++N) {
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
      if (!needed[static_cast<std::size_t>(N)][static_cast<std::size_t>(k)]) continue;
      // (c x - s y)^k (s x + c y)^(N-k), coefficient of x^p y^(N-p)
      std::vector<double> poly(static_cast<std::size_t>(N + 1), 0.0);
      for (int a = 0; a <= k; ++a) {
        const double fa = binom(k, a) * cpow(a) * spow(k - a) * (((k - a) % 2 == 0) ? 1.0 : -1.0);
        for (int b = 0; b <= N - k; ++b) {
          poly[static_cast<std::size_t>(a + b)] += fa * binom(N - k, b) * spow(b) * cpow(N - k - b);
        }
      }
      const double in_norm = 0.5 * (log_factorial(k) + log_factorial(N - k));
      for (int p = 0; p <= N; ++p) {
        const double out_norm = 0.5 * (log_factorial(p) + log_factorial(N - p));
        u(p, k) = poly[static_cast<std::size_t>(p)] * std::exp(out_norm - in_norm);
      }
    }
    sector[static_cast<std::size_t>(N)] = std::move(u);
  }

  FockVector out = s;
  std::fill(out.amps.begin(), out.amps.end(), cplx{0.0, 0.0});
  const std::size_t si = s.stride(i);
  const std::size_t sj = s.stride(j);
  bool warn = s.truncation_warning;
  double lost = 0.0;

  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const int ni = occupation(flat, si, ci);
    const int nj = occupation(flat, sj, cj);
    const cplx amp = s.amps[flat];
    if (amp == cplx{0.0, 0.0}) continue;
    if ((ni >= ci - 1 || nj >= cj - 1) && std::abs(amp) > 1e-8) warn = true;
    const std::size_t base = flat - static_cast<std::size_t>(ni) * si - static_cast<std::size_t>(nj) * sj;
    const int N = ni + nj;
    const auto& u = sector[static_cast<std::size_t>(N)];
    for (int p = 0; p <= N; ++p) {
      const double w = u(p, ni);
      if (w == 0.0) continue;
      if (p > ci || N - p > cj) {
        lost += std::norm(w * amp);
        continue;
      }
      out.amps[base + static_cast<std::size_t>(p) * si + static_cast<std::size_t>(N - p) * sj] += w * amp;
    }
  }
  if (lost > 1e-16) warn = true;
  out.truncation_warning = warn;
  return out;
}

FockVector apply_phase(const FockVector& s, int j, double phi) {
  check_mode(s, j);
  FockVector out = s;
  const std::size_t sj = s.stride(j);
  const int cj = s.cutoffs[static_cast<std::size_t>(j)];
  std::vector<cplx> ph(static_cast<std::size_t>(cj + 1));
  for (int n = 0; n <= cj; ++n) ph[static_cast<std::size_t>(n)] = std::polar(1.0, -phi * n);
  for (std::size_t flat = 0; flat < s.size(); ++flat) out.amps[flat] *= ph[static_cast<std::size_t>(occupation(flat, sj, cj))];
  return out;
}

FockVector apply_cross_kerr(const FockVector& s, int i, int j, double chi) {
  check_mode(s, i);
  check_mode(s, j);
  FockVector out = s;
  const std::size_t si = s.stride(i);
  const std::size_t sj = s.stride(j);
  const int ci = s.cutoffs[static_cast<std::size_t>(i)];
  const int cj = s.cutoffs[static_cast<std::size_t>(j)];
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const int ni = occupation(flat, si, ci);
    const int nj = occupation(flat, sj, cj);
    if (ni != 0 && nj != 0) out.amps[flat] *= std::polar(1.0, -chi * ni * nj);
  }
  return out;
}

FockVector apply_single_mode(const FockVector& s, int j, const Eigen::MatrixXcd& op) {
  check_mode(s, j);
  const int cj = s.cutoffs[static_cast<std::size_t>(j)];
  if (op.rows() != cj + 1 || op.cols() != cj + 1) throw DomainError("apply_single_mode: operator size mismatch");
  FockVector out = s;
  std::fill(out.amps.begin(), out.amps.end(), cplx{0.0, 0.0});
  const std::size_t sj = s.stride(j);
  const std::size_t block = sj * static_cast<std::size_t>(cj + 1);
  const std::size_t outer = s.size() / block;
  Eigen::VectorXcd col(cj + 1);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t inner = 0; inner < sj; ++inner) {
      const std::size_t base = o * block + inner;
      for (int n = 0; n <= cj; ++n) col(n) = s.amps[base + static_cast<std::size_t>(n) * sj];
      if (col.squaredNorm() == 0.0) continue;
      const Eigen::VectorXcd res = op * col;
      for (int n = 0; n <= cj; ++n) out.amps[base + static_cast<std::size_t>(n) * sj] = res(n);
    }
  }
  return out;
}

Eigen::MatrixXcd squeeze_matrix(double r, int cutoff, int pad) {
  const int dim = cutoff + 1 + pad;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd ad = a.transpose();
  const Eigen::MatrixXd gen = 0.5 * r * (ad * ad - a * a);
  const Eigen::MatrixXd full = gen.exp();
  return full.topLeftCorner(cutoff + 1, cutoff + 1).cast<cplx>();
}

Projection project_mode(const FockVector& s, int j, int n) {
  check_mode(s, j);
  const int cj = s.cutoffs[static_cast<std::size_t>(j)];
  if (n < 0 || n > cj) throw DomainError("project_mode: outcome exceeds cutoff");
  FockVector out;
  out.cutoffs = s.cutoffs;
  out.cutoffs.erase(out.cutoffs.begin() + j);
  out.amps.assign(total_size(out.cutoffs), cplx{0.0, 0.0});
  out.leakage = s.leakage;
  out.truncation_warning = s.truncation_warning;
  const std::size_t sj = s.stride(j);
  const std::size_t block = sj * static_cast<std::size_t>(cj + 1);
  const std::size_t outer = s.size() / block;
  double branch = 0.0;
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t inner = 0; inner < sj; ++inner) {
      const cplx a = s.amps[o * block + static_cast<std::size_t>(n) * sj + inner];
      out.amps[o * sj + inner] = a;
      branch += std::norm(a);
    }
  }
  const double total = s.norm2();
  if (!(total > 0.0)) throw DomainError("project_mode: zero input state");
  const double p = branch / total;
  if (p < 1e-300) throw DomainError("project_mode: null measurement outcome");
  const double scale = 1.0 / std::sqrt(branch);
  for (auto& a : out.amps) a *= scale;
  return {std::move(out), p};
}

namespace {

void apply_token(std::vector<cplx>& v, const FockVector& s, int mode, const std::string& tok) {
  const std::size_t sj = s.stride(mode);
  const int cj = s.cutoffs[static_cast<std::size_t>(mode)];
  std::vector<cplx> out(v.size(), cplx{0.0, 0.0});
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    const cplx a = v[flat];
    if (a == cplx{0.0, 0.0}) continue;
    const int n = occupation(flat, sj, cj);
    if (tok == "n") {
      out[flat] += static_cast<double>(n) * a;
    } else if (tok == "a") {
      if (n > 0) out[flat - sj] += std::sqrt(static_cast<double>(n)) * a;
    } else if (tok == "adag") {
      if (n < cj) out[flat + sj] += std::sqrt(static_cast<double>(n + 1)) * a;
    } else {
      throw DomainError("moment: unknown operator token '" + tok + "'");
    }
  }
  v.swap(out);
}

}  // namespace

cplx moment(const FockVector& s, std::span<const ModeOp> spec) {
  std::vector<cplx> v = s.amps;
  for (auto it = spec.rbegin(); it != spec.rend(); ++it) {
    check_mode(s, it->mode);
    std::vector<std::string> toks;
    std::istringstream in(it->ops);
    for (std::string t; in >> t;) toks.push_back(t);
    for (auto t = toks.rbegin(); t != toks.rend(); ++t) apply_token(v, s, it->mode, *t);
  }
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(s.amps[i]) * v[i];
  return acc;
}

cplx moment(const FockVector& s, std::initializer_list<ModeOp> spec) {
  return moment(s, std::span<const ModeOp>(spec.begin(), spec.size()));
}

NumberStats number_statistics(const FockVector& s) {
  const int nm = s.modes();
  NumberStats st{Eigen::VectorXd::Zero(nm), Eigen::MatrixXd::Zero(nm, nm)};
  std::vector<std::size_t> strides(static_cast<std::size_t>(nm));
  for (int j = 0; j < nm; ++j) strides[static_cast<std::size_t>(j)] = s.stride(j);
  Eigen::VectorXd occ(nm);
  double total = 0.0;
  for (std::size_t flat = 0; flat < s.size(); ++flat) {
    const double w = std::norm(s.amps[flat]);
    if (w == 0.0) continue;
    total += w;
    for (int j = 0; j < nm; ++j)
      occ(j) = occupation(flat, strides[static_cast<std::size_t>(j)], s.cutoffs[static_cast<std::size_t>(j)]);
    st.mean += w * occ;
    st.second.noalias() += w * occ * occ.transpose();
  }
  if (!(total > 0.0)) throw DomainError("number_statistics: zero state");
  st.mean /= total;
  st.second /= total;
  return st;
}

void accumulate_product(FockVector& acc, const std::vector<const FockVector*>& factors, cplx weight) {
  if (static_cast<int>(factors.size()) != acc.modes()) throw DomainError("accumulate_product: factor count mismatch");
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j]->modes() != 1 || factors[j]->cutoffs[0] != acc.cutoffs[j]) {
      throw DomainError("accumulate_product: factor cutoff mismatch");
    }
  }
  // Depth-first walk over the nonzero entries of each factor.
  std::vector<std::vector<std::pair<std::size_t, cplx>>> nz(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const std::size_t st = acc.stride(static_cast<int>(j));
    for (std::size_t n = 0; n < factors[j]->size(); ++n) {
      const cplx a = factors[j]->amps[n];
      if (a != cplx{0.0, 0.0}) nz[j].emplace_back(n * st, a);
    }
  }
  auto walk = [&](auto&& self, std::size_t depth, std::size_t offset, cplx amp) -> void {
    if (depth == nz.size()) {
      acc.amps[offset] += amp;
      return;
    }
    for (const auto& [off, a] : nz[depth]) self(self, depth + 1, offset + off, amp * a);
  };
  walk(walk, 0, 0, weight);
  for (const auto* f : factors) {
    acc.leakage = std::max(acc.leakage, f->leakage);
    acc.truncation_warning = acc.truncation_warning || f->truncation_warning;
  }
}

}  // namespace catalynet

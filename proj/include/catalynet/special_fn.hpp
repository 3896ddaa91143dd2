#pragma once

#include <complex>
#include <span>
#include <vector>

namespace catalynet {

using cplx = std::complex<double>;

// n! as a double. Exact integer products up to 20, log-gamma beyond.
double factorial(int n);
double log_factorial(int n);
// Binomial coefficient C(n, k); zero when k < 0 or k > n.
double binomial(int n, int k);
// Generalized binomial coefficient C(p, k) for real p.
double binomial_real(double p, int k);

// Laguerre polynomial L_m(x) from its finite expansion.
cplx laguerre(int m, cplx x);

// Normal-ordered Laguerre polynomial evaluated on a number state:
//   <n| :L_m(a^dag a x): |n> = sum_k (-1)^k C(n,k) C(m,k) x^k.
// This is the Fock-diagonal weight of the catalysis operator up to cos^(n+m).
double normal_laguerre(int n, int m, double x);

// Two-variable Hermite polynomial with generating function
//   exp(u xi + v eta - u v) = sum_{p,q} H_{p,q}(xi, eta) u^p v^q / (p! q!).
cplx hermite2(int p, int q, cplx xi, cplx eta);

// C(m,n) C(m,k) x^n y^k / (n! k!). Throws DomainError if n > m or k > m.
cplx pi_coeff(int m, int n, int k, cplx x, cplx y);

// Dense truncated power series in two variables t and tau, keeping the
// coefficients of t^i tau^j for 0 <= i, j <= order.
class BivariateSeries {
 public:
  static constexpr int kMaxOrder = 64;

  explicit BivariateSeries(int order);

  static BivariateSeries constant(int order, cplx value);
  static BivariateSeries variable_t(int order);
  static BivariateSeries variable_tau(int order);

  int order() const { return order_; }
  cplx& at(int i, int j) { return coeffs_[index(i, j)]; }
  const cplx& at(int i, int j) const { return coeffs_[index(i, j)]; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  BivariateSeries& operator+=(const BivariateSeries& other);
  BivariateSeries& operator-=(const BivariateSeries& other);
  BivariateSeries& operator*=(cplx scalar);

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(order_ + 1) +
           static_cast<std::size_t>(j);
  }

  int order_;
  std::vector<cplx> coeffs_;
};

enum class SeriesKind { delta, a_t, c_tau, constant, variable_t, variable_tau };

// Named series used by the catalyzed-squeezed closed forms:
//   delta  1/((1-t)(1-tau))
//   a_t    (1 - t sec^2 theta)/(1 - t)        params = {theta}
//   c_tau  (1 - tau sec^2 theta)/(1 - tau)    params = {theta}
//   constant                                  params = {value}
BivariateSeries series_build(SeriesKind kind, std::span<const double> params, int order);

BivariateSeries series_add(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries series_sub(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries series_mul(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries series_scale(const BivariateSeries& a, cplx scalar);
BivariateSeries series_recip(const BivariateSeries& a);
BivariateSeries series_powf(const BivariateSeries& a, double p);

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
BivariateSeries operator*(cplx scalar, const BivariateSeries& a);

// (m!)^2 times the coefficient of t^m tau^m, i.e. the mixed m-th derivative in
// both variables at the origin.
cplx dm_eval(const BivariateSeries& s, int m);

}  // namespace catalynet

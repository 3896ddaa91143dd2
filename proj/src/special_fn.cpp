#include "catalynet/special_fn.hpp"

#include <array>
#include <cmath>
#include <string>

#include "catalynet/error.hpp"

namespace catalynet {

namespace {

constexpr int kExactFactorialLimit = 20;

const std::array<double, kExactFactorialLimit + 1>& exact_factorials() {
  static const auto table = [] {
    std::array<double, kExactFactorialLimit + 1> t{};
    unsigned long long acc = 1;
    t[0] = 1.0;
    for (int i = 1; i <= kExactFactorialLimit; ++i) {
      acc *= static_cast<unsigned long long>(i);
      t[static_cast<std::size_t>(i)] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

cplx ipow(cplx x, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void require_same_order(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.order() != b.order()) {
    throw DomainError("series order mismatch: " + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()));
  }
}

}  // namespace

double factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  if (n <= kExactFactorialLimit) return exact_factorials()[static_cast<std::size_t>(n)];
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0));
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  if (n <= kExactFactorialLimit) return std::log(exact_factorials()[static_cast<std::size_t>(n)]);
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (n <= kExactFactorialLimit) {
    const auto& f = exact_factorials();
    return f[static_cast<std::size_t>(n)] /
           (f[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(n - k)]);
  }
  const int kk = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= kk; ++i) c = c * (n - kk + i) / i;
  return c;
}

double binomial_real(double p, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= (p - i) / (i + 1);
  return c;
}

cplx laguerre(int m, cplx x) {
  if (m < 0) throw DomainError("laguerre: negative degree");
  cplx sum{0.0, 0.0};
  cplx xk{1.0, 0.0};
  for (int k = 0; k <= m; ++k) {
    const double c = binomial(m, k) / factorial(k);
    sum += (k % 2 == 0 ? c : -c) * xk;
    xk *= x;
  }
  return sum;
}

double normal_laguerre(int n, int m, double x) {
  double sum = 0.0;
  double xk = 1.0;
  for (int k = 0; k <= std::min(n, m); ++k) {
    const double c = binomial(n, k) * binomial(m, k) * xk;
    sum += (k % 2 == 0) ? c : -c;
    xk *= x;
  }
  return sum;
}

cplx hermite2(int p, int q, cplx xi, cplx eta) {
  if (p < 0 || q < 0) throw DomainError("hermite2: negative index");
  cplx sum{0.0, 0.0};
  for (int k = 0; k <= std::min(p, q); ++k) {
    const double c = binomial(p, k) * binomial(q, k) * factorial(k);
    const cplx term = c * ipow(xi, p - k) * ipow(eta, q - k);
#ifdef CATALYNET_MUTATE_HERMITE2
    // Fault injection used by the validation mutation test: drop the sign
    // alternation.
    sum += term;
#else
    sum += (k % 2 == 0) ? term : -term;
#endif
  }
  return sum;
}

cplx pi_coeff(int m, int n, int k, cplx x, cplx y) {
  if (n < 0 || k < 0 || n > m || k > m) {
    throw DomainError("pi_coeff: indices must satisfy 0 <= n, k <= m");
  }
  return binomial(m, n) * binomial(m, k) * ipow(x, n) * ipow(y, k) / (factorial(n) * factorial(k));
}

BivariateSeries::BivariateSeries(int order) : order_(order) {
  if (order < 0 || order > kMaxOrder) {
    throw DomainError("series order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
  coeffs_.assign(static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(order + 1),
                 cplx{0.0, 0.0});
}

BivariateSeries BivariateSeries::constant(int order, cplx value) {
  BivariateSeries s(order);
  s.at(0, 0) = value;
  return s;
}

BivariateSeries BivariateSeries::variable_t(int order) {
  BivariateSeries s(order);
  if (order >= 1) s.at(1, 0) = 1.0;
  return s;
}

BivariateSeries BivariateSeries::variable_tau(int order) {
  BivariateSeries s(order);
  if (order >= 1) s.at(0, 1) = 1.0;
  return s;
}

BivariateSeries& BivariateSeries::operator+=(const BivariateSeries& other) {
  require_same_order(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

BivariateSeries& BivariateSeries::operator-=(const BivariateSeries& other) {
  require_same_order(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

BivariateSeries& BivariateSeries::operator*=(cplx scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

BivariateSeries series_build(SeriesKind kind, std::span<const double> params, int order) {
  BivariateSeries s(order);
  auto need = [&](std::size_t n, const char* what) {
    if (params.size() < n) throw DomainError(std::string("series_build: missing parameter for ") + what);
  };
  switch (kind) {
    case SeriesKind::delta:
      for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order; ++j) s.at(i, j) = 1.0;
      break;
    case SeriesKind::a_t:
    case SeriesKind::c_tau: {
      need(1, "theta");
      const double c = std::cos(params[0]);
      const double sec2 = 1.0 / (c * c);
      // (1 - x sec^2)/(1 - x) = 1 + (1 - sec^2) (x + x^2 + ...)
      for (int k = 0; k <= order; ++k) {
        const double v = (k == 0) ? 1.0 : 1.0 - sec2;
        if (kind == SeriesKind::a_t) s.at(k, 0) = v;
        else s.at(0, k) = v;
      }
      break;
    }
    case SeriesKind::constant:
      need(1, "value");
      s.at(0, 0) = params[0];
      break;
    case SeriesKind::variable_t:
      return BivariateSeries::variable_t(order);
    case SeriesKind::variable_tau:
      return BivariateSeries::variable_tau(order);
  }
  return s;
}

BivariateSeries series_add(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries r = a;
  r += b;
  return r;
}

BivariateSeries series_sub(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries r = a;
  r -= b;
  return r;
}

BivariateSeries series_scale(const BivariateSeries& a, cplx scalar) {
  BivariateSeries r = a;
  r *= scalar;
  return r;
}

BivariateSeries series_mul(const BivariateSeries& a, const BivariateSeries& b) {
  require_same_order(a, b);
  const int n = a.order();
  BivariateSeries r(n);
  for (int i1 = 0; i1 <= n; ++i1) {
    for (int j1 = 0; j1 <= n; ++j1) {
      const cplx x = a.at(i1, j1);
      if (x == cplx{0.0, 0.0}) continue;
      for (int i2 = 0; i2 <= n - i1; ++i2) {
        for (int j2 = 0; j2 <= n - j1; ++j2) {
          r.at(i1 + i2, j1 + j2) += x * b.at(i2, j2);
        }
      }
    }
  }
  return r;
}

BivariateSeries series_recip(const BivariateSeries& a) {
  const cplx a0 = a.at(0, 0);
  if (a0 == cplx{0.0, 0.0}) throw DomainError("series_recip: zero constant term");
  const int n = a.order();
  BivariateSeries b(n);
  // Solve a * b = 1 coefficient by coefficient in increasing (i, j).
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      cplx acc = (i == 0 && j == 0) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
          if (k == 0 && l == 0) continue;
          acc -= a.at(k, l) * b.at(i - k, j - l);
        }
      }
      b.at(i, j) = acc / a0;
    }
  }
  return b;
}

BivariateSeries series_powf(const BivariateSeries& a, double p) {
  const cplx c = a.at(0, 0);
  if (c == cplx{0.0, 0.0}) throw DomainError("series_powf: zero constant term");
  const int n = a.order();
  BivariateSeries w = a;
  w.at(0, 0) = 0.0;
  w *= 1.0 / c;
  // (1 + w)^p with w of vanishing constant term; w^k has total degree >= k,
  // so terms beyond k = 2n cannot reach any kept coefficient.
  BivariateSeries result = BivariateSeries::constant(n, 1.0);
  BivariateSeries wk = BivariateSeries::constant(n, 1.0);
  for (int k = 1; k <= 2 * n; ++k) {
    wk = series_mul(wk, w);
    const double bk = binomial_real(p, k);
    if (bk == 0.0) break;
    result += series_scale(wk, bk);
  }
  result *= std::pow(c, p);
  return result;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) { return series_add(a, b); }
BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) { return series_sub(a, b); }
BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) { return series_mul(a, b); }
BivariateSeries operator*(cplx scalar, const BivariateSeries& a) { return series_scale(a, scalar); }

cplx dm_eval(const BivariateSeries& s, int m) {
  if (m < 0) throw DomainError("dm_eval: negative derivative order");
  if (s.order() < m) {
    throw DomainError("dm_eval: series order " + std::to_string(s.order()) + " below derivative order " +
                      std::to_string(m));
  }
  const double f = factorial(m);
  return f * f * s.at(m, m);
}

}  // namespace catalynet

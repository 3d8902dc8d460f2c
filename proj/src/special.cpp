#include "plancherel/special.hpp"

#include <mpfr.h>

#include <map>
#include <mutex>

namespace plancherel {

namespace {
std::mutex g_bern_mu;
std::vector<BigRational> g_bern{BigRational(1)};

Real zeta_int(int s) {
  Real r;
  mpfr_zeta_ui(r.backend().data(), static_cast<unsigned long>(s), MPFR_RNDN);
  return r;
}

// zeta at integer s (s != 1)
Real zeta_any(int s) {
  if (s >= 2) return zeta_int(s);
  int m = -s;  // zeta(-m) = (-1)^m B_{m+1}/(m+1)
  BigRational v = bernoulli(m + 1) / BigRational(m + 1);
  if (m % 2) v = -v;
  return to_real(v);
}

Real eps() { return ulp_scale(static_cast<int>(precision_bits()) + 8); }

Complex polylog_direct(int n, const Complex& x) {
  Complex sum(0), xp = x;
  Real e = eps();
  for (int k = 1; k < 100000; ++k) {
    Complex term = xp / pow(Real(k), n);
    sum += term;
    if (abs(term) < e * abs(sum)) break;
    xp *= x;
  }
  return sum;
}

// Li_n(e^mu), |mu| < 2 pi
Complex polylog_logseries(int n, const Complex& mu) {
  Complex sum(0), mp(1);
  BigRational harm(0);
  for (int j = 1; j < n; ++j) harm += BigRational(1, j);
  Real fact(1), e = eps();
  int quiet = 0;
  for (int k = 0; k < 100000; ++k) {
    if (k > 0) { mp *= mu; fact *= k; }
    Complex term;
    if (k == n - 1) {
      term = mp / fact * (Complex(to_real(harm)) - log(-mu));
    } else {
      term = mp / fact * zeta_any(n - k);
    }
    sum += term;
    if (k > n + 2 && abs(term) < e * (abs(sum) + 1)) {
      if (++quiet > 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum;
}

// Bernoulli polynomial B_n(y)
Complex bernoulli_poly(int n, const Complex& y) {
  Complex r(0);
  for (int k = 0; k <= n; ++k) r += to_real(BigRational(binomial(n, k)) * bernoulli(k)) * pow(y, n - k);
  return r;
}
}  // namespace

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  BigInt r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial(int n) {
  BigInt r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigRational bernoulli(int n) {
  if (n < 0) throw NumericError("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(g_bern_mu);
  while (static_cast<int>(g_bern.size()) <= n) {
    int m = static_cast<int>(g_bern.size());
    if (m >= 3 && m % 2) {
      g_bern.emplace_back(0);
      continue;
    }
    // sum_{k<=m} C(m+1,k) B_k = 0
    BigRational acc(0);
    for (int k = 0; k < m; ++k) acc += BigRational(binomial(m + 1, k)) * g_bern[k];
    g_bern.push_back(-acc / BigRational(m + 1));
  }
  return g_bern[n];
}

std::vector<BigInt> neg_polylog_numerator(int k) {
  std::vector<BigInt> p{BigInt(0), BigInt(1)};  // P_0 = x
  for (int j = 0; j < k; ++j) {
    // P_{j+1} = x (P' (1-x) + (j+1) P)
    std::vector<BigInt> q(p.size() + 1, BigInt(0));
    for (size_t i = 1; i < p.size(); ++i) {
      q[i - 1] += p[i] * static_cast<long>(i);
      q[i] -= p[i] * static_cast<long>(i);
    }
    for (size_t i = 0; i < p.size(); ++i) q[i] += p[i] * (j + 1);
    std::vector<BigInt> r(q.size() + 1, BigInt(0));
    for (size_t i = 0; i < q.size(); ++i) r[i + 1] = q[i];
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    p = std::move(r);
  }
  return p;
}

Complex neg_polylog(int m, const Complex& x) {
  if (m < 0) throw NumericError("neg_polylog: m < 0");
  Complex one_minus = Complex(1) - x;
  if (one_minus.is_zero()) throw NumericError("neg_polylog: pole at x = 1");
  if (m == 0) return -log(one_minus);
  int k = m - 1;
  auto p = neg_polylog_numerator(k);
  Complex num(0);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) num = num * x + Complex(to_real(p[i]));
  return num / pow(one_minus, k + 1);
}

Complex polylog(int n, const Complex& x) {
  if (n < 2) throw NumericError("polylog: n < 2 not supported here");
  if (x.is_zero()) return Complex(0);
  Real ax = abs(x);
  if (ax <= Real(1) / 2) return polylog_direct(n, x);
  if (ax >= 2) {
    // Li_n(z) + (-1)^n Li_n(1/z) = -(2 pi i)^n / n! B_n(1/2 + ln(-z)/(2 pi i))
    Complex tpi(Real(0), 2 * pi());
    Complex rhs = -pow(tpi, n) / to_real(BigRational(factorial(n))) *
                  bernoulli_poly(n, Complex(Real(1) / 2) + log(-x) / tpi);
    Complex inv = polylog(n, Complex(1) / x);
    return n % 2 ? rhs + inv : rhs - inv;
  }
  return polylog_logseries(n, log(x));
}

Real polylog(int n, const Real& x) {
  if (x > 1) throw NumericError("real polylog: x > 1");
  if (x == 1) return zeta_int(n);
  return polylog(n, Complex(x)).real();
}

std::vector<BigInt> chebyshev_coeffs(int j) {
  if (j < 0) j = -j;
  std::vector<BigInt> a{BigInt(2)}, b{BigInt(0), BigInt(1)};
  if (j == 0) return a;
  for (int i = 1; i < j; ++i) {
    std::vector<BigInt> c(b.size() + 1, BigInt(0));
    for (size_t k = 0; k < b.size(); ++k) c[k + 1] += b[k];
    for (size_t k = 0; k < a.size(); ++k) c[k] -= a[k];
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

Complex chebyshev_eval(int j, const Complex& s) {
  if (j < -1) throw NumericError("chebyshev_eval: j < -1");
  if (j < 0) j = -j;
  Complex t0(2), t1 = s;
  if (j == 0) return t0;
  for (int i = 1; i < j; ++i) {
    Complex t2 = s * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

BigRational gamma_ratio_coefficient(int p, int k) {
  if (k < 1) throw NumericError("gamma_ratio_coefficient: k < 1");
  long a = static_cast<long>(k) * p * (p - 2);
  BigInt prod(1);
  for (int j = 1; j <= k - 1; ++j) prod *= BigInt(a + j);
  return BigRational(prod, factorial(k));
}

PowerSeries<BigRational> polylog_series(int n, int order) {
  PowerSeries<BigRational> s(order);
  for (int k = 1; k < order; ++k) {
    BigInt d(1);
    for (int i = 0; i < n; ++i) d *= k;
    s[k] = BigRational(BigInt(1), d);
  }
  return s;
}

}  // namespace plancherel

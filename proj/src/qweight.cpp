#include "plancherel/qweight.hpp"

#include "plancherel/special.hpp"

#include <mutex>

namespace plancherel {

namespace {
std::recursive_mutex g_cyc_mu;
std::map<int, std::vector<BigInt>> g_cyc;

// exact division of integer polynomials (ascending coefficients)
std::vector<BigInt> poly_div(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  std::vector<BigInt> q(std::max(na - nb + 1, 1), BigInt(0));
  for (int i = na - nb; i >= 0; --i) {
    BigInt c = a[i + nb - 1] / b[nb - 1];
    q[i] = c;
    for (int j = 0; j < nb; ++j) a[i + j] -= c * b[j];
  }
  return q;
}

LaurentPoly poly(const std::vector<BigInt>& c) { return LaurentPoly{0, c}; }
}  // namespace

const std::vector<BigInt>& cyclotomic(int d) {
  std::lock_guard<std::recursive_mutex> lock(g_cyc_mu);
  auto it = g_cyc.find(d);
  if (it != g_cyc.end()) return it->second;
  // s^d - 1 divided by Phi_e for proper divisors e
  std::vector<BigInt> p(d + 1, BigInt(0));
  p[0] = -1;
  p[d] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e) continue;
    p = poly_div(p, cyclotomic(e));
  }
  return g_cyc.emplace(d, std::move(p)).first->second;
}

void LaurentPoly::trim() {
  size_t lead = 0;
  while (lead < c.size() && c[lead] == 0) ++lead;
  c.erase(c.begin(), c.begin() + lead);
  low += static_cast<long>(lead);
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) low = 0;
}

bool LaurentPoly::is_zero() const {
  for (auto& v : c)
    if (v != 0) return false;
  return true;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.c.empty()) return *this;
  if (c.empty()) return *this = o;
  long lo = std::min(low, o.low);
  long hi = std::max(low + static_cast<long>(c.size()), o.low + static_cast<long>(o.c.size()));
  std::vector<BigInt> r(hi - lo, BigInt(0));
  for (size_t i = 0; i < c.size(); ++i) r[low - lo + i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[o.low - lo + i] += o.c[i];
  low = lo;
  c = std::move(r);
  trim();
  return *this;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  if (c.empty() || o.c.empty()) return r;
  r.low = low + o.low;
  r.c.assign(c.size() + o.c.size() - 1, BigInt(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  }
  return r;
}

void QSum::raise_denominator(int d, long e) {
  long& cur = den_[d];
  if (e <= cur) return;
  LaurentPoly f = poly(cyclotomic(d));
  for (long k = cur; k < e; ++k) num_ = num_ * f;
  cur = e;
}

void QSum::add(const QRational& term) {
  for (auto [d, m] : term.phi)
    if (m < 0) raise_denominator(d, -m);
  LaurentPoly t{term.s_exp, {BigInt(term.sign)}};
  for (auto [d, D] : den_) {
    auto it = term.phi.find(d);
    long m = it == term.phi.end() ? 0 : it->second;
    LaurentPoly f = poly(cyclotomic(d));
    for (long k = 0; k < D + m; ++k) t = t * f;
  }
  for (auto [d, m] : term.phi)
    if (m > 0 && !den_.count(d)) {
      LaurentPoly f = poly(cyclotomic(d));
      for (long k = 0; k < m; ++k) t = t * f;
    }
  num_ += t;
}

Real QSum::eval(const Real& s) const {
  Real n(0);
  for (size_t i = 0; i < num_.c.size(); ++i)
    n += to_real(num_.c[i]) * pow(s, num_.low + static_cast<long>(i));
  for (auto [d, D] : den_) {
    Real v(0);
    const auto& c = cyclotomic(d);
    for (size_t i = c.size(); i-- > 0;) v = v * s + to_real(c[i]);
    n /= pow(v, D);
  }
  return n;
}

LaurentSeries<BigRational> QSum::gs_expansion(int order) const {
  using PS = PowerSeries<BigRational>;
  long D1 = 0;
  if (auto it = den_.find(1); it != den_.end()) D1 = it->second;
  int n = order + static_cast<int>(D1);  // power-series order before the g^-D1 shift
  if (n <= 0) return LaurentSeries<BigRational>::zero(order);
  // s^k = e^{-k g/2}
  auto spow = [&](long k) {
    PS e(n);
    BigRational c(-k, 2), term(1);
    for (int m = 0; m < n; ++m) {
      e[m] = term;
      term = term * c / BigRational(m + 1);
    }
    return e;
  };
  auto lpoly = [&](const LaurentPoly& p) {
    PS r(n);
    for (size_t i = 0; i < p.c.size(); ++i)
      if (p.c[i] != 0) r += spow(p.low + static_cast<long>(i)) * BigRational(p.c[i]);
    return r;
  };
  PS res = lpoly(num_);
  for (auto [d, D] : den_) {
    if (D == 0) continue;
    PS f;
    if (d == 1) {
      // (s - 1)/g: [g^m] = (-1/2)^{m+1}/(m+1)!
      PS u(n);
      BigRational t(-1, 2);
      for (int m = 0; m < n; ++m) {
        u[m] = t;
        t = t * BigRational(-1, 2) / BigRational(m + 2);
      }
      f = u;
    } else {
      f = lpoly(poly(cyclotomic(d)));
    }
    res = res * f.inverse().pow(static_cast<int>(D));
  }
  return LaurentSeries<BigRational>(static_cast<int>(-D1), res.coeffs(), order);
}

}  // namespace plancherel

#pragma once

// Truncated power series and Laurent series over BigRational / Real / Complex.
//
// Truncation contract: a series "known mod x^order" carries exact information
// about every coefficient of index < order. Every operation computes the order
// of its result from the orders of its inputs; nothing is silently extended.

#include "plancherel/numeric.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <vector>

namespace plancherel {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
template <class T> inline bool is_zero(const T& v) { return v == 0; }
inline bool is_zero(const Complex& v) { return v.is_zero(); }

template <class T> T scalar_log(const T& v);
template <class T> T scalar_exp(const T& v);
template <> inline Real scalar_log(const Real& v) {
  if (v <= 0) throw NumericError("real log of non-positive constant term");
  return log(v);
}
template <> inline Real scalar_exp(const Real& v) { return exp(v); }
template <> inline Complex scalar_log(const Complex& v) { return log(v); }
template <> inline Complex scalar_exp(const Complex& v) { return exp(v); }
template <> inline BigRational scalar_log(const BigRational& v) {
  if (v != 1) throw NumericError("rational series log needs constant term 1");
  return BigRational(0);
}
template <> inline BigRational scalar_exp(const BigRational& v) {
  if (v != 0) throw NumericError("rational series exp needs constant term 0");
  return BigRational(1);
}
}  // namespace detail

// ---------------------------------------------------------------------------
// PowerSeries: c_0 + c_1 x + ... known mod x^order (coeffs.size() == order).
template <class T>
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int order) : c_(std::max(order, 0), T(0)) {}
  explicit PowerSeries(std::vector<T> c) : c_(std::move(c)) {}
  PowerSeries(std::vector<T> c, int order) : c_(std::move(c)) { c_.resize(std::max(order, 0), T(0)); }

  static PowerSeries variable(int order) {
    PowerSeries s(order);
    if (order > 1) s.c_[1] = T(1);
    return s;
  }
  static PowerSeries constant(const T& v, int order) {
    PowerSeries s(order);
    if (order > 0) s.c_[0] = v;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()); }
  const T& operator[](int i) const { return c_.at(i); }
  T& operator[](int i) { return c_.at(i); }
  const std::vector<T>& coeffs() const { return c_; }

  PowerSeries truncated(int order) const {
    if (order > this->order()) throw TruncationError("cannot extend series order");
    return PowerSeries(std::vector<T>(c_.begin(), c_.begin() + order));
  }

  PowerSeries& operator+=(const PowerSeries& o) {
    c_.resize(std::min(order(), o.order()));
    for (int i = 0; i < order(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  PowerSeries& operator-=(const PowerSeries& o) {
    c_.resize(std::min(order(), o.order()));
    for (int i = 0; i < order(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  PowerSeries& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  PowerSeries operator-() const {
    PowerSeries r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const T& s) { return a *= s; }
  friend PowerSeries operator*(const T& s, PowerSeries a) { return a *= s; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (int i = 0; i < n; ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (int j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  PowerSeries inverse() const {
    int n = order();
    if (n == 0) return *this;
    if (detail::is_zero(c_[0])) throw NumericError("series inverse: zero constant term");
    PowerSeries r(n);
    T inv0 = T(1) / c_[0];
    r.c_[0] = inv0;
    for (int k = 1; k < n; ++k) {
      T acc(0);
      for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
      r.c_[k] = -acc * inv0;
    }
    return r;
  }
  friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * b.inverse(); }

  PowerSeries derivative() const {
    PowerSeries r(std::max(order() - 1, 0));
    for (int i = 1; i < order(); ++i) r.c_[i - 1] = c_[i] * T(i);
    return r;
  }
  // antiderivative with zero constant; order grows by one
  PowerSeries integral() const {
    PowerSeries r(order() + 1);
    for (int i = 0; i < order(); ++i) r.c_[i + 1] = c_[i] / T(i + 1);
    return r;
  }

  PowerSeries pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    PowerSeries r = constant(T(1), order()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // log via integral of f'/f
  PowerSeries log() const {
    if (order() == 0) return *this;
    T l0 = detail::scalar_log(c_[0]);
    PowerSeries r = (derivative() * inverse().truncated(std::max(order() - 1, 0))).integral();
    r.c_[0] = l0;
    return r;
  }

  // exp by the recurrence n a_n = sum_k k f_k a_{n-k}
  PowerSeries exp() const {
    int n = order();
    PowerSeries r(n);
    if (n == 0) return r;
    r.c_[0] = detail::scalar_exp(c_[0]);
    for (int m = 1; m < n; ++m) {
      T acc(0);
      for (int k = 1; k <= m; ++k)
        if (!detail::is_zero(c_[k])) acc += T(k) * c_[k] * r.c_[m - k];
      r.c_[m] = acc / T(m);
    }
    return r;
  }

  // f(g(x)), g(0) = 0; Horner
  PowerSeries compose(const PowerSeries& g) const {
    if (g.order() > 0 && !detail::is_zero(g.c_[0])) throw NumericError("compose: inner series has constant term");
    int n = std::min(order(), g.order());
    PowerSeries r = constant(T(0), n);
    for (int i = n - 1; i >= 0; --i) {
      r = r * g.truncated(n);
      r.c_[0] += c_[i];
    }
    return r;
  }

  // Compositional inverse by Lagrange: [x^n] f^{-1} = (1/n) [w^{n-1}] (w/f)^n.
  PowerSeries lagrange_inverse() const {
    int n = order();
    if (n < 2) throw NumericError("lagrange_inverse: need order >= 2");
    if (!detail::is_zero(c_[0])) throw NumericError("lagrange_inverse: nonzero constant term");
    if (detail::is_zero(c_[1])) throw NumericError("lagrange_inverse: zero linear coefficient");
    PowerSeries h(std::vector<T>(c_.begin() + 1, c_.end()));  // f/w, order n-1
    h = h.inverse();
    PowerSeries r(n), hp = constant(T(1), n - 1);
    for (int k = 1; k < n; ++k) {
      hp = hp * h;
      r.c_[k] = hp.c_[k - 1] / T(k);
    }
    return r;
  }

 private:
  std::vector<T> c_;
};

// ---------------------------------------------------------------------------
// LaurentSeries: sum_{m >= val} c_m x^m known mod x^order. Coefficients beyond
// val + coeffs.size() but below order are zero. order == kExact marks a finite
// Laurent polynomial.
template <class T>
class LaurentSeries {
 public:
  static constexpr int kExact = INT_MAX / 4;

  LaurentSeries() : val_(0), ord_(kExact) {}
  LaurentSeries(int val, std::vector<T> c, int order) : val_(val), ord_(order), c_(std::move(c)) { normalize(); }

  static LaurentSeries monomial(const T& c, int m) { return LaurentSeries(m, {c}, kExact); }
  static LaurentSeries zero(int order) { return LaurentSeries(order, {}, order); }
  static LaurentSeries from_power(const PowerSeries<T>& p) { return LaurentSeries(0, p.coeffs(), p.order()); }

  int valuation() const { return val_; }
  int order() const { return ord_; }
  bool exact() const { return ord_ >= kExact; }
  int stored_end() const { return val_ + static_cast<int>(c_.size()); }

  // coefficient of x^m; throws if beyond the known order
  T operator[](int m) const {
    if (m >= ord_) throw TruncationError("coefficient beyond truncation order");
    if (m < val_ || m >= stored_end()) return T(0);
    return c_[m - val_];
  }
  T residue() const { return (*this)[-1]; }
  T leading() const { return c_.empty() ? T(0) : c_.front(); }

  LaurentSeries truncated(int order) const {
    if (order > ord_) throw TruncationError("cannot extend series order");
    LaurentSeries r(*this);
    r.ord_ = order;
    r.normalize();
    return r;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return add(o, false); }
  LaurentSeries& operator-=(const LaurentSeries& o) { return add(o, true); }
  LaurentSeries operator-() const {
    LaurentSeries r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
  }
  LaurentSeries& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(LaurentSeries a, const T& s) { return a *= s; }
  friend LaurentSeries operator*(const T& s, LaurentSeries a) { return a *= s; }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    int val = a.val_ + b.val_;
    int ord = std::min(sat(a.ord_, b.val_), sat(b.ord_, a.val_));
    if (a.c_.empty() || b.c_.empty()) return LaurentSeries(ord, {}, ord);
    int end = std::min(ord, a.stored_end() + b.stored_end() - 1);
    std::vector<T> c(std::max(end - val, 0), T(0));
    int na = static_cast<int>(a.c_.size()), nb = static_cast<int>(b.c_.size());
    for (int i = 0; i < na; ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      int jmax = std::min(nb, end - val - i);
      for (int j = 0; j < jmax; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentSeries(val, std::move(c), ord);
  }

  // Zero every coefficient below x^v. For quantities known analytically to
  // vanish there (x' at a branch point, ...) where rounding leaves dust.
  LaurentSeries drop_below(int v) const {
    LaurentSeries r(*this);
    for (int m = r.val_; m < std::min(v, r.stored_end()); ++m) r.c_[m - r.val_] = T(0);
    r.normalize();
    return r;
  }

  // multiply by x^k
  LaurentSeries shifted(int k) const {
    LaurentSeries r(*this);
    r.val_ += k;
    if (!exact()) r.ord_ += k;
    return r;
  }

  // 1/f. For an exact input, cap gives the absolute order of the result.
  LaurentSeries inverse(int cap = kExact) const {
    if (c_.empty() || detail::is_zero(c_.front())) throw NumericError("Laurent inverse: zero leading coefficient");
    int val = -val_;
    int ord = exact() ? cap : ord_ - 2 * val_;
    if (ord >= kExact) {
      if (c_.size() == 1) return monomial(T(1) / c_.front(), val);
      throw TruncationError("inverse of exact Laurent polynomial needs an order cap");
    }
    ord = std::min(ord, cap);
    int n = std::max(ord - val, 0);
    std::vector<T> r(n, T(0));
    if (n > 0) {
      T inv0 = T(1) / c_[0];
      r[0] = inv0;
      int nc = static_cast<int>(c_.size());
      for (int k = 1; k < n; ++k) {
        T acc(0);
        for (int j = 1; j <= std::min(k, nc - 1); ++j)
          if (!detail::is_zero(c_[j])) acc += c_[j] * r[k - j];
        r[k] = -acc * inv0;
      }
    }
    return LaurentSeries(val, std::move(r), ord);
  }
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

  LaurentSeries pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentSeries r = monomial(T(1), 0), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  LaurentSeries derivative() const {
    std::vector<T> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] * T(val_ + static_cast<int>(i)));
    return LaurentSeries(val_ - 1, std::move(c), exact() ? kExact : ord_ - 1);
  }

  // antiderivative with zero constant; requires no residue
  LaurentSeries integral() const {
    if (val_ <= -1 && -1 < ord_ && !detail::is_zero((*this)[-1]))
      throw NumericError("integral of series with nonzero residue");
    std::vector<T> c;
    c.reserve(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
      int m = val_ + static_cast<int>(i);
      c.push_back(m == -1 ? T(0) : c_[i] / T(m + 1));
    }
    return LaurentSeries(val_ + 1, std::move(c), exact() ? kExact : ord_ + 1);
  }

  // Series of non-negative valuation only.
  LaurentSeries log() const {
    if (val_ != 0) throw NumericError("Laurent log: valuation must be zero");
    return from_power(to_power().log());
  }
  LaurentSeries exp() const {
    if (val_ < 0) throw NumericError("Laurent exp: pole");
    return from_power(to_power().exp());
  }

  // f(s) for s of valuation >= 1; f must have non-negative valuation.
  LaurentSeries compose(const LaurentSeries& s) const {
    if (val_ < 0) throw NumericError("compose: outer series has a pole");
    if (s.val_ < 1) throw NumericError("compose: inner series must vanish at 0");
    int ord = std::min(ord_, val_ + s.ord_ - s.val_);  // s = x^v u, u known to ord-v
    if (ord >= kExact) throw TruncationError("compose needs a finite order");
    LaurentSeries st = s.truncated(std::min(s.ord_, ord));
    LaurentSeries r = zero(ord);
    for (int m = std::min(stored_end(), ord) - 1; m >= 0; --m) {
      r = r * st;
      r = r.truncated(std::min(r.ord_, ord));
      if (m >= val_) r += monomial((*this)[m], 0);
    }
    return r.truncated(ord);
  }

  PowerSeries<T> to_power() const {
    if (val_ < 0) throw NumericError("to_power: series has a pole");
    if (exact()) throw TruncationError("to_power needs a finite order");
    std::vector<T> c(std::max(ord_, 0), T(0));
    for (int m = val_; m < std::min(stored_end(), ord_); ++m) c[m] = c_[m - val_];
    return PowerSeries<T>(std::move(c));
  }

 private:
  static int sat(int a, int b) {
    if (a >= kExact) return kExact;
    return a + b;
  }

  LaurentSeries& add(const LaurentSeries& o, bool neg) {
    int ord = std::min(ord_, o.ord_);
    if (o.c_.empty() || c_.empty()) {
      if (c_.empty()) {
        int v = val_;
        *this = neg ? -o : o;
        val_ = std::min(val_, v);
      }
      val_ = std::min(val_, o.val_);
      ord_ = ord;
      normalize();
      return *this;
    }
    int lo = std::min(val_, o.val_);
    int hi = std::min(ord, std::max(stored_end(), o.stored_end()));
    std::vector<T> c(std::max(hi - lo, 0), T(0));
    for (int m = std::max(lo, val_); m < std::min(hi, stored_end()); ++m) c[m - lo] = c_[m - val_];
    for (int m = std::max(lo, o.val_); m < std::min(hi, o.stored_end()); ++m) {
      if (neg) c[m - lo] -= o.c_[m - o.val_];
      else c[m - lo] += o.c_[m - o.val_];
    }
    val_ = lo;
    ord_ = ord;
    c_ = std::move(c);
    normalize();
    return *this;
  }

  // drop beyond-order coefficients and leading zeros
  void normalize() {
    if (stored_end() > ord_) c_.resize(std::max(ord_ - val_, 0));
    size_t lead = 0;
    while (lead < c_.size() && detail::is_zero(c_[lead])) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + lead);
      val_ += static_cast<int>(lead);
    }
    if (c_.empty()) val_ = std::min(val_, ord_);
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }

  int val_;
  int ord_;
  std::vector<T> c_;
};

using LocalLaurent = LaurentSeries<Complex>;

// Expansion of a function about a centre: f(center + zeta) = series(zeta).
struct LocalSeries {
  Complex center;
  LocalLaurent series;
};

}  // namespace plancherel

#include "plancherel/curve.hpp"

#include "plancherel/newton.hpp"
#include "plancherel/special.hpp"

#include <mpfr.h>

namespace plancherel {

namespace {

using LL = LocalLaurent;

LL z_germ(int a, int order) { return LL(0, {Complex(a), Complex(1)}, order); }

// ln z about a = +-1
LL log_z_germ(int a, int order) {
  std::vector<Complex> c(std::max(order, 1), Complex(0));
  if (a < 0) c[0] = Complex(Real(0), pi());
  for (int m = 1; m < order; ++m) {
    // a = 1: ln(1 + zeta); a = -1: ln(1 - zeta)
    Real v = Real(1) / m;
    if (a > 0 ? m % 2 == 0 : true) v = -v;
    c[m] = Complex(v);
  }
  return LL(0, std::move(c), order);
}

LL constant(const Complex& v, int order) { return LL(0, {v}, order); }

// [z^m] (z + 1/z - u1)^k
Real zhukovsky_coeff(int k, int m, const Real& u1) {
  Real s(0);
  for (int i = 0; i <= k; ++i) {
    if (m > i || (i + m) % 2) continue;
    Real term = to_real(binomial(k, i) * binomial(i, (i + m) / 2));
    if (k - i) term *= pow(-u1, k - i);
    s += term;
  }
  return s;
}

Real digamma(const Real& x) {
  Real r;
  mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

Complex physical_on_cut(const SpectralCurve& c, const Real& x) {
  Complex w = (Complex(x) - c.zhukovsky_offset()) / c.zhukovsky_scale();
  if (abs(w.imag()) > ulp_scale(static_cast<int>(precision_bits()) / 2) || abs(w.real()) >= 2)
    throw std::invalid_argument("sample outside the cut");
  Real h = w.real() / 2;
  return Complex(h, sqrt(1 - h * h));  // upper lip, z = e^{i phi}
}

}  // namespace

LL inverse_z(int a, int order) {
  std::vector<Complex> c(std::max(order, 0));
  for (int m = 0; m < order; ++m) c[m] = Complex((m % 2 == 0) ? a : -1);  // a (-a)^m
  return LL(0, std::move(c), order);
}

LL sigma_shift(int a, int order) { return inverse_z(a, order) - constant(Complex(a), order); }

CurvePoint SpectralCurve::eval(const Complex& z) const {
  if (z.is_zero()) throw std::invalid_argument("z = 0");
  Complex zi = Complex(1) / z;
  return {x(z), y(z), dx(z), y(z) - y(zi)};
}

LocalSeries SpectralCurve::local_x(int a, int order) const { return {Complex(a), x_germ(a, order)}; }

LL SpectralCurve::dx_germ(int a, int order) const { return x_germ(a, order + 1).derivative().drop_below(1); }

LL SpectralCurve::delta_y_germ(int a, int order) const {
  LL y = y_germ(a, order);
  return y - y.compose(sigma_shift(a, order));
}

Complex SpectralCurve::dy_at_branch(int a) const { return y_germ(a, 3)[1]; }

Complex SpectralCurve::z_of_x(const Complex& xv) const {
  Complex w = (xv - zhukovsky_offset()) / zhukovsky_scale();
  Complex r = sqrt(w * w - Complex(4));
  Complex z1 = (w + r) / Real(2), z2 = (w - r) / Real(2);
  Complex z = abs(z1) >= abs(z2) ? z1 : z2;
  if (abs(z) - 1 < ulp_scale(static_cast<int>(precision_bits()) / 2))
    throw std::invalid_argument("x lies on the cut");
  return z;
}

// ---------------------------------------------------------------------------

Real PlancherelCurve::arctic(const Real& q) const { return (u[1] + 2) * gamma * sqrt(q); }

Complex PlancherelCurve::x(const Complex& z) const { return (z + Complex(1) / z - Complex(u[1])) * gamma; }

Complex PlancherelCurve::y(const Complex& z) const {
  Complex r = log(z);
  for (int k = 1; k <= d(); ++k) r += (pow(z, k) - pow(z, -k)) * (u[k] / 2);
  return r;
}

Complex PlancherelCurve::dx(const Complex& z) const { return (Complex(1) - Complex(1) / (z * z)) * gamma; }

LL PlancherelCurve::x_germ(int a, int order) const {
  return (z_germ(a, order) + inverse_z(a, order) - constant(Complex(u[1]), order)) * Complex(gamma);
}

LL PlancherelCurve::y_germ(int a, int order) const {
  LL r = log_z_germ(a, order);
  LL z = z_germ(a, order), zi = inverse_z(a, order);
  for (int k = 1; k <= d(); ++k) {
    if (u[k] == 0) continue;
    r += (z.pow(k) - zi.pow(k)).truncated(order) * Complex(u[k] / 2);
  }
  return r;
}

std::vector<Real> plancherel_residual(const std::vector<Real>& t, const Real& u0, const Real& u1) {
  Real r0 = 2 * u0, r1 = u1;
  for (size_t k = 1; k <= t.size(); ++k) {
    Real w = t[k - 1] * exp(-Real(static_cast<long>(k)) * u0);
    r0 -= w * zhukovsky_coeff(static_cast<int>(k), 0, u1);
    r1 -= w * zhukovsky_coeff(static_cast<int>(k), 1, u1);
  }
  return {r0, r1};
}

PlancherelCurve solve_plancherel(const std::vector<Real>& t) {
  PlancherelCurve c;
  c.t = t;
  int d = static_cast<int>(t.size());
  bool trivial = true;
  for (auto& v : t) trivial = trivial && v == 0;

  Real u0(0), u1(0);
  if (!trivial) {
    // continuation t -> lambda t; halve the step on failure
    Real lambda(0), step(1);
    Real min_step = ldexp(Real(1), -20);
    while (lambda < 1) {
      Real next = std::min(Real(1), Real(lambda + step));
      std::vector<Real> ts = t;
      for (auto& v : ts) v *= next;
      auto f = [&](const Vec& v) { return plancherel_residual(ts, v[0], v[1]); };
      auto jac = [&](const Vec& v) {
        Mat j{{Real(2), Real(0)}, {Real(0), Real(1)}};
        for (int k = 1; k <= d; ++k) {
          Real w = ts[k - 1] * exp(-Real(k) * v[0]);
          // d/du1 [z^m](w - u1)^k = -k [z^m](w - u1)^{k-1}
          j[0][0] += k * w * zhukovsky_coeff(k, 0, v[1]);
          j[1][0] += k * w * zhukovsky_coeff(k, 1, v[1]);
          j[0][1] += k * w * zhukovsky_coeff(k - 1, 0, v[1]);
          j[1][1] += k * w * zhukovsky_coeff(k - 1, 1, v[1]);
        }
        return j;
      };
      try {
        NewtonOptions opt;
        opt.max_iter = 60;
        auto res = newton_solve(f, jac, {u0, u1}, opt);
        u0 = res.x[0];
        u1 = res.x[1];
        c.newton_iterations += res.iterations;
        lambda = next;
        step *= 2;
      } catch (const NumericError& e) {
        step /= 2;
        if (step < min_step)
          throw OutOfRegime(std::string("Plancherel curve solve failed (possible multi-cut transition): ") +
                            e.what());
      }
    }
  }
  c.u.assign(std::max(d, 1) + 1, Real(0));
  c.u[0] = u0;
  c.u[1] = u1;
  for (int m = 2; m <= d; ++m)
    for (int k = m; k <= d; ++k) c.u[m] += t[k - 1] * exp(-Real(k) * u0) * zhukovsky_coeff(k, m, u1);
  c.gamma = exp(-u0);
  // square-root edges need y'(1) > 0 > y'(-1)
  Real yp(1), ym(-1);
  for (int k = 1; k < static_cast<int>(c.u.size()); ++k) {
    yp += k * c.u[k];
    ym += (k % 2 ? 1 : -1) * k * c.u[k];
  }
  if (yp <= 0 || ym >= 0) throw OutOfRegime("critical spectral curve: y'(+-1) changed sign");
  return c;
}

// ---------------------------------------------------------------------------

namespace {
Complex xp_norm(const Complex& z0) {
  Complex b = Complex(1) + Complex(1) / z0;
  return b * b;
}
}  // namespace

Complex XpCurve::x(const Complex& z) const {
  return (Complex(1) - z / z0) * (Complex(1) - Complex(1) / (z * z0)) / xp_norm(z0);
}

Complex XpCurve::y(const Complex& z) const {
  Complex A = Complex(1) - z / z0, B = Complex(1) - Complex(1) / (z * z0);
  return (-log(z) + (log(A) - log(B)) * (Real(p) / 2)) / x(z);
}

Complex XpCurve::dx(const Complex& z) const { return zhukovsky_scale() * (Complex(1) - Complex(1) / (z * z)); }

Complex XpCurve::zhukovsky_scale() const { return -Complex(1) / (z0 * xp_norm(z0)); }
Complex XpCurve::zhukovsky_offset() const { return (Complex(1) + Complex(1) / (z0 * z0)) / xp_norm(z0); }

LL XpCurve::x_germ(int a, int order) const {
  Complex iz0 = Complex(1) / z0;
  LL A = constant(Complex(1), order) - z_germ(a, order) * iz0;
  LL B = constant(Complex(1), order) - inverse_z(a, order) * iz0;
  return A * B * (Complex(1) / xp_norm(z0));
}

LL XpCurve::y_germ(int a, int order) const {
  Complex iz0 = Complex(1) / z0;
  LL A = constant(Complex(1), order) - z_germ(a, order) * iz0;
  LL B = constant(Complex(1), order) - inverse_z(a, order) * iz0;
  LL num = -log_z_germ(a, order) + (A.log() - B.log()) * Complex(Real(p) / 2);
  return num * x_germ(a, order).inverse();
}

PowerSeries<BigRational> xp_w_series(int p, int order) {
  PowerSeries<BigRational> w(order);
  for (int k = 1; k < order; ++k) {
    BigRational c(1);
    long kp = static_cast<long>(k) * p * (p - 2);
    for (int j = 0; j <= k - 2; ++j) c *= BigRational(kp + j);
    c /= BigRational(factorial(k));
    w[k] = c;
  }
  return w;
}

Complex xp_lagrange_seed(int p, const Complex& Q, int terms) {
  auto w = xp_w_series(p, terms + 1);
  Complex r(0), qk(1);
  for (int k = 1; k <= terms; ++k) {
    qk *= Q;
    r += qk * to_real(w[k]);
  }
  return r;
}

namespace {
XpCurve finish_xp(int p, const Complex& t, const Complex& w, bool real) {
  XpCurve c;
  c.p = p;
  c.t = t;
  c.real = real;
  c.z0 = Complex(1) / sqrt(w);
  Complex iz = Complex(1) / c.z0;
  // large-z normalisation of the resolvent
  c.T = log(Complex(1) + iz) * Real(2) - log(Complex(1) - iz * iz) * Real(p);
  c.gamma = Complex(1) / ((Complex(1) + c.z0) * (Complex(1) + iz));
  // edges must stay regular
  for (int a : {1, -1})
    if (abs(c.dy_at_branch(a)) < ulp_scale(static_cast<int>(precision_bits()) / 2))
      throw OutOfRegime("critical X_p curve at a branch point");
  return c;
}
}  // namespace

XpCurve solve_xp(int p, const Real& t) {
  // The z0 equation only sees p(p-2), so p and 2-p share z0 (z0 > 1 branch).
  long k = static_cast<long>(p) * (p - 2);
  Real Q = exp(-t);
  Complex seed = xp_lagrange_seed(p, Complex(Q), 3);
  Real w0 = seed.real();
  if (!(w0 > 0 && w0 < 1)) throw OutOfRegime("Lagrange seed for 1/z0^2 outside (0,1); t too small");
  auto f = [&](const Vec& v) {
    if (v[0] <= 0 || v[0] >= 1) throw NumericError("1/z0^2 left (0,1)");
    return Vec{log(v[0]) + Real(k) * log(1 - v[0]) + t};
  };
  auto jac = [&](const Vec& v) { return Mat{{1 / v[0] - Real(k) / (1 - v[0])}}; };
  NewtonResult res;
  try {
    res = newton_solve(f, jac, {w0});
  } catch (const NumericError& e) {
    throw OutOfRegime(std::string("z0 solve failed: ") + e.what());
  }
  XpCurve c = finish_xp(p, Complex(t), Complex(res.x[0]), true);
  c.newton_iterations = res.iterations;
  return c;
}

XpCurve solve_xp_complex(int p, const Complex& Q) {
  long k = static_cast<long>(p) * (p - 2);
  Complex seed = xp_lagrange_seed(p, Q, 6);
  std::function<Complex(const Complex&)> f, df;
  if (k >= 0) {
    f = [&](const Complex& w) { return w * pow(Complex(1) - w, k) - Q; };
    df = [&](const Complex& w) {
      Complex b = Complex(1) - w;
      return pow(b, k) - w * pow(b, k - 1) * Real(k);
    };
  } else {  // k = -1: w = Q (1 - w)
    f = [&](const Complex& w) { return w - Q * (Complex(1) - w); };
    df = [&](const Complex&) { return Complex(1) + Q; };
  }
  Complex w;
  try {
    w = newton_solve_complex(f, df, seed, NewtonOptions().tol * abs(Q));
  } catch (const NumericError& e) {
    throw OutOfRegime(std::string("complex z0 solve failed: ") + e.what());
  }
  return finish_xp(p, -log(Q), w, false);
}

XpInvariants xp_invariants(const XpCurve& c) {
  XpInvariants r;
  Complex iz = Complex(1) / c.z0, iz2 = iz * iz;
  long k = static_cast<long>(c.p) * (c.p - 2);
  Complex Q = exp(-c.t);
  r.z0_equation = abs(iz2 * pow(Complex(1) - iz2, k) - Q) / abs(Q);
  Complex eT = exp(-c.T);
  r.T_equation = abs(eT - pow(Complex(1) - iz, c.p) / pow(Complex(1) + iz, 2 - c.p)) / abs(eT);
  Complex ig = Complex(1) / c.gamma;
  r.gamma_equation = abs(ig - (Complex(1) + c.z0) * (Complex(1) + iz)) / abs(ig);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Real> cut_samples(const SpectralCurve& c, int n) {
  std::vector<Real> xs;
  for (int j = 0; j < n; ++j) {
    Real phi = pi() * (Real(j) + Real(1) / 2) / n;
    xs.push_back((c.zhukovsky_scale() * Real(2 * cos(phi)) + c.zhukovsky_offset()).real());
  }
  return xs;
}

std::vector<LoopSample> loop_residual(const PlancherelCurve& c, const std::vector<Real>& xs, const Real& q,
                                      int trunc) {
  if (q <= 0) throw std::invalid_argument("q must be positive");
  if (trunc < 0) throw std::invalid_argument("trunc < 0");
  Real sq = sqrt(q);
  std::vector<LoopSample> out;
  for (const auto& xv : xs) {
    Complex z = physical_on_cut(c, xv);
    // edge-at-zero coordinate: xt = x + gamma (2 + u1)
    Real xt = xv + c.gamma * (2 + c.u[1]);
    if (xt <= 0) throw std::invalid_argument("sample outside the cut");
    Real yq = sq * xt;
    auto omega = [&](const Complex& zz) {
      Complex r = log(Complex(1) + Complex(1) / zz) * Real(2);
      for (int k = 1; k <= c.d(); ++k) r += pow(zz, -k) * c.u[k];
      Real corr = 1 / (2 * yq);
      for (int n = 1; n <= trunc; ++n) corr -= to_real(bernoulli(2 * n)) / (2 * n * pow(yq, 2 * n));
      return r + Complex(corr);
    };
    Complex lhs = omega(z) + omega(Complex(1) / z);
    Real vp = 2 * log(xt);
    for (int k = 1; k <= c.d(); ++k) vp += c.t[k - 1] * pow(xv, k);
    vp += 2 * (digamma(yq) - log(yq) + 1 / yq);
    int m = trunc + 1;
    Real first = abs(to_real(bernoulli(2 * m))) / (m * pow(yq, 2 * m));
    out.push_back({xv, abs(lhs - Complex(vp)), first});
  }
  return out;
}

std::vector<LoopSample> loop_residual(const XpCurve& c, const std::vector<Real>& xs, const Real& gs, int trunc) {
  if (!c.real) throw std::invalid_argument("loop diagnostic needs a real X_p curve");
  if (trunc < 0) throw std::invalid_argument("trunc < 0");
  Real z0 = c.z0.real(), T = c.T.real(), t = c.t.real();
  std::vector<LoopSample> out;
  for (const auto& xv : xs) {
    Complex z = physical_on_cut(c, xv);
    Complex X(xv);
    Complex li(0);
    Real gk(1);
    for (int m = 1; m <= trunc; ++m) {
      gk *= gs * gs;
      li += neg_polylog(2 * m, X) * (to_real(bernoulli(2 * m) / BigRational(factorial(2 * m))) * gk);
    }
    Complex edge = X * gs / ((X - Complex(1)) * Real(2));
    auto xomega = [&](const Complex& zz) {
      Complex r = (log(Complex(1) + Complex(1) / zz) - Complex(log(1 + 1 / z0))) * Real(-2);
      r += (log(Complex(1) - Complex(1) / (zz * Complex(z0))) - Complex(log(1 - 1 / (z0 * z0)))) * Real(c.p);
      return r + li + edge;
    };
    Complex lhs = (xomega(z) + xomega(Complex(1) / z)) / X;
    Complex xvp = -log(Complex(1) - X) * Real(2) + (log(X) + Complex(T)) * Real(c.p) - Complex(t) +
                  li * Real(2) + edge * Real(2);
    Complex rhs = xvp / X;
    int m = trunc + 1;
    Real first = abs(neg_polylog(2 * m, X)) *
                 abs(to_real(bernoulli(2 * m) / BigRational(factorial(2 * m)))) * pow(gs, 2 * m) * 2 / xv;
    out.push_back({xv, abs(lhs - rhs), first});
  }
  return out;
}

}  // namespace plancherel

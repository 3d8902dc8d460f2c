#include "plancherel/newton.hpp"

namespace plancherel {

NewtonOptions::NewtonOptions() {
  // 2^-200 at the default 256 bits; keep the same 56-bit margin otherwise
  tol = ulp_scale(static_cast<int>(precision_bits()) - 56);
}

namespace {
Real max_norm(const Vec& v) {
  Real m(0);
  for (const auto& x : v) m = std::max(m, Real(abs(x)));
  return m;
}

Mat fd_jacobian(const ResidualFn& f, const Vec& x, const Vec& fx) {
  size_t n = x.size();
  Mat j(fx.size(), Vec(n));
  Real h0 = ulp_scale(static_cast<int>(precision_bits()) / 2);
  for (size_t k = 0; k < n; ++k) {
    Vec xp = x;
    Real h = h0 * (1 + abs(x[k]));
    xp[k] += h;
    Vec fp = f(xp);
    for (size_t i = 0; i < fx.size(); ++i) j[i][k] = (fp[i] - fx[i]) / h;
  }
  return j;
}
}  // namespace

Vec solve_linear(Mat a, Vec b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0) throw SingularJacobian("singular Jacobian");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (size_t r = c + 1; r < n; ++r) {
      Real f = a[r][c] / a[c][c];
      if (f == 0) continue;
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  Vec x(n);
  for (size_t i = n; i-- > 0;) {
    Real s = b[i];
    for (size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

NewtonResult newton_solve(const ResidualFn& f, const JacobianFn& jac, Vec seed, const NewtonOptions& opt) {
  NewtonResult res;
  res.x = std::move(seed);
  Vec fx = f(res.x);
  res.residual = max_norm(fx);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (res.residual < opt.tol) {
      res.iterations = it;
      return res;
    }
    Mat j = jac ? jac(res.x) : fd_jacobian(f, res.x, fx);
    Vec neg(fx.size());
    for (size_t i = 0; i < fx.size(); ++i) neg[i] = -fx[i];
    Vec dx = solve_linear(std::move(j), std::move(neg));
    // damped step: halve until the residual does not blow up
    Real lam(1);
    for (int h = 0; h < 40; ++h) {
      Vec xn = res.x;
      for (size_t i = 0; i < xn.size(); ++i) xn[i] += lam * dx[i];
      Vec fn;
      bool ok = true;
      try {
        fn = f(xn);
      } catch (const NumericError&) {
        ok = false;
      }
      if (ok) {
        Real rn = max_norm(fn);
        if (rn < res.residual * 2 || h == 39) {
          res.x = std::move(xn);
          fx = std::move(fn);
          res.residual = rn;
          break;
        }
      }
      lam /= 2;
    }
    if (!isfinite(res.residual)) break;
  }
  if (res.residual < opt.tol) {
    res.iterations = opt.max_iter;
    return res;
  }
  throw ConvergenceError("Newton did not converge (residual " + to_decimal(res.residual, 6) + ")");
}

Complex newton_solve_complex(const std::function<Complex(const Complex&)>& f,
                             const std::function<Complex(const Complex&)>& df, Complex seed,
                             const Real& tol, int max_iter) {
  Complex x = std::move(seed);
  for (int it = 0; it < max_iter; ++it) {
    Complex fx = f(x);
    if (abs(fx) < tol) return x;
    Complex d = df(x);
    if (d.is_zero()) throw SingularJacobian("zero derivative");
    x -= fx / d;
  }
  if (abs(f(x)) < tol) return x;
  throw ConvergenceError("complex Newton did not converge");
}

}  // namespace plancherel

#pragma once

// One-cut spectral curves in Zhukovsky form: x depends on z only through
// z + 1/z, so the involution is z -> 1/z and the branch points are z = +-1.

#include "plancherel/numeric.hpp"
#include "plancherel/series.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace plancherel {

// Solver failure / critical curve: the couplings left the one-cut regime.
struct OutOfRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Family { plancherel, xp };

struct CurvePoint {
  Complex x, y, dx, dy;  // dx = x'(z); dy = Delta y = y(z) - y(1/z)
};

class SpectralCurve {
 public:
  virtual ~SpectralCurve() = default;
  virtual Family family() const = 0;

  virtual Complex x(const Complex& z) const = 0;
  virtual Complex y(const Complex& z) const = 0;
  virtual Complex dx(const Complex& z) const = 0;

  // Germs about the branch point a = +-1, in zeta = z - a, known mod zeta^order.
  // ln z about -1 is i pi + ln(1 - zeta) (principal value at the point).
  virtual LocalLaurent x_germ(int a, int order) const = 0;
  virtual LocalLaurent y_germ(int a, int order) const = 0;

  // x = scale * (z + 1/z) + offset
  virtual Complex zhukovsky_scale() const = 0;
  virtual Complex zhukovsky_offset() const = 0;
  virtual bool real_coefficients() const = 0;

  CurvePoint eval(const Complex& z) const;
  LocalSeries local_x(int a, int order) const;
  // x'(zeta), with the exact zero at the branch point enforced
  LocalLaurent dx_germ(int a, int order) const;
  // y(a + zeta) - y(1/(a + zeta)); vanishes at zeta = 0 by construction
  LocalLaurent delta_y_germ(int a, int order) const;
  Complex dy_at_branch(int a) const;  // y'(+-1)

  // preimage of x on the physical sheet |z| > 1
  Complex z_of_x(const Complex& x) const;
};

// zeta -> 1/(a + zeta) - a = -zeta/(1 + a zeta)
LocalLaurent sigma_shift(int a, int order);
// 1/(a + zeta)
LocalLaurent inverse_z(int a, int order);

class PlancherelCurve : public SpectralCurve {
 public:
  std::vector<Real> t;  // t_2 .. t_{d+1}
  std::vector<Real> u;  // u_0 .. u_d
  Real gamma;           // e^{-u_0}
  int newton_iterations = 0;

  int d() const { return static_cast<int>(t.size()); }
  // n - 1/2 = (u_1 + 2) gamma sqrt(q); the normal form keeps no q
  Real arctic(const Real& q) const;

  Family family() const override { return Family::plancherel; }
  Complex x(const Complex& z) const override;
  Complex y(const Complex& z) const override;
  Complex dx(const Complex& z) const override;
  LocalLaurent x_germ(int a, int order) const override;
  LocalLaurent y_germ(int a, int order) const override;
  Complex zhukovsky_scale() const override { return Complex(gamma); }
  Complex zhukovsky_offset() const override { return Complex(-gamma * u1()); }
  bool real_coefficients() const override { return true; }

  const Real& u1() const { return u[1]; }
};

// Residuals of the z^0 / z^1 coefficient equations at (u0, u1).
std::vector<Real> plancherel_residual(const std::vector<Real>& t, const Real& u0, const Real& u1);
PlancherelCurve solve_plancherel(const std::vector<Real>& t);

class XpCurve : public SpectralCurve {
 public:
  int p = 0;
  Complex t;      // Kahler parameter, Q = e^{-t}
  Complex z0;     // |z0| > 1
  Complex T;
  Complex gamma;  // 1/((1 + z0)(1 + 1/z0))
  bool real = true;
  int newton_iterations = 0;

  Family family() const override { return Family::xp; }
  Complex x(const Complex& z) const override;
  Complex y(const Complex& z) const override;
  Complex dx(const Complex& z) const override;
  LocalLaurent x_germ(int a, int order) const override;
  LocalLaurent y_germ(int a, int order) const override;
  Complex zhukovsky_scale() const override;
  Complex zhukovsky_offset() const override;
  bool real_coefficients() const override { return real; }
};

// 1/z0^2 = sum_k Q^k/k! prod_{j=0}^{k-2} (k p (p-2) + j), first `terms` terms
Complex xp_lagrange_seed(int p, const Complex& Q, int terms);
// exact rational series of 1/z0^2 in Q
PowerSeries<BigRational> xp_w_series(int p, int order);

XpCurve solve_xp(int p, const Real& t);
// complex Kahler weight Q (|Q| small): used for Fourier sampling in Q
XpCurve solve_xp_complex(int p, const Complex& Q);

struct XpInvariants {
  Real z0_equation, T_equation, gamma_equation;  // relative residuals
};
XpInvariants xp_invariants(const XpCurve& c);

// Loop-equation diagnostic |omega(z) + omega(1/z) - V'(x)| at cut points,
// omega being the explicit one-cut resolvent with `trunc` Bernoulli terms.
// Plancherel family: V' uses the exact digamma form, so the residual is the
// Stirling remainder.  X_p: V' from the polylog expansion of the potential.
struct LoopSample {
  Real x;
  Real residual;
  Real first_omitted;  // magnitude of the first dropped correction
};
std::vector<LoopSample> loop_residual(const PlancherelCurve& c, const std::vector<Real>& x_samples,
                                      const Real& q, int trunc);
std::vector<LoopSample> loop_residual(const XpCurve& c, const std::vector<Real>& x_samples,
                                      const Real& gs, int trunc);
// interior cut points, evenly spaced in the angle z = e^{i phi}
std::vector<Real> cut_samples(const SpectralCurve& c, int n);

}  // namespace plancherel

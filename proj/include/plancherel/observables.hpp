#pragma once

#include "plancherel/curve.hpp"
#include "plancherel/toprec.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plancherel {

// ---- limit shape ----------------------------------------------------------

struct NegativeDensity : OutOfRegime {
  using OutOfRegime::OutOfRegime;
};

struct ShapePoint {
  Real phi;
  Real I, lambda;
  Real rotated_x, rotated_y;  // lambda - I, lambda + I
  std::optional<Real> h;      // absolute h_I = N - nbar + 2 gamma sqrt(q) (1 + cos phi)
};

struct ShapeCurve {
  Real q;
  Real nbar;  // arctic length nbar = 1/2 + (2 + u_1) gamma sqrt(q)
  std::vector<ShapePoint> points;
  Real min_density;  // min of rho_eq over the 512-point positivity grid
  bool positive = true;
};

// rho_eq(phi) = (phi + sum u_k sin k phi) / pi
Real equilibrium_density(const PlancherelCurve& c, const Real& phi);
// I(phi), integrated density from the right edge
Real integrated_density(const PlancherelCurve& c, const Real& q, const Real& phi);

// Interior grid phi_j = pi (j + 1/2) / n. Throws NegativeDensity unless
// allow_negative, in which case `positive` carries the verdict.
ShapeCurve limit_shape(const PlancherelCurve& c, const Real& q, int n_points,
                       std::optional<long> N = std::nullopt, bool allow_negative = false);

// t = 0 closed form: lambda + I + 1/2 = (4 sqrt q / pi)(sqrt(1-u^2) + u asin u),
// u = (lambda - I + 1/2) / (2 sqrt q). Returns the max deviation over the points.
Real arcsin_law_deviation(const ShapeCurve& s);

void write_shape_csv(const ShapeCurve& s, std::ostream& out);

// ---- density corrections --------------------------------------------------

// order q^{1/2-g} term of <rho(x)>: -W_1^{(g)}(x) / (2 i pi); g = 0 gives y/(i pi)
std::vector<Complex> density_corrections(RecursionEngine& engine, int g, const std::vector<Complex>& x);

// ---- Gromov-Witten invariants of X_p --------------------------------------

struct GWOptions {
  int samples = 0;      // 0 -> 4 d_max, doubled while the doubling test fails
  Real radius;          // 0 -> min(e^{-(d_max+2)}, Q_c/2)
  Real stability = Real("1e-8");
  bool check_doubling = true;
  int threads = 1;
};

struct GWTable {
  int p = 0, g_max = 0, d_max = 0;
  std::vector<std::vector<Real>> N;  // N[g][d], d = 0..d_max (d = 0 unused except constant maps)
  Real radius;
  int samples = 0;
  Real doubling_change;  // max relative change under M -> 2M (g >= 2)
};

struct ExtractionUnstable : NumericError {
  using NumericError::NumericError;
};

// radius of convergence in Q of the z0 branch
Real xp_critical_q(int p);

// exact Q-series (no constant, no ln Q) of the genus 0 and genus 1 free energies
PowerSeries<BigRational> xp_f0_series(int p, int d_max);
PowerSeries<BigRational> xp_f1_series(int p, int d_max);

// Taylor coefficients c[g][d] (g = 2..g_max, d = 0..d_max) of the engine F_g(Q),
// from M samples on |Q| = r
std::vector<std::vector<Complex>> xp_fg_fourier(int p, int g_max, int d_max, const Real& r, int M,
                                                int threads = 1);

GWTable gw_invariants(int p, int g_max, int d_max, const GWOptions& opt = GWOptions());

// ---- second derivative of the prepotential --------------------------------

struct F0SecondDerivative {
  std::vector<BigRational> left;   // -ln(1 - 1/z0^2) from the Lagrange series of 1/z0^2
  std::vector<BigRational> right;  // Gamma-ratio coefficients
  Real max_difference;
};
// coefficients of Q^1..Q^d_max (index 0 = Q^1)
F0SecondDerivative f0_second_derivative_series(int p, int d_max);

// ---- mirror curve ---------------------------------------------------------

// Laurent polynomial sum c u^a v^b
struct MirrorPolynomial {
  int p = 0;
  Real z0;
  std::map<std::pair<int, int>, Real> terms;

  Complex operator()(const Complex& u, const Complex& v) const;
  // shift exponents to start at 0 and scale so that the term with the highest
  // v power (lowest u power among them) is 1
  MirrorPolynomial normalized() const;
};

struct MirrorCurve {
  MirrorPolynomial general;
  std::optional<MirrorPolynomial> specialized;  // p in {0, 1, 2, -1}
  Real t;
};

// u(z) = gamma z0 (1 - z/z0)(1 - 1/(z z0)), v(z) = (1/z) ((1 - z/z0)/(1 - 1/(z z0)))^{p/2}
Complex mirror_u(int p, const Complex& z0, const Complex& z);
Complex mirror_v(int p, const Complex& z0, const Complex& z);

// general Chebyshev construction at a given z0
MirrorPolynomial mirror_general(int p, const Real& z0);
MirrorCurve mirror_curve(int p, const Real& t);

// max |H(u(z), v(z))| / (sum |c| |u^a v^b|) over n random points on |z| = radius
Real mirror_vanishing(const MirrorPolynomial& h, int n, const Real& radius, unsigned seed = 1);
// max coefficient difference after normalization; infinity if the supports differ
Real mirror_difference(const MirrorPolynomial& a, const MirrorPolynomial& b);

}  // namespace plancherel

#include "plancherel/observables.hpp"

#include "plancherel/special.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

namespace plancherel {

// ---- limit shape ----------------------------------------------------------

Real equilibrium_density(const PlancherelCurve& c, const Real& phi) {
  Real r = phi;
  for (int k = 1; k <= c.d(); ++k) r += c.u[k] * sin(k * phi);
  return r / pi();
}

Real integrated_density(const PlancherelCurve& c, const Real& q, const Real& phi) {
  Real s = sin(phi), co = cos(phi);
  Real acc = 2 * (s - phi * co);
  if (c.d() >= 1) acc += c.u[1] * (phi - s * co);
  for (int k = 2; k <= c.d(); ++k)
    acc -= c.u[k] * (sin((k + 1) * phi) / (k + 1) - sin((k - 1) * phi) / (k - 1));
  return sqrt(q) * c.gamma / pi() * acc;
}

ShapeCurve limit_shape(const PlancherelCurve& c, const Real& q, int n_points, std::optional<long> N,
                       bool allow_negative) {
  if (!(q > 0)) throw std::invalid_argument("limit_shape: q must be positive");
  if (n_points < 1) throw std::invalid_argument("limit_shape: need at least one point");
  ShapeCurve s;
  s.q = q;
  s.nbar = c.arctic(q) + Real(1) / 2;

  // positivity on a fixed 512-point grid; multicut shows up as rho < 0
  s.min_density = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 512; ++j) {
    Real phi = pi() * (j + Real(1) / 2) / 512;
    s.min_density = std::min<Real>(s.min_density, equilibrium_density(c, phi));
  }
  s.positive = s.min_density > 0;
  if (!s.positive && !allow_negative)
    throw NegativeDensity("equilibrium density negative (min " + to_decimal(s.min_density, 6) +
                          "): outside the one-cut regime");

  Real sq = sqrt(q);
  for (int j = 0; j < n_points; ++j) {
    ShapePoint pt;
    pt.phi = pi() * (j + Real(1) / 2) / n_points;
    pt.I = integrated_density(c, q, pt.phi);
    Real edge = 2 * c.gamma * sq * (1 + cos(pt.phi));
    pt.lambda = pt.I - s.nbar + edge;
    pt.rotated_x = pt.lambda - pt.I;
    pt.rotated_y = pt.lambda + pt.I;
    if (N) pt.h = Real(*N) - s.nbar + edge;
    s.points.push_back(pt);
  }
  return s;
}

Real arcsin_law_deviation(const ShapeCurve& s) {
  Real sq = sqrt(s.q), worst = 0;
  for (const auto& pt : s.points) {
    Real u = (pt.rotated_x + Real(1) / 2) / (2 * sq);
    Real rhs = 4 * sq / pi() * (sqrt(1 - u * u) + u * asin(u));
    worst = std::max<Real>(worst, abs(pt.rotated_y + Real(1) / 2 - rhs));
  }
  return worst;
}

void write_shape_csv(const ShapeCurve& s, std::ostream& out) {
  bool abs_h = !s.points.empty() && s.points.front().h.has_value();
  out << "lambda_minus_I,lambda_plus_I" << (abs_h ? ",h" : "") << "\n";
  for (const auto& pt : s.points) {
    out << to_decimal(pt.rotated_x) << "," << to_decimal(pt.rotated_y);
    if (abs_h) out << "," << to_decimal(*pt.h);
    out << "\n";
  }
}

// ---- density corrections --------------------------------------------------

std::vector<Complex> density_corrections(RecursionEngine& engine, int g, const std::vector<Complex>& x) {
  std::vector<Complex> out;
  Complex ipi(Real(0), pi());
  for (const auto& xi : x) {
    if (g == 0) {
      out.push_back(w_correction(engine, 0, 1, {xi}) / ipi);
    } else {
      out.push_back(-w_correction(engine, g, 1, {xi}) / (ipi * Real(2)));
    }
  }
  return out;
}

// ---- Gromov-Witten --------------------------------------------------------

Real xp_critical_q(int p) {
  long k = static_cast<long>(p) * (p - 2);
  if (k <= 0) return Real(1);  // w = Q or w = Q/(1+Q)
  // w (1-w)^k is maximal at w = 1/(k+1)
  Real w = Real(1) / (k + 1);
  return w * pow(1 - w, k);
}

namespace {
using RS = PowerSeries<BigRational>;

RS minus_log_one_minus(const RS& f, int order) { return polylog_series(1, order).compose(f); }
}  // namespace

PowerSeries<BigRational> xp_f0_series(int p, int d_max) {
  int n = d_max + 1;
  long k = static_cast<long>(p) * (p - 2);
  long P = static_cast<long>(p - 1) * (p - 1);
  RS w = xp_w_series(p, n);
  RS one = RS::constant(BigRational(1), n);
  RS neg = -(w * (one - w).inverse());  // 1/(1 - z0^2)
  RS l = -minus_log_one_minus(w, n);    // ln(1 - 1/z0^2)
  RS li3 = polylog_series(3, n);
  RS f = li3.compose(neg) * BigRational(k) + li3.compose(w) * BigRational(P);
  f -= l.pow(3) * BigRational(k * P, 6);
  return f;
}

PowerSeries<BigRational> xp_f1_series(int p, int d_max) {
  int n = d_max + 1;
  long P = static_cast<long>(p - 1) * (p - 1);
  RS w = xp_w_series(p, n + 1);
  RS wq(std::vector<BigRational>(w.coeffs().begin() + 1, w.coeffs().end()));  // w/Q
  w = w.truncated(n);
  RS f = wq.log() - minus_log_one_minus(w * BigRational(P), n) + minus_log_one_minus(w, n) * BigRational(3);
  return f * BigRational(1, 24);
}

std::vector<std::vector<Complex>> xp_fg_fourier(int p, int g_max, int d_max, const Real& r, int M, int threads) {
  std::vector<std::vector<Complex>> vals(M);
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (int j; (j = next++) < M && !failed;) {
      try {
        Complex Q = polar(r, 2 * pi() * j / M);
        auto c = std::make_shared<XpCurve>(solve_xp_complex(p, Q));
        RecursionEngine e(c, g_max);
        for (int g = 2; g <= g_max; ++g) vals[j].push_back(e.free_energy_complex(g));
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
      }
    }
  };
  threads = std::max(1, std::min(threads, M));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  std::vector<std::vector<Complex>> c(g_max + 1, std::vector<Complex>(d_max + 1));
  for (int g = 2; g <= g_max; ++g)
    for (int d = 0; d <= d_max; ++d) {
      Complex acc(0);
      for (int j = 0; j < M; ++j) acc += vals[j][g - 2] * polar(Real(1), -2 * pi() * j * d / M);
      c[g][d] = acc / (Real(M) * pow(r, d));
    }
  return c;
}

GWTable gw_invariants(int p, int g_max, int d_max, const GWOptions& opt) {
  if (g_max < 0 || d_max < 1) throw std::invalid_argument("gw_invariants: need g_max >= 0, d_max >= 1");
  GWTable t;
  t.p = p;
  t.g_max = g_max;
  t.d_max = d_max;
  t.N.assign(g_max + 1, std::vector<Real>(d_max + 1, Real(0)));
  t.doubling_change = 0;

  auto f0 = xp_f0_series(p, d_max);
  for (int d = 1; d <= d_max; ++d) t.N[0][d] = to_real(f0[d]);
  if (g_max >= 1) {
    // ln Z carries -F_1
    auto f1 = xp_f1_series(p, d_max);
    for (int d = 1; d <= d_max; ++d) t.N[1][d] = -to_real(f1[d]);
  }
  if (g_max < 2) return t;

  t.samples = opt.samples > 0 ? opt.samples : 4 * d_max;
  t.radius = opt.radius > 0 ? opt.radius : std::min<Real>(exp(-Real(d_max + 2)), xp_critical_q(p) / 2);
  auto c = xp_fg_fourier(p, g_max, d_max, t.radius, t.samples, opt.threads);
  auto store = [&] {
    for (int g = 2; g <= g_max; ++g)
      for (int d = 0; d <= d_max; ++d) t.N[g][d] = c[g][d].real();
  };
  store();
  if (!opt.check_doubling) return t;

  // aliasing from degrees d + M decays like (r/Q_c)^M; near the conifold
  // radius 4 d_max samples may not be enough, so keep doubling while unstable
  // (an explicit --samples is taken as given)
  const int cap = opt.samples > 0 ? t.samples : 1024;
  for (;;) {
    auto c2 = xp_fg_fourier(p, g_max, d_max, t.radius, 2 * t.samples, opt.threads);
    t.doubling_change = 0;
    for (int g = 2; g <= g_max; ++g) {
      Real scale = 0;
      for (int d = 1; d <= d_max; ++d) scale = std::max<Real>(scale, abs(c2[g][d]));
      for (int d = 1; d <= d_max; ++d) {
        Real den = std::max<Real>(abs(c2[g][d]), scale * Real("1e-30"));
        if (den > 0) t.doubling_change = std::max<Real>(t.doubling_change, abs(c[g][d] - c2[g][d]) / den);
      }
    }
    if (t.doubling_change <= opt.stability) break;
    if (2 * t.samples > cap)
      throw ExtractionUnstable("Fourier extraction unstable under sample doubling (change " +
                               to_decimal(t.doubling_change, 6) + ")");
    t.samples *= 2;
    c = std::move(c2);
    store();
  }
  return t;
}

// ---- F0'' -----------------------------------------------------------------

F0SecondDerivative f0_second_derivative_series(int p, int d_max) {
  F0SecondDerivative r;
  r.max_difference = 0;
  if (d_max <= 0) return r;
  RS w = xp_w_series(p, d_max + 1);
  RS lhs = minus_log_one_minus(w, d_max + 1);
  for (int k = 1; k <= d_max; ++k) {
    r.left.push_back(lhs[k]);
    r.right.push_back(gamma_ratio_coefficient(p, k));
    r.max_difference = std::max<Real>(r.max_difference, abs(to_real(r.left.back()) - to_real(r.right.back())));
  }
  return r;
}

// ---- mirror curve ---------------------------------------------------------

Complex MirrorPolynomial::operator()(const Complex& u, const Complex& v) const {
  Complex acc(0);
  for (const auto& [e, c] : terms) acc += pow(u, e.first) * pow(v, e.second) * c;
  return acc;
}

MirrorPolynomial MirrorPolynomial::normalized() const {
  MirrorPolynomial r = *this;
  r.terms.clear();
  if (terms.empty()) return r;
  int amin = INT32_MAX, bmin = INT32_MAX, bmax = INT32_MIN;
  for (const auto& [e, c] : terms) {
    amin = std::min(amin, e.first);
    bmin = std::min(bmin, e.second);
    bmax = std::max(bmax, e.second);
  }
  int aref = INT32_MAX;
  for (const auto& [e, c] : terms)
    if (e.second == bmax) aref = std::min(aref, e.first);
  Real ref = terms.at({aref, bmax});
  for (const auto& [e, c] : terms) r.terms[{e.first - amin, e.second - bmin}] = c / ref;
  return r;
}

Complex mirror_u(int, const Complex& z0, const Complex& z) {
  Complex one(1), iz0 = one / z0;
  Complex gamma = one / ((one + z0) * (one + iz0));
  return gamma * z0 * (one - z * iz0) * (one - iz0 / z);
}

Complex mirror_v(int p, const Complex& z0, const Complex& z) {
  Complex one(1), iz0 = one / z0;
  Complex A = one - z * iz0, B = one - iz0 / z;
  return exp((log(A) - log(B)) * (Real(p) / 2)) / z;
}

namespace {
using Poly = std::vector<Real>;  // in u

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Real(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}
void padd(Poly& a, const Poly& b, const Real& s) {
  if (a.size() < b.size()) a.resize(b.size(), Real(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

// T_j(s(u)) with s = c - (c + 2) u, c = z0 + 1/z0
Poly chebyshev_in_u(int j, const Real& z0) {
  Real c = z0 + 1 / z0;
  Poly s{c, -(c + 2)}, r{Real(0)}, sk{Real(1)};
  auto co = chebyshev_coeffs(std::abs(j));
  for (size_t k = 0; k < co.size(); ++k) {
    padd(r, sk, to_real(co[k]));
    sk = pmul(sk, s);
  }
  return r;
}
}  // namespace

MirrorPolynomial mirror_general(int p, const Real& z0) {
  // (v + 1/v) (1 + 1/z0)^|p| u^{|p|/2} = sum_j C(|p|, j) (-1/z0)^j T_{j -+ 1}(s)
  int q = std::abs(p);
  Poly R{Real(0)};
  for (int j = 0; j <= q; ++j) {
    Real coef = to_real(binomial(q, j)) * pow(-1 / z0, j);
    padd(R, chebyshev_in_u(p >= 0 ? j - 1 : j + 1, z0), coef);
  }
  Real K = pow(1 + 1 / z0, q);
  MirrorPolynomial h;
  h.p = p;
  h.z0 = z0;
  auto put = [&](int a, int b, const Real& c) {
    if (c != 0) h.terms[{a, b}] += c;
  };
  if (q % 2 == 0) {
    put(q / 2, 1, K);
    put(q / 2, -1, K);
    for (size_t i = 0; i < R.size(); ++i) put(static_cast<int>(i), 0, -R[i]);
  } else {
    Poly R2 = pmul(R, R);
    put(q, 2, K * K);
    put(q, -2, K * K);
    put(q, 0, 2 * K * K);
    for (size_t i = 0; i < R2.size(); ++i) put(static_cast<int>(i), 0, -R2[i]);
  }
  return h;
}

MirrorCurve mirror_curve(int p, const Real& t) {
  MirrorCurve m;
  m.t = t;
  Real z0 = solve_xp(p, t).z0.real();
  if (p == 2) z0 = -z0;  // the displayed p = 2 form lives on the z0 = -e^{t/2} root
  m.general = mirror_general(p, z0);

  MirrorPolynomial s;
  s.p = p;
  s.z0 = z0;
  Real K0 = (1 + exp(t / 2)) * (1 + exp(-t / 2));
  switch (p) {
    case 0:  // (1 + v)(1 + 1/v) + (u - 1) K0
      s.terms = {{{0, 1}, Real(1)}, {{0, -1}, Real(1)}, {{0, 0}, 2 - K0}, {{1, 0}, K0}};
      break;
    case 2:  // v + 1/v + 2 - (1 - 1/u) K0
      s.terms = {{{0, 1}, Real(1)}, {{0, -1}, Real(1)}, {{0, 0}, 2 - K0}, {{-1, 0}, K0}};
      break;
    case 1:  // v^2 + v^-2 - (1 + z0)^2 u - (1 - z0)^2 / u + 2 z0^2
      s.terms = {{{0, 2}, Real(1)},
                 {{0, -2}, Real(1)},
                 {{1, 0}, -(1 + z0) * (1 + z0)},
                 {{-1, 0}, -(1 - z0) * (1 - z0)},
                 {{0, 0}, 2 * z0 * z0}};
      break;
    case -1:  // v^2 + v^-2 - (1 + 1/z0)^2 u - (1 - 1/z0)^2 / u + 2 / z0^2
      s.terms = {{{0, 2}, Real(1)},
                 {{0, -2}, Real(1)},
                 {{1, 0}, -(1 + 1 / z0) * (1 + 1 / z0)},
                 {{-1, 0}, -(1 - 1 / z0) * (1 - 1 / z0)},
                 {{0, 0}, 2 / (z0 * z0)}};
      break;
    default:
      return m;
  }
  m.specialized = s;
  return m;
}

Real mirror_vanishing(const MirrorPolynomial& h, int n, const Real& radius, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 1.0);
  Complex z0(h.z0);
  Real worst = 0;
  for (int i = 0; i < n; ++i) {
    Complex z = polar(radius, 2 * pi() * Real(ang(rng)));
    Complex u = mirror_u(h.p, z0, z), v = mirror_v(h.p, z0, z);
    Real scale = 0;
    for (const auto& [e, c] : h.terms) scale += abs(c) * abs(pow(u, e.first) * pow(v, e.second));
    worst = std::max<Real>(worst, abs(h(u, v)) / scale);
  }
  return worst;
}

Real mirror_difference(const MirrorPolynomial& a, const MirrorPolynomial& b) {
  auto na = a.normalized(), nb = b.normalized();
  auto drop = [](MirrorPolynomial& m) {
    Real big = 0;
    for (const auto& [e, c] : m.terms) big = std::max<Real>(big, abs(c));
    Real tiny = big * ulp_scale(static_cast<int>(precision_bits()) * 3 / 4);
    for (auto it = m.terms.begin(); it != m.terms.end();)
      it = abs(it->second) <= tiny ? m.terms.erase(it) : std::next(it);
  };
  drop(na);
  drop(nb);
  Real worst = 0;
  for (const auto& [e, c] : na.terms) {
    auto it = nb.terms.find(e);
    if (it == nb.terms.end()) return std::numeric_limits<double>::infinity();
    worst = std::max<Real>(worst, abs(c - it->second));
  }
  for (const auto& [e, c] : nb.terms)
    if (!na.terms.count(e)) return std::numeric_limits<double>::infinity();
  return worst;
}

}  // namespace plancherel

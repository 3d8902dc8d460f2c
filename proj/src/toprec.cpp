#include "plancherel/toprec.hpp"

#include <sstream>

namespace plancherel {

namespace {

using LL = LocalLaurent;

bool empty_series(const LL& s) { return s.stored_end() == s.valuation(); }

LL zero_series() { return LL::zero(LL::kExact); }

std::string order_message(int L, const std::string& what) {
  std::ostringstream os;
  os << "local order L = " << L << " insufficient (" << what << "); rerun with a larger L";
  return os.str();
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

int default_local_order(int g_max) { return std::max(6 * g_max + 8, 12 * g_max - 8); }

const Complex& Correlator::at(const std::vector<int>& v) const {
  size_t idx = 0;
  for (int s : v) idx = idx * dim() + s;
  return c.at(idx);
}

Complex Correlator::evaluate(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("wrong number of points");
  int D = dim();
  std::vector<std::vector<Complex>> pw(n, std::vector<Complex>(D));
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < 2; ++b) {
      Complex inv = Complex(1) / (z[i] - Complex(branch_of(b)));
      Complex p = inv * inv;
      for (int k = 2; k <= K; ++k) {
        pw[i][b * (K - 1) + k - 2] = p;
        p *= inv;
      }
    }
  Complex sum(0);
  std::vector<int> v(n, 0);
  for (size_t idx = 0; idx < c.size(); ++idx) {
    if (!c[idx].is_zero()) {
      Complex term = c[idx];
      for (int i = 0; i < n; ++i) term *= pw[i][v[i]];
      sum += term;
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++v[i] < D) break;
      v[i] = 0;
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------

struct RecursionEngine::Local {
  int a;
  LL s;                        // sigma(a + zeta) - a
  LL sigma_prime;              // -1/z^2
  LL fk;                       // 1/(2 Delta y x')
  LL phi;                      // int y x' dzeta
  std::map<std::pair<int, int>, LL> ez, es;  // (b, k)
  std::map<int, LL> kpoly, berg_s;
};

RecursionEngine::RecursionEngine(std::shared_ptr<const SpectralCurve> curve, int g_max, int local_order)
    : curve_(std::move(curve)), g_max_(g_max), L_(local_order > 0 ? local_order : default_local_order(g_max)) {
  if (g_max < 0) throw std::invalid_argument("g_max < 0");
  overflow_ = 0;
  for (int a : {1, -1}) {
    auto loc = std::make_shared<Local>();
    loc->a = a;
    loc->s = sigma_shift(a, L_);
    LL zi = inverse_z(a, L_);
    loc->sigma_prime = -(zi * zi);
    LL dy = curve_->delta_y_germ(a, L_ + 1);
    LL dx = curve_->dx_germ(a, L_);
    if (dy.valuation() != 1 || dx.valuation() != 1)
      throw OutOfRegime("branch point is not a simple ramification point");
    loc->fk = (dy * dx * Complex(2)).inverse();
    loc->phi = (curve_->y_germ(a, L_) * dx).integral();
    local_.push_back(loc);
  }
}

const LocalLaurent& RecursionEngine::e_z(int ai, int bi, int k) {
  Local& l = *local_[ai];
  auto key = std::make_pair(bi, k);
  auto it = l.ez.find(key);
  if (it != l.ez.end()) return it->second;
  LL v;
  if (ai == bi) {
    v = LL::monomial(Complex(1), -k);
  } else {  // (2a + zeta)^{-k}
    v = LL(0, {Complex(2 * l.a), Complex(1)}, L_).inverse().pow(k);
  }
  return l.ez.emplace(key, std::move(v)).first->second;
}

// sigma'(z) (sigma(z) - b)^{-k}
const LocalLaurent& RecursionEngine::e_s(int ai, int bi, int k) {
  Local& l = *local_[ai];
  auto key = std::make_pair(bi, k);
  auto it = l.es.find(key);
  if (it != l.es.end()) return it->second;
  LL base = ai == bi ? l.s : l.s + LL(0, {Complex(2 * l.a)}, L_);
  LL v = base.inverse().pow(k) * l.sigma_prime;
  return l.es.emplace(key, std::move(v)).first->second;
}

// zeta^m - s^m
const LocalLaurent& RecursionEngine::kernel_poly(int ai, int m) {
  Local& l = *local_[ai];
  auto it = l.kpoly.find(m);
  if (it != l.kpoly.end()) return it->second;
  LL v = LL::monomial(Complex(1), m) - l.s.pow(m);
  return l.kpoly.emplace(m, std::move(v)).first->second;
}

// sigma' (m + 1) s^m: the sigma-side expansion of the Bergman kernel
const LocalLaurent& RecursionEngine::bergman_s(int ai, int m) {
  Local& l = *local_[ai];
  auto it = l.berg_s.find(m);
  if (it != l.berg_s.end()) return it->second;
  LL v = l.s.pow(m) * l.sigma_prime * Complex(m + 1);
  return l.berg_s.emplace(m, std::move(v)).first->second;
}

const Correlator& RecursionEngine::omega(int g, int n) {
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw std::invalid_argument("omega: unstable (g,n)");
  auto key = std::make_pair(g, n);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Correlator c;
  try {
    c = compute(g, n);
  } catch (const TruncationError& e) {
    throw InsufficientOrder(order_message(L_, e.what()));
  }
  // only fully computed correlators enter the table
  return memo_.emplace(key, std::move(c)).first->second;
}

Correlator RecursionEngine::compute(int g, int n_out) {
  const int n = n_out - 1;  // |J|
  const int K = pole_cap(g, n_out);
  const int D = 2 * (K - 1);
  const int JN = ipow(D, n);
  Correlator out;
  out.g = g;
  out.n = n_out;
  out.K = K;
  out.c.assign(static_cast<size_t>(D) * JN, Complex(0));

  auto out_index = [&](int Klow, int v) {  // embed a slot index of a lower correlator
    int b = v / (Klow - 1), k = v % (Klow - 1) + 2;
    return b * (K - 1) + (k - 2);
  };

  // Tensor over a subset of J slots (positions `slots`), entries are series in zeta.
  struct Factor {
    std::vector<int> slots;
    std::vector<LL> e;  // size D^{|slots|}, out indexing
  };

  Real overflow(0), biggest(0);

  for (int ai = 0; ai < 2; ++ai) {
    Local& loc = *local_[ai];
    std::vector<LL> br(JN, zero_series());

    // w_{h,m}(z or sigma z, slots...), contracted in the first slot
    auto side = [&](int h, const std::vector<int>& slots, bool sigma) {
      Factor f;
      f.slots = slots;
      int m = static_cast<int>(slots.size());
      f.e.assign(ipow(D, m), zero_series());
      if (h == 0 && m == 1) {  // Bergman kernel against z_i
        for (int k = 2; k <= K; ++k) {
          int v = ai * (K - 1) + (k - 2);
          f.e[v] = sigma ? bergman_s(ai, k - 2) : LL::monomial(Complex(k - 1), k - 2);
        }
        return f;
      }
      const Correlator& w = omega(h, m + 1);
      int Dl = w.dim();
      int rest = ipow(Dl, m);
      for (int r = 0; r < rest; ++r) {
        LL acc = zero_series();
        bool any = false;
        for (int v0 = 0; v0 < Dl; ++v0) {
          const Complex& cf = w.c[static_cast<size_t>(v0) * rest + r];
          if (cf.is_zero()) continue;
          int b = v0 / (w.K - 1), k = v0 % (w.K - 1) + 2;
          acc += (sigma ? e_s(ai, b, k) : e_z(ai, b, k)) * cf;
          any = true;
        }
        if (!any) continue;
        int idx = 0, rr = r;
        std::vector<int> digits(m);
        for (int i = m - 1; i >= 0; --i) {
          digits[i] = rr % Dl;
          rr /= Dl;
        }
        for (int i = 0; i < m; ++i) idx = idx * D + out_index(w.K, digits[i]);
        f.e[idx] = std::move(acc);
      }
      return f;
    };

    // w_{g-1,n+2}(z, sigma z, J)
    if (g >= 1) {
      if (g == 1 && n == 0) {
        LL diff = LL::monomial(Complex(1), 1) - loc.s;
        br[0] += diff.inverse().pow(2) * loc.sigma_prime;
      } else {
        const Correlator& w = omega(g - 1, n + 2);
        int Dl = w.dim();
        int rest = ipow(Dl, n);
        for (int r = 0; r < rest; ++r) {
          LL acc = zero_series();
          for (int v1 = 0; v1 < Dl; ++v1) {
            LL inner = zero_series();
            bool any = false;
            for (int v0 = 0; v0 < Dl; ++v0) {
              const Complex& cf = w.c[(static_cast<size_t>(v0) * Dl + v1) * rest + r];
              if (cf.is_zero()) continue;
              inner += e_z(ai, v0 / (w.K - 1), v0 % (w.K - 1) + 2) * cf;
              any = true;
            }
            if (any) acc += inner * e_s(ai, v1 / (w.K - 1), v1 % (w.K - 1) + 2);
          }
          if (empty_series(acc)) continue;
          int idx = 0, rr = r;
          std::vector<int> digits(n);
          for (int i = n - 1; i >= 0; --i) {
            digits[i] = rr % Dl;
            rr /= Dl;
          }
          for (int i = 0; i < n; ++i) idx = idx * D + out_index(w.K, digits[i]);
          br[idx] += acc;
        }
      }
    }

    // sum' over splits
    for (int g1 = 0; g1 <= g; ++g1) {
      int g2 = g - g1;
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> I, Ic;
        for (int i = 0; i < n; ++i) (mask >> i & 1 ? I : Ic).push_back(i);
        if (g1 == 0 && I.empty()) continue;
        if (g2 == 0 && Ic.empty()) continue;
        Factor f1 = side(g1, I, false);
        Factor f2 = side(g2, Ic, true);
        int n1 = static_cast<int>(I.size()), n2 = static_cast<int>(Ic.size());
        int N1 = ipow(D, n1), N2 = ipow(D, n2);
        std::vector<int> full(n);
        for (int i1 = 0; i1 < N1; ++i1) {
          if (empty_series(f1.e[i1])) continue;
          int r = i1;
          for (int j = n1 - 1; j >= 0; --j) {
            full[I[j]] = r % D;
            r /= D;
          }
          for (int i2 = 0; i2 < N2; ++i2) {
            if (empty_series(f2.e[i2])) continue;
            int r2 = i2;
            for (int j = n2 - 1; j >= 0; --j) {
              full[Ic[j]] = r2 % D;
              r2 /= D;
            }
            int idx = 0;
            for (int i = 0; i < n; ++i) idx = idx * D + full[i];
            br[idx] += f1.e[i1] * f2.e[i2];
          }
        }
      }
    }

    // residues against the kernel expansion sum_m (zeta^m - s^m)/(z0 - a)^{m+1}
    for (int r = 0; r < JN; ++r) {
      if (empty_series(br[r])) continue;
      LL G = loc.fk * br[r];
      for (int m = 1; m <= K; ++m) {  // m = K is one past the cap: must vanish
        const LL& kp = kernel_poly(ai, m);
        Complex res(0);
        for (int j = kp.valuation(); j <= -1 - G.valuation(); ++j) {
          Complex a = kp[j];
          if (a.is_zero()) continue;
          res += a * G[-1 - j];
        }
        if (m == K) {
          overflow = std::max(overflow, abs(res));
        } else {
          out.c[static_cast<size_t>(ai * (K - 1) + (m - 1)) * JN + r] += res;
          biggest = std::max(biggest, abs(res));
        }
      }
    }
  }
  overflow_ = biggest > 0 ? overflow / biggest : overflow;
  // beyond-cap coefficients are analytically zero; a visible one means the
  // local expansions were too short
  if (overflow_ > ulp_scale(static_cast<int>(precision_bits()) / 2)) {
    std::ostringstream os;
    os << "pole beyond cap in w_{" << g << "," << n_out << "}";
    throw InsufficientOrder(order_message(L_, os.str()));
  }
  return out;
}

Complex RecursionEngine::omega_at(int g, int n, const std::vector<Complex>& z) {
  if (static_cast<int>(z.size()) != n) throw std::invalid_argument("wrong number of points");
  if (g == 0 && n == 1) return curve_->y(z[0]) * curve_->dx(z[0]);
  if (g == 0 && n == 2) {
    Complex d = z[0] - z[1];
    return Complex(1) / (d * d);
  }
  return omega(g, n).evaluate(z);
}

Complex RecursionEngine::free_energy_complex(int g) {
  if (g < 2) throw std::invalid_argument("free_energy: g >= 2");
  const Correlator& w = omega(g, 1);
  Complex sum(0);
  try {
    for (int ai = 0; ai < 2; ++ai) {
      const LL& phi = local_[ai]->phi;
      for (int k = 2; k <= w.K; ++k) sum += w.c[ai * (w.K - 1) + (k - 2)] * phi[k - 1];
    }
  } catch (const TruncationError& e) {
    throw InsufficientOrder(order_message(L_, e.what()));
  }
  return sum / Real(2 - 2 * g);
}

Real RecursionEngine::free_energy(int g) {
  Complex f = free_energy_complex(g);
  Real scale = std::max(abs(f), Real(1));
  if (curve_->real_coefficients() && abs(f.imag()) >= Real("1e-20") * scale) {
    std::ostringstream os;
    os << "F_" << g << " has imaginary part " << to_decimal(f.imag(), 6);
    throw RealityError(os.str());
  }
  return f.real();
}

// ---------------------------------------------------------------------------

Complex f1_complex(const SpectralCurve& curve) {
  Complex c = curve.zhukovsky_scale();
  Complex v = c * c * curve.dy_at_branch(1) * curve.dy_at_branch(-1);
  if (v.is_zero()) throw OutOfRegime("y'(+-1) vanishes");
  return log(v) / Real(24);
}

Real f1(const SpectralCurve& curve) {
  Complex c = curve.zhukovsky_scale();
  Complex v = c * c * curve.dy_at_branch(1) * curve.dy_at_branch(-1);
  if (abs(v) == 0) throw OutOfRegime("y'(+-1) vanishes");
  return log(abs(v)) / 24;
}

Complex w_correction(RecursionEngine& engine, int g, int n, const std::vector<Complex>& x) {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("wrong number of points");
  const SpectralCurve& c = engine.curve();
  std::vector<Complex> z;
  Complex jac(1);
  for (const auto& xi : x) {
    z.push_back(c.z_of_x(xi));
    jac *= c.dx(z.back());
  }
  if (g == 0 && n == 1) return c.y(z[0]);
  Complex w = engine.omega_at(g, n, z) / jac;
  if (g == 0 && n == 2) {
    Complex d = x[0] - x[1];
    w -= Complex(1) / (d * d);
  }
  return w;
}

}  // namespace plancherel

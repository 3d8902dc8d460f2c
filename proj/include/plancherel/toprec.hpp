#pragma once

// Topological recursion on one-cut curves with branch points z = +-1 and
// involution z -> 1/z:
//
//   w_{g,n+1}(z0, J) = sum_{a=+-1} Res_{z->a} K(z0, z) [ w_{g-1,n+2}(z, 1/z, J)
//                       + sum' w_{g1}(z, I) w_{g2}(1/z, J\I) ]
//   K(z0, z) = (1/(z0 - z) - 1/(z0 - 1/z)) dz0 / (2 (y(z) - y(1/z)) x'(z) dz)
//
// Stable correlators are stored as pole-part tensors at the branch points.

#include "plancherel/curve.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace plancherel {

struct InsufficientOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RealityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// max pole order of w_{g,n} in any variable
inline int pole_cap(int g, int n) { return 6 * g - 4 + 2 * n; }
int default_local_order(int g_max);

// sum c[(a_1,k_1)..(a_n,k_n)] prod dz_i / (z_i - a_i)^{k_i}, 2 <= k_i <= K.
// Slot index v = b * (K - 1) + (k - 2) with b = 0 for a = +1, 1 for a = -1.
struct Correlator {
  int g = 0, n = 0;
  int K = 0;
  std::vector<Complex> c;  // row-major over n slots of size dim()

  int dim() const { return 2 * (K - 1); }
  static int branch_of(int b) { return b == 0 ? 1 : -1; }
  int slot(int a, int k) const { return (a > 0 ? 0 : 1) * (K - 1) + (k - 2); }
  const Complex& at(const std::vector<int>& v) const;
  // coefficient of dz_1 ... dz_n at the given points
  Complex evaluate(const std::vector<Complex>& z) const;
};

class RecursionEngine {
 public:
  RecursionEngine(std::shared_ptr<const SpectralCurve> curve, int g_max, int local_order = 0);

  const SpectralCurve& curve() const { return *curve_; }
  int g_max() const { return g_max_; }
  int local_order() const { return L_; }

  // stable (2g - 2 + n > 0)
  const Correlator& omega(int g, int n);
  // w_{g,n}/dz_1..dz_n at points, including the (0,1) and (0,2) base cases
  Complex omega_at(int g, int n, const std::vector<Complex>& z);

  // (1/(2-2g)) sum_a Res Phi w_{g,1}, dPhi = y dx; complex for complex curves
  Complex free_energy_complex(int g);
  // real part, after asserting Im F / max(|F|, 1) < 1e-20
  Real free_energy(int g);

  // magnitude of the first coefficient beyond the pole cap, relative to the
  // largest retained one, from the most recent omega computation
  Real last_overflow() const { return overflow_; }

 private:
  struct Local;
  using LL = LocalLaurent;

  Correlator compute(int g, int n);
  const LL& e_z(int ai, int bi, int k);
  const LL& e_s(int ai, int bi, int k);
  const LL& kernel_poly(int ai, int m);
  const LL& bergman_s(int ai, int m);

  std::shared_ptr<const SpectralCurve> curve_;
  int g_max_, L_;
  std::vector<std::shared_ptr<Local>> local_;
  std::map<std::pair<int, int>, Correlator> memo_;
  Real overflow_;
};

// (1/24) ln |c^2 y'(1) y'(-1)|, x = c (z + 1/z) + const
Real f1(const SpectralCurve& curve);
Complex f1_complex(const SpectralCurve& curve);

// W_n^{(g)}(x_1..x_n) = w_{g,n}(z(x_i)) / prod dx_i on the physical sheet;
// W_2^{(0)} has the 1/(x1 - x2)^2 double pole removed.
Complex w_correction(RecursionEngine& engine, int g, int n, const std::vector<Complex>& x);

}  // namespace plancherel

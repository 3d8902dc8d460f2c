#pragma once

#include "plancherel/numeric.hpp"
#include "plancherel/qweight.hpp"
#include "plancherel/series.hpp"

#include <vector>

namespace plancherel {

struct PlancherelSumSpec {
  Real q;
  std::vector<Real> t;  // t[0] = t_2, t[1] = t_3, ...
  int N = -1;           // max length; -1 unbounded
  int max_weight = 0;
};

struct PlancherelSum {
  Real value;
  Real last_shell;           // contribution of |lambda| = max_weight
  std::vector<Real> shells;  // per-weight contributions
  long long partitions = 0;
};

// Z = sum P(lambda) q^|lambda| exp(-sum_k t_k q^{(1-k)/2} C_k / k), truncated.
PlancherelSum z_plancherel(const PlancherelSumSpec& spec);

struct MeanLength {
  Real mean;
  Real z;
  Real last_shell;
};
MeanLength mean_length(const Real& q, int max_weight);

struct QDeformedSumSpec {
  int p = 0;
  int d_max = 1;
  int g_max = 2;
};

struct QDeformedSeries {
  int p = 0, d_max = 0, g_max = 0;
  std::vector<QSum> coeffs;                        // Q^0..Q^d_max, exact in s = q^{1/2}
  std::vector<LaurentSeries<BigRational>> gs;      // same, expanded in g_s (q = e^{-g_s})
  std::vector<LaurentSeries<BigRational>> log_gs;  // coefficients of ln Z
  // coefficient of Q^d g_s^{2g-2} in ln Z
  BigRational connected(int g, int d) const;
};

QDeformedSeries z_qdeformed_series(const QDeformedSumSpec& spec);

// Worker cap for the partition walks (results do not depend on it).
void set_oracle_threads(int n);

}  // namespace plancherel

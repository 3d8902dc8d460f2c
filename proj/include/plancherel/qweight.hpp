#pragma once

#include "plancherel/partitions.hpp"
#include "plancherel/series.hpp"

#include <map>
#include <vector>

namespace plancherel {

// Integer coefficients of Phi_d(s).
const std::vector<BigInt>& cyclotomic(int d);

// Integer Laurent polynomial sum_k c[k - low] s^k.
struct LaurentPoly {
  long low = 0;
  std::vector<BigInt> c;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool is_zero() const;
  void trim();
};

// Exact sum of factored q-rationals over a common denominator
// prod_d Phi_d(s)^den[d].
class QSum {
 public:
  void add(const QRational& term);
  const LaurentPoly& numerator() const { return num_; }
  const std::map<int, long>& denominator() const { return den_; }
  Real eval(const Real& s) const;
  // s = e^{-g/2}: Laurent series in g known mod g^order (order is absolute).
  LaurentSeries<BigRational> gs_expansion(int order) const;

 private:
  void raise_denominator(int d, long e);
  LaurentPoly num_;
  std::map<int, long> den_;
};

}  // namespace plancherel

#pragma once

#include "plancherel/numeric.hpp"
#include "plancherel/series.hpp"

#include <vector>

namespace plancherel {

// B_n with B_1 = -1/2.
BigRational bernoulli(int n);
BigInt binomial(int n, int k);
BigInt factorial(int n);

// Li_{1-m}(x): m = 0 -> -ln(1-x), m = 1 -> x/(1-x), m >= 2 -> rational function.
Complex neg_polylog(int m, const Complex& x);
// Numerator P_k of Li_{-k}(x) = P_k(x) / (1-x)^{k+1}, integer coefficients.
std::vector<BigInt> neg_polylog_numerator(int k);

// Li_n(x), n >= 2, principal branch (cut [1, inf)).
Complex polylog(int n, const Complex& x);
Real polylog(int n, const Real& x);  // x <= 1

// T_j(s) with T_j(z + 1/z) = z^j + z^-j; T_0 = 2, T_{-j} = T_j.
Complex chebyshev_eval(int j, const Complex& s);
// Coefficients (in s) of T_j, exact.
std::vector<BigInt> chebyshev_coeffs(int j);

// Gamma(k (p-1)^2) / (k! Gamma(k p (p-2) + 1)), continued through the Gamma
// poles as the product prod_{j=1}^{k-1} (k p (p-2) + j) / k!.
BigRational gamma_ratio_coefficient(int p, int k);

// Power series in x of -ln(1-x), Li_n(x), exact.
PowerSeries<BigRational> polylog_series(int n, int order);

}  // namespace plancherel

#pragma once

#include "plancherel/numeric.hpp"

#include <functional>
#include <vector>

namespace plancherel {

using Vec = std::vector<Real>;
using Mat = std::vector<std::vector<Real>>;

struct ConvergenceError : NumericError {
  using NumericError::NumericError;
};
struct SingularJacobian : NumericError {
  using NumericError::NumericError;
};

struct NewtonOptions {
  Real tol;           // on the residual max-norm; 0 -> 2^-200 scaled to precision
  int max_iter = 100;
  NewtonOptions();
};

struct NewtonResult {
  Vec x;
  int iterations = 0;
  Real residual;
};

using ResidualFn = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;  // empty -> finite differences

NewtonResult newton_solve(const ResidualFn& f, const JacobianFn& jac, Vec seed,
                          const NewtonOptions& opt = NewtonOptions());

// Gaussian elimination with partial pivoting; throws SingularJacobian.
Vec solve_linear(Mat a, Vec b);

// Complex scalar Newton, used for the complex-Q path of the X_p solve.
Complex newton_solve_complex(const std::function<Complex(const Complex&)>& f,
                             const std::function<Complex(const Complex&)>& df, Complex seed,
                             const Real& tol, int max_iter = 100);

}  // namespace plancherel

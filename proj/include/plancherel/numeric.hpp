#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace plancherel {

namespace bmp = boost::multiprecision;

using Real = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;
using BigInt = bmp::number<bmp::gmp_int, bmp::et_off>;
using BigRational = bmp::number<bmp::gmp_rational, bmp::et_off>;

constexpr unsigned kDefaultPrecisionBits = 256;

// Working precision is process-global (mpfr default precision). Set it once,
// before constructing values; PLANCHEREL_PRECISION overrides the default.
unsigned precision_bits();
void set_precision_bits(unsigned bits);
unsigned precision_from_env(unsigned fallback = kDefaultPrecisionBits);

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(precision_bits()) { set_precision_bits(bits); }
  ~PrecisionScope() { set_precision_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2^-bits, handy for tolerances relative to the working precision.
Real ulp_scale(int bits);
Real pi();
Real to_real(const BigRational& q);
Real to_real(const BigInt& n);
Real parse_real(const std::string& s);
BigRational parse_rational(const std::string& s);
std::string to_decimal(const Real& x, int digits = 0);  // 0: all significant digits
std::string to_string(const BigRational& q);

class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(int r) : re_(r), im_(0) {}
  Complex(long r) : re_(r), im_(0) {}
  Complex(double r) : re_(r), im_(0) {}
  Complex(const Real& r) : re_(r), im_(0) {}
  Complex(const Real& r, const Real& i) : re_(r), im_(i) {}

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }

  Complex& operator+=(const Complex& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Complex& operator-=(const Complex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& r) { re_ *= r; im_ *= r; return *this; }
  Complex& operator/=(const Real& r) { re_ /= r; im_ /= r; return *this; }

  Complex operator-() const { return {-re_, -im_}; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

 private:
  Real re_, im_;
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator*(Complex a, const Real& b) { return a *= b; }
inline Complex operator*(const Real& b, Complex a) { return a *= b; }
inline Complex operator/(Complex a, const Real& b) { return a /= b; }
inline bool operator==(const Complex& a, const Complex& b) {
  return a.real() == b.real() && a.imag() == b.imag();
}

Complex conj(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch, arg in (-pi, pi]
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, long n);
Complex polar(const Real& r, const Real& theta);
std::string to_decimal(const Complex& z, int digits = 0);

}  // namespace plancherel

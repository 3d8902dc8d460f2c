#include "plancherel/numeric.hpp"

#include <cstdlib>
#include <iomanip>
#include <sstream>

namespace plancherel {

namespace {
unsigned digits10_for(unsigned bits) {
  // mpfr backend takes digits10; round up so we never lose bits
  return static_cast<unsigned>(bits * 0.30102999566398120) + 2;
}
unsigned g_bits = 0;
}  // namespace

unsigned precision_bits() {
  if (g_bits == 0) set_precision_bits(kDefaultPrecisionBits);
  return g_bits;
}

void set_precision_bits(unsigned bits) {
  if (bits < 32) throw NumericError("precision below 32 bits");
  g_bits = bits;
  Real::default_precision(digits10_for(bits));
}

unsigned precision_from_env(unsigned fallback) {
  const char* e = std::getenv("PLANCHEREL_PRECISION");
  if (!e || !*e) return fallback;
  char* end = nullptr;
  long v = std::strtol(e, &end, 10);
  if (*end != '\0' || v < 32 || v > 1 << 20)
    throw NumericError(std::string("bad PLANCHEREL_PRECISION: ") + e);
  return static_cast<unsigned>(v);
}

namespace {
// Values built before main() must already carry the working precision.
const bool g_precision_init = [] {
  try {
    set_precision_bits(precision_from_env());
  } catch (const NumericError&) {
    set_precision_bits(kDefaultPrecisionBits);  // the CLI reports the bad value
  }
  return true;
}();
}  // namespace

Real ulp_scale(int bits) { return ldexp(Real(1), -bits); }

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const BigRational& q) {
  Real r(numerator(q));
  r /= Real(denominator(q));
  return r;
}

Real to_real(const BigInt& n) { return Real(n); }

Real parse_real(const std::string& s) {
  if (s.empty()) throw NumericError("empty number");
  // accept p/q too
  auto slash = s.find('/');
  if (slash != std::string::npos) return to_real(parse_rational(s));
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw NumericError("not a decimal number: " + s);
  }
}

BigRational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return BigRational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot == std::string::npos && s.find_first_of("eE") == std::string::npos)
      return BigRational(BigInt(s));
    // finite decimal -> exact rational
    std::string mant = s, expo;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) { mant = s.substr(0, e); expo = s.substr(e + 1); }
    long ex = expo.empty() ? 0 : std::stol(expo);
    std::string digits;
    long frac = 0;
    bool after = false;
    for (char c : mant) {
      if (c == '.') { after = true; continue; }
      digits += c;
      if (after) ++frac;
    }
    BigRational r{BigInt(digits)};
    long shift = ex - frac;
    BigInt ten = pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    return shift < 0 ? r / ten : r * ten;
  } catch (const NumericError&) {
    throw;
  } catch (const std::exception&) {
    throw NumericError("not a rational number: " + s);
  }
}

std::string to_decimal(const Real& x, int digits) {
  if (digits <= 0) digits = static_cast<int>(precision_bits() * 0.30102999566398120);
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << x;
  return os.str();
}

std::string to_string(const BigRational& q) { return q.str(); }

Complex& Complex::operator*=(const Complex& o) {
  Real r = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.im_ == 0) {
    if (o.re_ == 0) throw NumericError("complex division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Real d = o.re_ * o.re_ + o.im_ * o.im_;
  if (d == 0) throw NumericError("complex division by zero");
  Real r = (re_ * o.re_ + im_ * o.im_) / d;
  im_ = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  return *this;
}

Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }
Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }
Real arg(const Complex& z) { return atan2(z.imag(), z.real()); }

Complex exp(const Complex& z) {
  Real m = exp(z.real());
  if (z.imag() == 0) return Complex(m);
  return {m * cos(z.imag()), m * sin(z.imag())};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw NumericError("log(0)");
  if (z.imag() == 0 && z.real() > 0) return Complex(log(z.real()));
  if (z.imag() == 0) return {log(-z.real()), pi()};
  return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
  if (z.imag() == 0) {
    if (z.real() >= 0) return Complex(sqrt(z.real()));
    return {Real(0), sqrt(-z.real())};
  }
  Real r = abs(z);
  if (z.real() >= 0) {
    Real a = sqrt((r + z.real()) / 2);
    return {a, z.imag() / (2 * a)};
  }
  Real b = sqrt((r - z.real()) / 2);
  if (z.imag() < 0) b = -b;
  return {z.imag() / (2 * b), b};
}

Complex pow(const Complex& z, long n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex r(1), b = z;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

std::string to_decimal(const Complex& z, int digits) {
  return to_decimal(z.real(), digits) + (z.imag() < 0 ? "" : "+") + to_decimal(z.imag(), digits) + "i";
}

}  // namespace plancherel

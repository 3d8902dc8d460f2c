#include "plancherel/partitions.hpp"

#include "plancherel/series.hpp"
#include "plancherel/special.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace plancherel {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("negative part");
    if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("parts must be weakly decreasing");
    weight_ += parts_[i];
  }
}

std::vector<int> Partition::hooks(int N) const {
  if (N < length()) throw std::invalid_argument("hooks: N below partition length");
  std::vector<int> h(N);
  for (int i = 0; i < N; ++i) h[i] = part(i) - (i + 1) + N;
  return h;
}

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[j];
  return Partition(std::move(c));
}

std::vector<int> Partition::cell_hooks() const {
  Partition c = conjugate();
  std::vector<int> out;
  out.reserve(weight_);
  for (int i = 0; i < length(); ++i)
    for (int j = 0; j < parts_[i]; ++j) out.push_back(parts_[i] - j + c.part(j) - i - 1);
  return out;
}

std::string Partition::to_json() const { return nlohmann::json(parts_).dump(); }

Partition Partition::from_json(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  if (!j.is_array()) throw std::invalid_argument("partition JSON must be an array");
  return Partition(j.get<std::vector<int>>());
}

// --- enumeration -----------------------------------------------------------

PartitionStream::PartitionStream(int max_weight, int max_length)
    : max_weight_(max_weight), max_length_(max_length) {
  if (max_weight < 0) throw std::invalid_argument("max_weight < 0");
}

bool PartitionStream::first_of_weight(int n) {
  cur_.clear();
  if (n == 0) return true;
  if (max_length_ == 0) return false;
  cur_.push_back(n);
  return true;
}

// next partition of the same weight in reverse-lex order respecting max_length
bool PartitionStream::advance_within_weight() {
  while (true) {
    // find rightmost part > 1
    int rem = 0;
    while (!cur_.empty() && cur_.back() == 1) {
      cur_.pop_back();
      ++rem;
    }
    if (cur_.empty()) return false;
    int v = --cur_.back();
    ++rem;
    while (rem > 0) {
      int t = std::min(v, rem);
      cur_.push_back(t);
      rem -= t;
    }
    if (max_length_ < 0 || static_cast<int>(cur_.size()) <= max_length_) return true;
  }
}

std::optional<Partition> PartitionStream::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    n_ = 0;
    first_of_weight(0);
    return Partition(cur_);
  }
  if (n_ > 0 && advance_within_weight()) return Partition(cur_);
  while (++n_ <= max_weight_) {
    if (first_of_weight(n_)) return Partition(cur_);
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Partition> enumerate(int max_weight, int max_length) {
  std::vector<Partition> out;
  PartitionStream s(max_weight, max_length);
  while (auto p = s.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<Partition> partitions_of(int n, int max_length) {
  std::vector<Partition> out;
  PartitionStream s(n, max_length);
  while (auto p = s.next())
    if (p->weight() == n) out.push_back(std::move(*p));
  return out;
}

// --- weights -----------------------------------------------------------------

BigRational plancherel_weight(const Partition& l, int N) {
  if (N < 0) N = l.length();
  auto h = l.hooks(N);
  BigInt num(1), den(1);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) num *= (h[i] - h[j]);
    den *= factorial(h[i]);
  }
  return BigRational(num * num, den * den);
}

QRational& QRational::operator*=(const QRational& o) {
  sign *= o.sign;
  s_exp += o.s_exp;
  for (auto [d, m] : o.phi) {
    long& e = phi[d];
    e += m;
    if (e == 0) phi.erase(d);
  }
  return *this;
}

namespace {
std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}
}  // namespace

QRational q_number(int n) {
  QRational r;
  if (n == 0) throw std::invalid_argument("[0] = 0 has no factored form");
  if (n < 0) {
    r = q_number(-n);
    r.sign = -r.sign;
    return r;
  }
  r.sign = -1;
  r.s_exp = -n;
  for (int d : divisors(2 * n)) r.phi[d] = 1;
  return r;
}

QRational q_plancherel_weight(const Partition& l, int N) {
  if (N < 0) N = l.length();
  auto h = l.hooks(N);
  QRational r;
  auto mul_pow = [&](const QRational& f, int e) {
    QRational g = f;
    g.s_exp *= e;
    if (e % 2 == 0) g.sign = 1;
    for (auto& [d, m] : g.phi) m *= e;
    r *= g;
  };
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) mul_pow(q_number(h[i] - h[j]), 2);
  for (int i = 0; i < N; ++i)
    for (int k = 1; k <= h[i]; ++k) mul_pow(q_number(k), -2);
  return r;
}

namespace {
// Phi_d(s) numerically via prod_{e | d} (s^e - 1)^{mu(d/e)}
int mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  }
  if (n > 1) r = -r;
  return r;
}
}  // namespace

Real QRational::eval(const Real& s) const {
  Real r = pow(s, s_exp);
  if (sign < 0) r = -r;
  for (auto [d, m] : phi) {
    Real v(1);
    for (int e : divisors(d)) {
      int mu = mobius(d / e);
      if (mu == 1) v *= pow(s, e) - 1;
      else if (mu == -1) v /= pow(s, e) - 1;
    }
    r *= pow(v, m);
  }
  return r;
}

std::string QRational::to_string() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "") << "s^" << s_exp;
  for (auto [d, m] : phi) os << "*Phi" << d << "^" << m;
  return os.str();
}

Real q_plancherel_weight(const Partition& l, const Real& q, int N) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("numeric q-weight needs 0 < q < 1");
  if (N < 0) N = l.length();
  Real s = sqrt(q);
  auto qn = [&](int n) { return pow(s, -n) - pow(s, n); };
  auto h = l.hooks(N);
  Real num(1), den(1);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) num *= qn(h[i] - h[j]);
    for (int k = 1; k <= h[i]; ++k) den *= qn(k);
  }
  return (num * num) / (den * den);
}

// --- Casimirs ----------------------------------------------------------------

std::vector<BigRational> casimirs(const Partition& l, int k_max, int N) {
  if (k_max < 1) throw std::invalid_argument("k_max < 1");
  if (N < 0) N = l.length();
  auto h = l.hooks(N);
  int ord = k_max + 2;
  using PS = PowerSeries<BigRational>;
  auto exp_lin = [&](const BigRational& c) {
    PS e(ord);
    BigRational term(1);
    for (int m = 0; m < ord; ++m) {
      e[m] = term;
      term = term * c / BigRational(m + 1);
    }
    return e;
  };
  // z * (generating function) = z sum_i e^{c_i z} + e^{a z} z/(e^z-1) - 1
  PS z = PS::variable(ord);
  PS acc(ord);
  for (int i = 0; i < N; ++i) acc += exp_lin(BigRational(2 * h[i] - 2 * N + 1, 2));
  acc = z * acc;
  PS bern(ord);
  for (int m = 0; m < ord; ++m) bern[m] = bernoulli(m) / BigRational(factorial(m));
  acc += exp_lin(BigRational(1 - 2 * N, 2)) * bern;
  acc[0] -= 1;
  if (acc[0] != 0) throw std::logic_error("casimir series has a pole");
  std::vector<BigRational> c(k_max);
  for (int k = 1; k <= k_max; ++k) c[k - 1] = acc[k + 1] * BigRational(factorial(k));
  return c;
}

long casimir2(const Partition& l) {
  long c = 0;
  for (int i = 0; i < l.length(); ++i) c += static_cast<long>(l.part(i)) * (l.part(i) - 2 * (i + 1) + 1);
  return c;
}

}  // namespace plancherel

#pragma once

#include "plancherel/numeric.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plancherel {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);  // trailing zeros dropped; throws if not weakly decreasing

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int part(int i) const { return i < length() ? parts_[i] : 0; }  // 0-based
  bool empty() const { return parts_.empty(); }

  // h_i = lambda_i - i + N, i = 1..N (returned 0-based); N >= length()
  std::vector<int> hooks(int N) const;
  // classical hook lengths of every cell, row-major
  std::vector<int> cell_hooks() const;
  Partition conjugate() const;

  std::string to_json() const;
  static Partition from_json(const std::string& s);

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

// All partitions with |lambda| <= max_weight and length <= max_length, by
// increasing weight and, within a weight, reverse-lexicographic:
// (5), (4,1), (3,2), (3,1,1), ...
class PartitionStream {
 public:
  explicit PartitionStream(int max_weight, int max_length = -1);
  std::optional<Partition> next();

 private:
  bool advance_within_weight();
  bool first_of_weight(int n);
  int max_weight_, max_length_;
  int n_ = 0;
  std::vector<int> cur_;
  bool started_ = false, done_ = false;
};

std::vector<Partition> enumerate(int max_weight, int max_length = -1);
std::vector<Partition> partitions_of(int n, int max_length = -1);

// (dim lambda / |lambda|!)^2 from the product formula at N (default n(lambda)).
BigRational plancherel_weight(const Partition& l, int N = -1);

// Exact q-deformed weight in s = q^{1/2}: prod [h_i-h_j]^2 / prod ([h_i]!)^2
// with [n] = s^-n - s^n = -s^-n prod_{d | 2n} Phi_d(s). Stored factored:
// sign * s^s_exp * prod_d Phi_d(s)^phi[d]. The factored form is canonical, so
// equality is exact equality of rational functions.
struct QRational {
  int sign = 1;
  long s_exp = 0;
  std::map<int, long> phi;
  bool operator==(const QRational& o) const { return sign == o.sign && s_exp == o.s_exp && phi == o.phi; }
  QRational& operator*=(const QRational& o);
  Real eval(const Real& s) const;
  std::string to_string() const;
};
QRational q_number(int n);
QRational q_plancherel_weight(const Partition& l, int N = -1);
Real q_plancherel_weight(const Partition& l, const Real& q, int N = -1);  // 0 < q < 1

// Exact C_1..C_kmax from the generating function
// sum_k z^k C_k / k! = sum_i e^{z(h_i-N+1/2)} + e^{-(N-1/2)z}/(e^z-1) - 1/z.
std::vector<BigRational> casimirs(const Partition& l, int k_max, int N = -1);
// C_2 = sum_i lambda_i (lambda_i - 2i + 1) = 2 * (sum of contents)
long casimir2(const Partition& l);

}  // namespace plancherel

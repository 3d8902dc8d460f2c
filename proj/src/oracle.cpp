#include "plancherel/oracle.hpp"

#include "plancherel/partitions.hpp"
#include "plancherel/special.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <atomic>
#include <cstdint>
#include <memory>
#include <thread>

namespace plancherel {

namespace {

// Depth-first walk over partitions, adding rows on top. With N = n(lambda),
// h_i = lambda_i + (rows below i), so existing h's never change when a row is
// added above; the hook product H = prod h_i! / prod_{i<j} (h_i - h_j) picks up
// the integer factor prod{ k in 1..h_new, k != h_new - h_j }.
struct Walker {
  int K, N;
  std::vector<int> rows, hs;
  std::vector<__mpz_struct> H;  // per depth
  std::vector<char> mark;

  template <class Visit>
  void run(int first_row, Visit&& visit) {
    H.resize(static_cast<size_t>(std::min(N, K)) + 2);
    for (auto& h : H) mpz_init(&h);
    mark.assign(static_cast<size_t>(K + N + 2), 0);
    mpz_set_ui(&H[0], 1);
    if (first_row == 0) {
      visit(0, 0, &H[0], 0L, rows);
    } else {
      child(first_row, 0, 0L, visit);
    }
    for (auto& h : H) mpz_clear(&h);
  }

  template <class Visit>
  void child(int l0, int weight, long c2, Visit& visit) {
    int depth = static_cast<int>(rows.size());
    int h = l0 + depth;
    for (int hj : hs) mark[h - hj] = 1;
    mpz_ptr hn = &H[depth + 1];
    mpz_set(hn, &H[depth]);
    std::uint64_t chunk = 1;
    for (int k = 2; k <= h; ++k) {
      if (mark[k]) continue;
      if (chunk > (UINT64_MAX >> 9)) {
        mpz_mul_ui(hn, hn, chunk);
        chunk = 1;
      }
      chunk *= static_cast<std::uint64_t>(k);
    }
    mpz_mul_ui(hn, hn, chunk);
    for (int hj : hs) mark[h - hj] = 0;
    long c2n = c2 - 2L * weight + static_cast<long>(l0) * (l0 - 1);
    int wn = weight + l0;
    rows.push_back(l0);
    hs.push_back(h);
    visit(wn, depth + 1, hn, c2n, rows);
    if (depth + 1 < N)
      for (int l = l0; wn + l <= K; ++l) child(l, wn, c2n, visit);
    rows.pop_back();
    hs.pop_back();
  }
};

struct Accum {
  std::vector<Real> shells, len_shells;
  long long count = 0;
};

// Generic driver: subtrees keyed by the bottom row are independent, so they are
// farmed out to threads; the reduction runs in bottom-row order regardless of
// the thread count, which keeps results bit-identical.
template <class MakeVisitor>
std::vector<Accum> walk_all(int K, int N, int threads, MakeVisitor make) {
  int nsub = K + 1;  // 0 = empty partition, else bottom row value
  std::vector<Accum> acc(nsub);
  if (N == 0) nsub = 1;
  auto work = [&](int b) {
    Walker w{K, N < 0 ? K : N, {}, {}, {}, {}};
    Accum& a = acc[b];
    a.shells.assign(K + 1, Real(0));
    a.len_shells.assign(K + 1, Real(0));
    auto visit = make(a);
    if (b == 0) {
      w.run(0, visit);
    } else {
      // only the bottom row is fixed here; children add rows >= b
      w.run(b, visit);
    }
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int b = 0; b < nsub; ++b) work(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int b; (b = next++) < nsub;) work(b);
      });
    for (auto& th : pool) th.join();
  }
  acc.resize(nsub);
  return acc;
}

int g_threads = 1;

}  // namespace

void set_oracle_threads(int n) { g_threads = std::max(1, n); }

PlancherelSum z_plancherel(const PlancherelSumSpec& spec) {
  if (spec.max_weight < 0) throw std::invalid_argument("max_weight < 0");
  if (spec.q < 0) throw std::invalid_argument("q < 0");
  int K = spec.max_weight;
  PlancherelSum out;
  out.shells.assign(K + 1, Real(0));
  if (spec.q == 0) {
    out.value = 1;
    out.shells[0] = 1;
    out.last_shell = K == 0 ? Real(1) : Real(0);
    out.partitions = 1;
    return out;
  }
  bool any_t = false;
  for (auto& t : spec.t) any_t = any_t || t != 0;
  bool fast = spec.t.size() <= 1;

  std::vector<Real> qpow(K + 1);
  qpow[0] = 1;
  for (int n = 1; n <= K; ++n) qpow[n] = qpow[n - 1] * spec.q;

  // r^{C2}, C2 in [-K(K-1), K(K-1)]
  long c2max = static_cast<long>(K) * (K - 1);
  std::vector<Real> rpow;
  if (fast && any_t) {
    Real r = exp(-spec.t[0] / (2 * sqrt(spec.q)));
    rpow.assign(2 * c2max + 1, Real(1));
    Real rinv = 1 / r;
    for (long c = 1; c <= c2max; ++c) {
      rpow[c2max + c] = rpow[c2max + c - 1] * r;
      rpow[c2max - c] = rpow[c2max - c + 1] * rinv;
    }
  }
  // general couplings: C_k(empty) and q^{(1-k)/2}/k prefactors
  std::vector<Real> coef;
  std::vector<Real> cempty;
  if (!fast) {
    int kmax = static_cast<int>(spec.t.size()) + 1;
    auto ce = casimirs(Partition(), kmax);
    for (int k = 2; k <= kmax; ++k) {
      coef.push_back(spec.t[k - 2] * pow(spec.q, Real(1 - k) / 2) / k);
      cempty.push_back(to_real(ce[k - 1]));
    }
  }

  auto make = [&](Accum& a) {
    return [&, hf = std::make_shared<Real>(), tmp = std::make_shared<Real>()](
               int w, int len, mpz_srcptr H, long c2, const std::vector<int>& rows) mutable {
      ++a.count;
      mpfr_ptr hp = hf->backend().data();
      mpfr_ptr tp = tmp->backend().data();
      mpfr_set_z(hp, H, MPFR_RNDN);
      mpfr_sqr(hp, hp, MPFR_RNDN);
      if (!any_t) {
        mpfr_div(tp, qpow[w].backend().data(), hp, MPFR_RNDN);
      } else if (fast) {
        mpfr_mul(tp, qpow[w].backend().data(), rpow[c2max + c2].backend().data(), MPFR_RNDN);
        mpfr_div(tp, tp, hp, MPFR_RNDN);
      } else {
        // rows run bottom-to-top; row idx has i = len - idx counted from the top
        Real ex(0);
        for (size_t k = 2; k < coef.size() + 2; ++k) {
          __int128 acc = 0;
          for (int idx = 0; idx < len; ++idx) {
            long i = len - idx;
            __int128 a1 = 1, a0 = 1;
            for (size_t e = 0; e < k; ++e) {
              a1 *= 2L * rows[idx] - 2 * i + 1;
              a0 *= 1 - 2 * i;
            }
            acc += a1 - a0;
          }
          Real ck = Real(static_cast<long long>(acc)) / Real(1L << k) + cempty[k - 2];
          ex -= coef[k - 2] * ck;
        }
        *tmp = qpow[w] * exp(ex) / *hf;
      }
      mpfr_add(a.shells[w].backend().data(), a.shells[w].backend().data(), tp, MPFR_RNDN);
    };
  };
  auto parts = walk_all(K, spec.N, g_threads, make);
  for (auto& a : parts) {
    out.partitions += a.count;
    for (int n = 0; n <= K; ++n) out.shells[n] += a.shells[n];
  }
  out.value = 0;
  for (int n = 0; n <= K; ++n) out.value += out.shells[n];
  out.last_shell = out.shells[K];
  return out;
}

MeanLength mean_length(const Real& q, int max_weight) {
  MeanLength m;
  if (q == 0) {
    m.mean = 0;
    m.z = 1;
    m.last_shell = 0;
    return m;
  }
  int K = max_weight;
  std::vector<Real> qpow(K + 1);
  qpow[0] = 1;
  for (int n = 1; n <= K; ++n) qpow[n] = qpow[n - 1] * q;
  auto make = [&](Accum& a) {
    return [&, hf = std::make_shared<Real>(), tmp = std::make_shared<Real>()](
               int w, int len, mpz_srcptr H, long, const std::vector<int>&) mutable {
      ++a.count;
      mpfr_ptr hp = hf->backend().data();
      mpfr_ptr tp = tmp->backend().data();
      mpfr_set_z(hp, H, MPFR_RNDN);
      mpfr_sqr(hp, hp, MPFR_RNDN);
      mpfr_div(tp, qpow[w].backend().data(), hp, MPFR_RNDN);
      mpfr_add(a.shells[w].backend().data(), a.shells[w].backend().data(), tp, MPFR_RNDN);
      mpfr_mul_ui(tp, tp, static_cast<unsigned long>(len), MPFR_RNDN);
      mpfr_add(a.len_shells[w].backend().data(), a.len_shells[w].backend().data(), tp, MPFR_RNDN);
    };
  };
  auto parts = walk_all(K, -1, g_threads, make);
  std::vector<Real> sh(K + 1, Real(0)), lsh(K + 1, Real(0));
  for (auto& a : parts)
    for (int n = 0; n <= K; ++n) {
      sh[n] += a.shells[n];
      lsh[n] += a.len_shells[n];
    }
  Real z(0), l(0);
  for (int n = 0; n <= K; ++n) {
    z += sh[n];
    l += lsh[n];
  }
  m.z = z;
  m.mean = l / z;
  m.last_shell = sh[K];
  return m;
}

// ---------------------------------------------------------------------------

BigRational QDeformedSeries::connected(int g, int d) const {
  if (d < 0 || d > d_max) throw std::out_of_range("degree beyond d_max");
  return log_gs.at(d)[2 * g - 2];
}

QDeformedSeries z_qdeformed_series(const QDeformedSumSpec& spec) {
  if (spec.d_max < 1) throw std::invalid_argument("d_max >= 1 required");
  if (spec.g_max < 0) throw std::invalid_argument("g_max >= 0 required");
  QDeformedSeries out;
  out.p = spec.p;
  out.d_max = spec.d_max;
  out.g_max = spec.g_max;
  int ord = 2 * spec.g_max - 1 + 2 * spec.d_max;
  for (int d = 0; d <= spec.d_max; ++d) {
    QSum sum;
    for (const auto& l : partitions_of(d)) {
      QRational w = q_plancherel_weight(l);
      // q^{(p-1) C_2/2} = s^{(p-1) C_2}
      w.s_exp += static_cast<long>(spec.p - 1) * casimir2(l);
      sum.add(w);
    }
    out.gs.push_back(sum.gs_expansion(ord));
    out.coeffs.push_back(std::move(sum));
  }
  // ln Z over Q: sum_k (-1)^{k+1}/k (Z-1)^k
  using LS = LaurentSeries<BigRational>;
  int D = spec.d_max;
  std::vector<LS> x(D + 1, LS::zero(ord)), pw(D + 1, LS::zero(ord)), lg(D + 1, LS::zero(ord));
  for (int d = 1; d <= D; ++d) x[d] = out.gs[d];
  pw = x;
  for (int k = 1; k <= D; ++k) {
    BigRational c(k % 2 ? 1 : -1, k);
    for (int d = 1; d <= D; ++d) lg[d] += pw[d] * c;
    std::vector<LS> nx(D + 1, LS::zero(ord));
    for (int a = 1; a <= D; ++a)
      for (int b = 1; a + b <= D; ++b) nx[a + b] += pw[a] * x[b];
    pw = std::move(nx);
  }
  lg[0] = LS::zero(ord);
  out.log_gs = std::move(lg);
  return out;
}

}  // namespace plancherel

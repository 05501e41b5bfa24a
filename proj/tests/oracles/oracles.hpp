#pragma once

// Reference implementations written without touching the library, so tests
// compare two independent routes to the same number.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using Word = std::vector<int>;

inline Word word(std::uint64_t mask, std::size_t n) {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<int>((mask >> (n - 1 - i)) & 1U);
  return w;
}

// Runs of ones bounded by a zero on each side must have length >= d. Two
// adjacent zeros bound an empty run, which counts.
inline bool rll_ok(const Word& x, int d) {
  std::optional<std::size_t> last_zero;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) continue;
    if (last_zero && static_cast<int>(i - *last_zero - 1) < d) return false;
    last_zero = i;
  }
  return true;
}

// A word shorter than T counts as one partial window: at most T - w zeros.
inline bool swc_ok(const Word& x, int t, int w) {
  if (x.size() < static_cast<std::size_t>(t)) {
    int zeros = 0;
    for (int b : x) zeros += b == 0 ? 1 : 0;
    return zeros <= t - w;
  }
  for (std::size_t j = 0; j + t <= x.size(); ++j) {
    int ones = 0;
    for (int k = 0; k < t; ++k) ones += x[j + k];
    if (ones < w) return false;
  }
  return true;
}

inline bool sec_ok(const Word& x, int l, int w) {
  for (std::size_t j = 0; j < x.size(); j += l) {
    int ones = 0;
    for (int k = 0; k < l; ++k) ones += x[j + k];
    if (ones < w) return false;
  }
  return true;
}

template <typename Pred>
std::uint64_t brute_count(std::size_t n, Pred ok) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) count += ok(word(m, n)) ? 1 : 0;
  return count;
}

// Largest root of X^(d+1) - X^d - 1 by Newton's method in 256-bit floats,
// started to the right of the root where the polynomial is convex.
inline double rll_capacity(int d) {
  mpf_set_default_prec(256);
  mpf_class x(2.0);
  for (int it = 0; it < 200; ++it) {
    mpf_class xd(1.0);
    for (int k = 0; k < d; ++k) xd *= x;
    const mpf_class f = xd * x - xd - 1;
    const mpf_class df = (d + 1) * xd - (d == 0 ? mpf_class(0) : d * xd / x);
    x -= f / df;
  }
  return std::log2(x.get_d());
}

inline mpz_class binomial_tail(unsigned long l, unsigned long w) {
  mpz_class sum = 0;
  for (unsigned long i = w; i <= l; ++i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), l, i);
    sum += c;
  }
  return sum;
}

inline double sec_capacity(unsigned long l, unsigned long w) {
  mpf_set_default_prec(256);
  const mpz_class s = binomial_tail(l, w);
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, s.get_mpz_t());
  return (std::log2(mant) + static_cast<double>(exp)) / static_cast<double>(l);
}

// Spectral radius of the SWC constraint over the graph whose vertices are the
// valid T-bit windows and whose edges join overlapping windows. A different
// state space from the library's (T-1)-bit suffix graph; squared repeatedly
// in long double.
inline double swc_capacity(int t, int w) {
  std::vector<std::uint32_t> nodes;
  for (std::uint32_t m = 0; m < (1U << t); ++m)
    if (__builtin_popcount(m) >= w) nodes.push_back(m);
  const std::size_t n = nodes.size();
  std::vector<long double> a(n * n, 0.0L);
  const std::uint32_t mask = (1U << t) - 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (((nodes[i] << 1) & mask) == (nodes[j] & ~1U & mask)) a[i * n + j] = 1.0L;
  long double log_scale = 0.0L;
  int steps = 0;
  for (int round = 0; round < 40; ++round) {
    std::vector<long double> b(n * n, 0.0L);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const long double aik = a[i * n + k];
        if (aik == 0.0L) continue;
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] += aik * a[k * n + j];
      }
    long double total = 0.0L;
    for (auto v : b) total += v;
    for (auto& v : b) v /= total;
    log_scale = 2.0L * log_scale + std::log2(total);
    a.swap(b);
    steps = round + 1;
  }
  // After s squarings a = A^(2^s) / scale and the total mass of A^k grows
  // like rho^k, so log2(rho) ~ log_scale / 2^s.
  return static_cast<double>(log_scale / std::ldexp(1.0L, steps));
}

// E(i+1) = min(max(E + b - B, 0), E_max); returns the 1-based outage indices.
inline std::vector<std::size_t> outages(const Word& x, const mpq_class& b, const mpq_class& e_max,
                                        const mpq_class& e_init) {
  std::vector<std::size_t> out;
  mpq_class e = e_init;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mpq_class next = e + x[i] - b;
    if (next < 0) {
      out.push_back(i + 1);
      next = 0;
    }
    if (next > e_max) next = e_max;
    e = next;
  }
  return out;
}

inline double entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace oracle

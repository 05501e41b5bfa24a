#include "capcomp/capacity.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "capcomp/errors.hpp"
#include "capcomp/kernels.hpp"

namespace capcomp {

std::string to_string(CapacityMethod method) {
  switch (method) {
    case CapacityMethod::closed_form: return "closed-form";
    case CapacityMethod::spectral: return "spectral";
    case CapacityMethod::dp_growth: return "dp-growth";
    case CapacityMethod::lower_bound: return "lower-bound";
    case CapacityMethod::upper_bound: return "upper-bound";
  }
  return {};
}

namespace {

// Sign of X^d (X - 1) - 1, evaluated in the log domain so large d cannot overflow.
int rll_polynomial_sign(double x, int d) {
  if (x <= 1.0) return -1;
  const double log_term = d * std::log(x) + std::log(x - 1.0);
  if (log_term > 0.0) return 1;
  if (log_term < 0.0) return -1;
  return 0;
}

}  // namespace

CapacityResult rll_capacity(int d, const Settings& settings) {
  auto spec = ConstraintSpec::rll(d);
  double lo = 1.0;  // P_d(1) = -1
  double hi = 2.0;  // P_d(2) = 2^d - 1 > 0
  std::size_t iterations = 0;
  while (hi - lo > settings.root_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int sign = rll_polynomial_sign(mid, d);
    if (sign == 0) {
      lo = hi = mid;
      break;
    }
    (sign < 0 ? lo : hi) = mid;
    ++iterations;
  }
  const double root = 0.5 * (lo + hi);
  return CapacityResult{std::log2(root), CapacityMethod::closed_form, spec, hi - lo, iterations, true};
}

BigInt sec_subblock_count(int length, int weight) {
  if (length < 1 || weight < 1 || weight > length) throw DomainError("SEC requires 1 <= w <= L");
  // C(L, w) first, then walk upward with C(L, i+1) = C(L, i) (L - i) / (i + 1).
  BigInt term;
  mpz_bin_uiui(term.get_mpz_t(), static_cast<unsigned long>(length), static_cast<unsigned long>(weight));
  BigInt total = term;
  for (int i = weight; i < length; ++i) {
    term *= static_cast<unsigned long>(length - i);
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(i + 1));
    total += term;
  }
  return total;
}

CapacityResult sec_capacity(int length, int weight) {
  auto spec = ConstraintSpec::sec(length, weight);
  const BigInt count = sec_subblock_count(length, weight);
  const double value = count == 1 ? 0.0 : log2(count) / length;
  return CapacityResult{value, CapacityMethod::closed_form, spec, 0.0, 0, true};
}

CapacityResult sec_one_zero_capacity(int length) {
  if (length < 1) throw DomainError("subblock length must be positive");
  auto spec = length == 1 ? ConstraintSpec::sec(1, 1) : ConstraintSpec::sec(length, length - 1);
  const double value = std::log2(static_cast<double>(length) + 1.0) / length;
  return CapacityResult{value, CapacityMethod::closed_form, spec, 0.0, 0, true};
}

CapacityResult swc_capacity_exact(int window, int weight, const Settings& settings, Execution execution) {
  auto spec = ConstraintSpec::swc(window, weight);
  if (weight == window) return CapacityResult{0.0, CapacityMethod::closed_form, spec, 0.0, 0, true};

  const int suffix_bits = window - 1;
  if (suffix_bits >= 63 || (std::uint64_t{1} << suffix_bits) > settings.state_budget) {
    throw ResourceError(spec.to_string() + " needs 2^" + std::to_string(suffix_bits) +
                        " transfer-graph states, above the budget of " + std::to_string(settings.state_budget) +
                        "; use the capacity bounds instead");
  }
  const std::size_t states = std::size_t{1} << suffix_bits;
  std::vector<double> current(states, 1.0 / static_cast<double>(states));
  std::vector<double> next(states);

  // The all-ones state has a self-loop when w < T and reaches every live
  // state, so once the dead start states have drained the iterate lives on
  // one primitive component. There min/max of next/current bracket the
  // Perron value and shrink onto it.
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  while (iterations < settings.spectral_max_iterations) {
    const double sum = kernels::transfer_step(window, weight, current, next, execution);
    const auto bracket = kernels::ratio_bracket(current, next, execution);
    ++iterations;
    lower = bracket.lower;
    upper = bracket.upper;
    for (auto& v : next) v /= sum;
    std::swap(current, next);
    if (upper - lower < settings.spectral_tolerance) break;
  }
  const double width = upper - lower;
  const bool converged = width < settings.spectral_tolerance;
  const double perron = std::isfinite(upper) ? 0.5 * (lower + upper) : lower;
  return CapacityResult{std::log2(perron), CapacityMethod::spectral, spec, width, iterations, converged};
}

CapacityResult swc_capacity_growth(int window, int weight, std::size_t max_length, const Settings& settings) {
  auto spec = ConstraintSpec::swc(window, weight);
  if (weight == window) return CapacityResult{0.0, CapacityMethod::closed_form, spec, 0.0, 0, true};

  const int suffix_bits = window - 1;
  if (suffix_bits >= 63 || (std::uint64_t{1} << suffix_bits) > settings.state_budget) {
    throw ResourceError(spec.to_string() + " exceeds the DP state budget");
  }
  const std::uint64_t states = std::uint64_t{1} << suffix_bits;
  const std::uint64_t mask = states - 1;

  // counts[s] is the fraction of valid length-n words ending in suffix s, so
  // one step's total is M(n+1)/M(n).
  std::vector<double> counts(states, 1.0 / static_cast<double>(states));
  std::vector<double> next(states);
  double previous = -1.0;
  double estimate = 0.0;
  double gap = 1.0;
  // Early ratios can coincide by accident, so the gap must stay below
  // tolerance for a full window's worth of consecutive steps.
  const std::size_t settle = static_cast<std::size_t>(window) + 1;
  std::size_t calm = 0;
  std::size_t n = static_cast<std::size_t>(suffix_bits);
  std::size_t steps = 0;
  while (n < max_length) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t s = 0; s < states; ++s) {
      const double c = counts[s];
      if (c == 0.0) continue;
      const int ones = std::popcount(s);
      if (ones >= weight) next[(s << 1) & mask] += c;
      if (ones + 1 >= weight) next[((s << 1) | 1U) & mask] += c;
    }
    double total = 0.0;
    for (double v : next) total += v;
    estimate = std::log2(total);
    for (auto& v : next) v /= total;
    std::swap(counts, next);
    ++n;
    ++steps;
    if (previous >= 0.0) {
      gap = std::abs(estimate - previous);
      calm = gap < settings.growth_tolerance ? calm + 1 : 0;
      if (calm >= settle) break;
    }
    previous = estimate;
  }
  const bool converged = gap < settings.growth_tolerance;
  return CapacityResult{estimate, CapacityMethod::dp_growth, spec, gap, steps, converged};
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary entropy needs 0 <= x <= 1");
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

}  // namespace capcomp

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "capcomp/constraints.hpp"
#include "capcomp/settings.hpp"

namespace capcomp {

enum class CapacityMethod { closed_form, spectral, dp_growth, lower_bound, upper_bound };

std::string to_string(CapacityMethod method);

// Noiseless capacity in bits per channel use.
struct CapacityResult {
  double value = 0.0;
  CapacityMethod method = CapacityMethod::closed_form;
  ConstraintSpec spec;
  double residual = 0.0;   // bracket width / last successive-estimate gap
  std::size_t iterations = 0;
  bool converged = true;
};

// log2 of the largest real root of X^(d+1) - X^d - 1, by bisection on [1, 2].
// The residual is the final bracket width in X.
CapacityResult rll_capacity(int d, const Settings& settings = {});

// (1/L) log2 sum_{i=w}^{L} C(L, i), with the binomial sum formed exactly.
CapacityResult sec_capacity(int length, int weight);

// Sum_{i=w}^{L} C(L, i) as an exact integer.
BigInt sec_subblock_count(int length, int weight);

// (1/T) log2(T + 1), the SEC capacity with exactly one zero allowed per subblock.
CapacityResult sec_one_zero_capacity(int length);

// log2 of the spectral radius of the SWC transfer graph, by normalized power
// iteration stopped once the min/max ratio bracket is narrower than
// settings.spectral_tolerance. w == T short-circuits to 0. Throws
// ResourceError when 2^(T-1) exceeds settings.state_budget.
CapacityResult swc_capacity_exact(int window, int weight, const Settings& settings = {},
                                  Execution execution = Execution::parallel);

// log2(M(n+1)/M(n)) from floating-point DP counts, stepped until successive
// estimates stay within settings.growth_tolerance for T + 1 steps or n reaches
// max_length. Unconverged results carry converged = false and the last gap.
CapacityResult swc_capacity_growth(int window, int weight, std::size_t max_length,
                                   const Settings& settings = {});

// h(x) = -x log2 x - (1-x) log2(1-x), with 0 log2 0 = 0.
double binary_entropy(double x);

}  // namespace capcomp

#pragma once

#include <cstddef>
#include <cstdint>

namespace capcomp {

// Work limits and numeric tolerances shared across modules. The CLI fills
// this from flags, a key=value config file and CAPCOMP_* environment vars.
struct Settings {
  std::size_t exhaustive_limit = 24;        // longest word enumerate() will expand
  std::uint64_t state_budget = 1ULL << 20;  // SWC transfer-graph states (2^(T-1))
  double root_tolerance = 1e-12;            // bisection bracket width
  double spectral_tolerance = 1e-10;        // width of the Perron-value bracket
  double growth_tolerance = 1e-9;           // successive DP growth estimates
  std::size_t growth_max_length = 100000;
  std::size_t spectral_max_iterations = 2000000;
  int embedding_max_m = 8;
};

// Serial kernels are the reference; parallel ones use OpenMP and must agree.
enum class Execution { serial, parallel };

}  // namespace capcomp

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "capcomp/constraints.hpp"
#include "capcomp/energy_model.hpp"
#include "capcomp/settings.hpp"

// Hot loops with a serial reference and an OpenMP variant. Callers pick one
// through `Execution`; tests hold the two to the same results (exactly for
// the integer kernels, to rounding for floating-point reductions).
namespace capcomp::kernels {

// One application of the (T, w)-SWC transfer matrix. States are the 2^(T-1)
// length-(T-1) suffixes; s -> (s << 1 | b) is an edge iff popcount(s) + b >= w.
// Each next[t] sums current[] over the predecessors of t (a pull, so the
// parallel loop has no write conflicts). Returns the sum of `next`.
double transfer_step(int window, int weight, std::span<const double> current, std::span<double> next,
                     Execution execution);

// Collatz-Wielandt bracket for a nonnegative iterate: min and max of
// next[i] / current[i] over the support of `current`. `upper` is +inf while
// some state outside the support still receives mass.
struct RatioBracket {
  double lower;
  double upper;
};
RatioBracket ratio_bracket(std::span<const double> current, std::span<const double> next, Execution execution);

// Energy model scaled to a common denominator so the simulator runs on
// 64-bit integers while staying exact.
struct ScaledEnergy {
  std::int64_t unit;    // one energy unit (the energy of a received 1)
  std::int64_t demand;  // B
  std::int64_t e_max;
  std::int64_t e_init;

  // Throws DomainError if the common denominator does not fit comfortably.
  static ScaledEnergy from(const EnergyModel& model);
};

// True when the n-bit word encoded MSB-first in `mask` satisfies `spec`.
bool satisfies_mask(const ConstraintSpec& spec, std::uint64_t mask, std::size_t n);

// Smallest 1-based outage index when simulating `mask`, if any.
std::optional<std::size_t> first_outage(const ScaledEnergy& energy, std::uint64_t mask, std::size_t n);

struct OutageScan {
  std::uint64_t valid_words = 0;
  std::uint64_t outage_words = 0;
  std::optional<std::uint64_t> first_witness;  // lexicographically smallest word with an outage
};

// Simulates every valid word of length n (n <= 30) and counts outages.
OutageScan exhaustive_outage_scan(const ConstraintSpec& spec, const EnergyModel& model, std::size_t n,
                                  Execution execution);

}  // namespace capcomp::kernels

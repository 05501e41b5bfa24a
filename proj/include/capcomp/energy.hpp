#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "capcomp/bits.hpp"
#include "capcomp/constraints.hpp"
#include "capcomp/energy_model.hpp"
#include "capcomp/rational.hpp"

namespace capcomp {

// Energy levels E(1) ... E(n+1) and the 1-based channel-use indices at which
// an outage (E(i) + b_i < B) or an overflow (E(i) + b_i - B > E_max) occurred.
struct SimTrace {
  std::vector<Rational> levels;
  std::vector<std::size_t> outages;
  std::vector<std::size_t> overflows;

  bool has_outage() const noexcept { return !outages.empty(); }
};

// Exact recursion E(i+1) = min{ max{E(i) + b_i - B, 0}, E_max }. An outage is
// recorded and the clamped update continues.
SimTrace simulate(const EnergyModel& model, const BitSequence& seq);

// Outage-avoidance conditions, evaluated in exact arithmetic.
//   RLL: d >= ceil(B/(1-B)),  E_max >= E_init >= B
//   SWC: w >= ceil(TB),       E_max >= E_init >= (T-w)B
//   SEC: w >= ceil(LB),       E_init >= (L-w)B,  E_max >= 2(L-w)B
bool rll_feasible(int d, const EnergyModel& model);
bool swc_feasible(int window, int weight, const EnergyModel& model);
bool sec_feasible(int length, int weight, const EnergyModel& model);
bool feasible(const ConstraintSpec& spec, const EnergyModel& model);

// Smallest RLL d that keeps up with the per-bit demand: ceil(B/(1-B)).
long min_rll_d(const Rational& b);

// Candidate SWC pairs (T, max(ceil(TB), T-z)) for T = 1 .. ceil(z/(1-B)),
// z = floor(E_max/B). Requires a saturated model; empty when z = 0.
std::vector<std::pair<int, int>> feasible_swc_candidates(const EnergyModel& model);

// Candidate SEC pairs (L, max(ceil(LB), L-z2)) for L = 1 .. length_cap,
// z2 = floor(E_max/(2B)). Requires a saturated model.
std::vector<std::pair<int, int>> feasible_sec_candidates(const EnergyModel& model, int length_cap);

// All-ones preamble length that fills an empty buffer: ceil(E_max/(1-B)).
long preamble_length(const EnergyModel& model);

}  // namespace capcomp

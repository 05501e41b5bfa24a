#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "capcomp/constraints.hpp"
#include "capcomp/energy_model.hpp"
#include "capcomp/settings.hpp"

namespace capcomp {

enum class OutageMethod { exact, lower_bound };

std::string to_string(OutageMethod method);

// Largest noiseless capacity over the code parameters that provably avoid
// outage for a saturated battery.
struct OutageCapacityResult {
  double value = 0.0;
  OutageMethod method = OutageMethod::exact;
  std::optional<ConstraintSpec> achieving;  // empty when no parameter is feasible
  double ceiling = 0.0;                     // h(max{B, 1/2})
  bool argmax_at_cap = false;               // SEC search hit its length cap
};

// Memoized C_SWC(T, w) for outage searches. Pairs with w = T are 0, pairs
// with w = T-1 use the RLL(T-1) root (the two constraints coincide), pairs
// within the state budget use the spectral method, and larger pairs fall
// back to the best lower bound (marked inexact). Safe to share across threads.
class SwcCandidateEvaluator {
 public:
  struct Entry {
    double value;
    bool exact;
  };

  explicit SwcCandidateEvaluator(Settings settings = {}) : settings_(settings) {}

  Entry evaluate(int window, int weight);

  // Fills the cache for `pairs`. Small transfer graphs are spread across
  // threads; large ones run one at a time with a parallel inner kernel.
  void prefetch(std::span<const std::pair<int, int>> pairs, Execution execution);

  const Settings& settings() const noexcept { return settings_; }
  std::size_t cached() const;

 private:
  Entry compute(int window, int weight, Execution execution) const;

  Settings settings_;
  mutable std::mutex mutex_;
  std::map<std::pair<int, int>, Entry> cache_;
};

OutageCapacityResult o_rll(const EnergyModel& model, const Settings& settings = {});

OutageCapacityResult o_swc(const EnergyModel& model, SwcCandidateEvaluator& evaluator,
                           Execution execution = Execution::parallel);
OutageCapacityResult o_swc(const EnergyModel& model, const Settings& settings = {});

// C_SWC lower bound at T = ceil(z/(1-B)), w = ceil(TB), via the sandwich and
// embedded-SEC bounds. 0 when z = floor(E_max/B) = 0.
OutageCapacityResult o_swc_lower_explicit(const EnergyModel& model, const Settings& settings = {});

// max(64, 4 ceil(z2/(1-B))) with z2 = floor(E_max/(2B)).
int default_sec_length_cap(const EnergyModel& model);

OutageCapacityResult o_sec(const EnergyModel& model, std::optional<int> length_cap = std::nullopt);

// C_SEC(L, ceil(LB)) at L = ceil(floor(E_max/(2B))/(1-B)); 0 when E_max < 2B.
OutageCapacityResult o_sec_lower_explicit(const EnergyModel& model);

struct GapReport {
  OutageCapacityResult rll;
  OutageCapacityResult swc;
  OutageCapacityResult sec;
  double swc_gap = 0.0;  // o_swc - o_rll
  double sec_gap = 0.0;  // o_sec - o_rll
  double ceiling = 0.0;
};

GapReport gap_report(const EnergyModel& model, SwcCandidateEvaluator& evaluator,
                     std::optional<int> length_cap = std::nullopt, Execution execution = Execution::parallel);
GapReport gap_report(const EnergyModel& model, const Settings& settings = {},
                     std::optional<int> length_cap = std::nullopt);

}  // namespace capcomp

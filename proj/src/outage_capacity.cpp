#include "capcomp/outage_capacity.hpp"

#include <algorithm>
#include <vector>

#include "capcomp/bounds.hpp"
#include "capcomp/capacity.hpp"
#include "capcomp/energy.hpp"
#include "capcomp/errors.hpp"

namespace capcomp {

std::string to_string(OutageMethod method) {
  return method == OutageMethod::exact ? "exact" : "lower-bound";
}

namespace {

// Transfer graphs at or below this size are cheap enough to batch across threads.
constexpr std::uint64_t kSmallGraphStates = std::uint64_t{1} << 12;

std::uint64_t graph_states(int window) { return std::uint64_t{1} << (window - 1); }

bool spectral_fits(int window, const Settings& settings) {
  return window - 1 < 63 && graph_states(window) <= settings.state_budget;
}

void require_saturated(const EnergyModel& model) {
  if (!model.is_saturated()) {
    throw DomainError("outage capacity assumes E_init = E_max (" + model.to_string() + ")");
  }
}

}  // namespace

SwcCandidateEvaluator::Entry SwcCandidateEvaluator::compute(int window, int weight, Execution execution) const {
  if (weight == window) return {0.0, true};
  if (weight == window - 1) return {rll_capacity(window - 1, settings_).value, true};
  if (spectral_fits(window, settings_)) {
    return {swc_capacity_exact(window, weight, settings_, execution).value, true};
  }
  return {swc_best_lower_bound(window, weight, settings_.embedding_max_m), false};
}

SwcCandidateEvaluator::Entry SwcCandidateEvaluator::evaluate(int window, int weight) {
  const auto key = std::make_pair(window, weight);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Entry entry = compute(window, weight, Execution::parallel);
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, entry).first->second;
}

void SwcCandidateEvaluator::prefetch(std::span<const std::pair<int, int>> pairs, Execution execution) {
  std::vector<std::pair<int, int>> small;
  std::vector<std::pair<int, int>> large;
  {
    std::lock_guard lock(mutex_);
    for (const auto& p : pairs) {
      if (cache_.count(p)) continue;
      const bool is_small = !spectral_fits(p.first, settings_) || graph_states(p.first) <= kSmallGraphStates;
      (is_small ? small : large).push_back(p);
    }
  }
  std::sort(small.begin(), small.end());
  small.erase(std::unique(small.begin(), small.end()), small.end());
  std::sort(large.begin(), large.end());
  large.erase(std::unique(large.begin(), large.end()), large.end());

  std::vector<Entry> small_values(small.size());
  const auto count = static_cast<std::int64_t>(small.size());
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& p = small[static_cast<std::size_t>(i)];
      small_values[static_cast<std::size_t>(i)] = compute(p.first, p.second, Execution::serial);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      const auto& p = small[static_cast<std::size_t>(i)];
      small_values[static_cast<std::size_t>(i)] = compute(p.first, p.second, Execution::serial);
    }
  }
  std::vector<Entry> large_values;
  large_values.reserve(large.size());
  for (const auto& p : large) large_values.push_back(compute(p.first, p.second, execution));

  std::lock_guard lock(mutex_);
  for (std::size_t i = 0; i < small.size(); ++i) cache_.emplace(small[i], small_values[i]);
  for (std::size_t i = 0; i < large.size(); ++i) cache_.emplace(large[i], large_values[i]);
}

std::size_t SwcCandidateEvaluator::cached() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

OutageCapacityResult o_rll(const EnergyModel& model, const Settings& settings) {
  require_saturated(model);
  OutageCapacityResult result;
  result.ceiling = entropy_ceiling(model.b());
  if (model.e_max() < model.b()) return result;
  const long d = min_rll_d(model.b());
  result.value = rll_capacity(static_cast<int>(d), settings).value;
  result.achieving = ConstraintSpec::rll(static_cast<int>(d));
  return result;
}

OutageCapacityResult o_swc(const EnergyModel& model, SwcCandidateEvaluator& evaluator, Execution execution) {
  require_saturated(model);
  OutageCapacityResult result;
  result.ceiling = entropy_ceiling(model.b());
  const auto candidates = feasible_swc_candidates(model);
  evaluator.prefetch(candidates, execution);
  bool all_exact = true;
  // Candidates come in increasing T, so a strict comparison keeps the smallest T on ties.
  for (const auto& [window, weight] : candidates) {
    const auto entry = evaluator.evaluate(window, weight);
    all_exact = all_exact && entry.exact;
    if (!result.achieving || entry.value > result.value) {
      result.value = entry.value;
      result.achieving = ConstraintSpec::swc(window, weight);
    }
  }
  result.method = all_exact ? OutageMethod::exact : OutageMethod::lower_bound;
  return result;
}

OutageCapacityResult o_swc(const EnergyModel& model, const Settings& settings) {
  SwcCandidateEvaluator evaluator(settings);
  return o_swc(model, evaluator);
}

OutageCapacityResult o_swc_lower_explicit(const EnergyModel& model, const Settings& settings) {
  OutageCapacityResult result;
  result.method = OutageMethod::lower_bound;
  result.ceiling = entropy_ceiling(model.b());
  const long z = model.zeros_per_buffer();
  if (z == 0) return result;
  Rational span = Rational(z) / (1 - model.b());
  const long window = to_long(ceil(span));
  Rational demand = model.b() * window;
  const long weight = to_long(ceil(demand));
  result.value = swc_best_lower_bound(static_cast<int>(window), static_cast<int>(weight), settings.embedding_max_m);
  result.achieving = ConstraintSpec::swc(static_cast<int>(window), static_cast<int>(weight));
  return result;
}

int default_sec_length_cap(const EnergyModel& model) {
  Rational half_buffer = model.e_max() / (2 * model.b());
  const BigInt z2 = floor(half_buffer);
  Rational span = Rational(z2) / (1 - model.b());
  return static_cast<int>(std::max<long>(64, 4 * to_long(ceil(span))));
}

OutageCapacityResult o_sec(const EnergyModel& model, std::optional<int> length_cap) {
  require_saturated(model);
  const int cap = length_cap.value_or(default_sec_length_cap(model));
  OutageCapacityResult result;
  result.ceiling = entropy_ceiling(model.b());
  for (const auto& [length, weight] : feasible_sec_candidates(model, cap)) {
    const double value = weight == length ? 0.0 : sec_capacity(length, weight).value;
    if (!result.achieving || value > result.value) {
      result.value = value;
      result.achieving = ConstraintSpec::sec(length, weight);
    }
  }
  result.argmax_at_cap = result.achieving && result.value > 0.0 &&
                         result.achieving->as<SecParams>().length == cap;
  return result;
}

OutageCapacityResult o_sec_lower_explicit(const EnergyModel& model) {
  OutageCapacityResult result;
  result.method = OutageMethod::lower_bound;
  result.ceiling = entropy_ceiling(model.b());
  if (model.e_max() < 2 * model.b()) return result;
  Rational half_buffer = model.e_max() / (2 * model.b());
  Rational span = Rational(floor(half_buffer)) / (1 - model.b());
  const long length = to_long(ceil(span));
  Rational demand = model.b() * length;
  const long weight = to_long(ceil(demand));
  result.value = sec_capacity(static_cast<int>(length), static_cast<int>(weight)).value;
  result.achieving = ConstraintSpec::sec(static_cast<int>(length), static_cast<int>(weight));
  return result;
}

GapReport gap_report(const EnergyModel& model, SwcCandidateEvaluator& evaluator, std::optional<int> length_cap,
                     Execution execution) {
  GapReport report;
  report.rll = o_rll(model, evaluator.settings());
  report.swc = o_swc(model, evaluator, execution);
  report.sec = o_sec(model, length_cap);
  report.swc_gap = report.swc.value - report.rll.value;
  report.sec_gap = report.sec.value - report.rll.value;
  report.ceiling = entropy_ceiling(model.b());
  return report;
}

GapReport gap_report(const EnergyModel& model, const Settings& settings, std::optional<int> length_cap) {
  SwcCandidateEvaluator evaluator(settings);
  return gap_report(model, evaluator, length_cap);
}

}  // namespace capcomp

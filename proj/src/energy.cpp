#include "capcomp/energy.hpp"

#include <algorithm>

#include "capcomp/errors.hpp"

namespace capcomp {

EnergyModel::EnergyModel(Rational b, Rational e_max, Rational e_init)
    : b_(std::move(b)), e_max_(std::move(e_max)), e_init_(std::move(e_init)) {
  // mpq arithmetic assumes canonical operands; callers may hand us 6/10.
  b_.canonicalize();
  e_max_.canonicalize();
  e_init_.canonicalize();
  if (b_ <= 0 || b_ >= 1) throw DomainError("B must lie in (0,1), got " + capcomp::to_string(b_));
  if (e_max_ < 0) throw DomainError("E_max must be nonnegative");
  if (e_init_ < 0 || e_init_ > e_max_) throw DomainError("E_init must lie in [0, E_max]");
}

EnergyModel EnergyModel::saturated(Rational b, Rational e_max) {
  Rational e_init = e_max;
  return EnergyModel(std::move(b), std::move(e_max), std::move(e_init));
}

long EnergyModel::zeros_per_buffer() const { return to_long(floor(e_max_ / b_)); }

std::string EnergyModel::to_string() const {
  return "B=" + capcomp::to_string(b_) + " E_max=" + capcomp::to_string(e_max_) +
         " E_init=" + capcomp::to_string(e_init_);
}

SimTrace simulate(const EnergyModel& model, const BitSequence& seq) {
  SimTrace trace;
  trace.levels.reserve(seq.size() + 1);
  trace.levels.push_back(model.e_init());
  Rational level = model.e_init();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Rational next = level + seq[i] - model.b();
    if (next < 0) {
      trace.outages.push_back(i + 1);
      next = 0;
    } else if (next > model.e_max()) {
      trace.overflows.push_back(i + 1);
      next = model.e_max();
    }
    level = next;
    trace.levels.push_back(level);
  }
  return trace;
}

long min_rll_d(const Rational& b) {
  Rational ratio = b / (1 - b);
  return to_long(ceil(ratio));
}

bool rll_feasible(int d, const EnergyModel& model) {
  if (d < 1) throw DomainError("RLL requires d >= 1");
  return d >= min_rll_d(model.b()) && model.e_max() >= model.e_init() &&
         model.e_init() >= model.b();
}

bool swc_feasible(int window, int weight, const EnergyModel& model) {
  if (window < 1 || weight < 1 || weight > window) throw DomainError("SWC requires 1 <= w <= T");
  const Rational& b = model.b();
  Rational window_demand = b * window;
  return weight >= ceil(window_demand) && model.e_max() >= model.e_init() &&
         model.e_init() >= b * (window - weight);
}

bool sec_feasible(int length, int weight, const EnergyModel& model) {
  if (length < 1 || weight < 1 || weight > length) throw DomainError("SEC requires 1 <= w <= L");
  const Rational& b = model.b();
  Rational block_demand = b * length;
  Rational deficit = b * (length - weight);
  return weight >= ceil(block_demand) && model.e_init() >= deficit &&
         model.e_max() >= 2 * deficit;
}

bool feasible(const ConstraintSpec& spec, const EnergyModel& model) {
  switch (spec.family()) {
    case ConstraintFamily::rll:
      return rll_feasible(spec.as<RllParams>().d, model);
    case ConstraintFamily::swc: {
      const auto& p = spec.as<SwcParams>();
      return swc_feasible(p.window, p.weight, model);
    }
    case ConstraintFamily::sec: {
      const auto& p = spec.as<SecParams>();
      return sec_feasible(p.length, p.weight, model);
    }
  }
  return false;
}

namespace {

void require_saturated(const EnergyModel& model) {
  if (!model.is_saturated()) {
    throw DomainError("outage-capacity search assumes E_init = E_max (" + model.to_string() + ")");
  }
}

}  // namespace

std::vector<std::pair<int, int>> feasible_swc_candidates(const EnergyModel& model) {
  require_saturated(model);
  std::vector<std::pair<int, int>> out;
  const long z = model.zeros_per_buffer();
  if (z == 0) return out;
  const Rational& b = model.b();
  Rational bound = Rational(z) / (1 - b);
  const long max_window = to_long(ceil(bound));
  for (long t = 1; t <= max_window; ++t) {
    Rational demand = b * t;
    long w = std::max(to_long(ceil(demand)), t - z);
    if (swc_feasible(static_cast<int>(t), static_cast<int>(w), model)) {
      out.emplace_back(static_cast<int>(t), static_cast<int>(w));
    }
  }
  return out;
}

std::vector<std::pair<int, int>> feasible_sec_candidates(const EnergyModel& model, int length_cap) {
  require_saturated(model);
  if (length_cap < 1) throw DomainError("SEC length cap must be positive");
  std::vector<std::pair<int, int>> out;
  const Rational& b = model.b();
  Rational half_buffer = model.e_max() / (2 * b);
  const long z2 = to_long(floor(half_buffer));
  for (long l = 1; l <= length_cap; ++l) {
    Rational demand = b * l;
    long w = std::max(to_long(ceil(demand)), l - z2);
    if (sec_feasible(static_cast<int>(l), static_cast<int>(w), model)) {
      out.emplace_back(static_cast<int>(l), static_cast<int>(w));
    }
  }
  return out;
}

long preamble_length(const EnergyModel& model) {
  Rational fill = model.e_max() / (1 - model.b());
  return to_long(ceil(fill));
}

}  // namespace capcomp

#include "capcomp/constraints.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>

#include "capcomp/energy.hpp"
#include "capcomp/errors.hpp"

namespace capcomp {

ConstraintSpec ConstraintSpec::rll(int d) {
  if (d < 1) throw DomainError("RLL requires d >= 1");
  return ConstraintSpec(RllParams{d});
}

ConstraintSpec ConstraintSpec::swc(int window, int weight) {
  if (window < 1 || weight < 1) throw DomainError("SWC requires positive T and w");
  if (weight > window) throw DomainError("SWC requires w <= T");
  return ConstraintSpec(SwcParams{window, weight});
}

ConstraintSpec ConstraintSpec::sec(int length, int weight) {
  if (length < 1 || weight < 1) throw DomainError("SEC requires positive L and w");
  if (weight > length) throw DomainError("SEC requires w <= L");
  return ConstraintSpec(SecParams{length, weight});
}

std::string ConstraintSpec::to_string() const {
  switch (family()) {
    case ConstraintFamily::rll:
      return "RLL(d=" + std::to_string(as<RllParams>().d) + ")";
    case ConstraintFamily::swc: {
      const auto& p = as<SwcParams>();
      return "SWC(T=" + std::to_string(p.window) + ",w=" + std::to_string(p.weight) + ")";
    }
    case ConstraintFamily::sec: {
      const auto& p = as<SecParams>();
      return "SEC(L=" + std::to_string(p.length) + ",w=" + std::to_string(p.weight) + ")";
    }
  }
  return {};
}

std::string to_string(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::rll: return "rll";
    case ConstraintFamily::swc: return "swc";
    case ConstraintFamily::sec: return "sec";
  }
  return {};
}

namespace {

bool rll_ok(int d, const BitSequence& seq) {
  bool seen_zero = false;
  std::size_t run = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == 1) {
      ++run;
      continue;
    }
    if (seen_zero && run < static_cast<std::size_t>(d)) return false;
    seen_zero = true;
    run = 0;
  }
  return true;
}

bool swc_ok(const SwcParams& p, const BitSequence& seq) {
  const auto window = static_cast<std::size_t>(p.window);
  // A word shorter than T is one partial window: it must still fit inside
  // some valid window, so at most T - w zeros.
  if (seq.size() < window) return seq.size() - seq.weight() <= window - static_cast<std::size_t>(p.weight);
  std::size_t ones = seq.weight(0, window);
  if (ones < static_cast<std::size_t>(p.weight)) return false;
  for (std::size_t j = window; j < seq.size(); ++j) {
    ones += seq[j];
    ones -= seq[j - window];
    if (ones < static_cast<std::size_t>(p.weight)) return false;
  }
  return true;
}

void require_sec_length(const SecParams& p, std::size_t n) {
  if (n % static_cast<std::size_t>(p.length) != 0) {
    throw LengthMismatchError("SEC(L=" + std::to_string(p.length) + ") needs a length multiple of L, got " +
                              std::to_string(n));
  }
}

bool sec_ok(const SecParams& p, const BitSequence& seq) {
  require_sec_length(p, seq.size());
  const auto length = static_cast<std::size_t>(p.length);
  for (std::size_t start = 0; start < seq.size(); start += length) {
    if (seq.weight(start, length) < static_cast<std::size_t>(p.weight)) return false;
  }
  return true;
}

BigInt count_rll(int d, std::size_t n) {
  // Index 0: no zero seen yet. Index 1 + r: r ones since the last zero,
  // capped at d (r == d means the run requirement is already met).
  std::vector<BigInt> cur(static_cast<std::size_t>(d) + 2, 0);
  std::vector<BigInt> next(cur.size());
  cur[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    next[0] += cur[0];
    next[1] += cur[0];
    for (int r = 0; r <= d; ++r) {
      const BigInt& c = cur[static_cast<std::size_t>(r) + 1];
      if (c == 0) continue;
      next[static_cast<std::size_t>(std::min(r + 1, d)) + 1] += c;
      if (r == d) next[1] += c;
    }
    std::swap(cur, next);
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

BigInt count_swc(const SwcParams& p, std::size_t n, const Settings& settings) {
  const int suffix_bits = p.window - 1;
  if (suffix_bits >= 63 || (std::uint64_t{1} << suffix_bits) > settings.state_budget) {
    throw ResourceError("SWC(T=" + std::to_string(p.window) + ") needs 2^" + std::to_string(suffix_bits) +
                        " DP states, above the configured budget of " +
                        std::to_string(settings.state_budget) + "; use the capacity bounds instead");
  }
  if (n < static_cast<std::size_t>(p.window)) {
    BigInt total = 0;
    const auto max_zeros = std::min<std::size_t>(n, static_cast<std::size_t>(p.window - p.weight));
    for (std::size_t z = 0; z <= max_zeros; ++z) {
      BigInt c;
      mpz_bin_uiui(c.get_mpz_t(), n, z);
      total += c;
    }
    return total;
  }
  const std::uint64_t states = std::uint64_t{1} << suffix_bits;
  const std::uint64_t mask = states - 1;
  std::vector<BigInt> cur(states, 1);  // every (T-1)-bit prefix
  std::vector<BigInt> next(states);
  for (std::size_t step = static_cast<std::size_t>(suffix_bits); step < n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t s = 0; s < states; ++s) {
      if (cur[s] == 0) continue;
      const int ones = std::popcount(s);
      for (std::uint64_t bit = 0; bit <= 1; ++bit) {
        if (ones + static_cast<int>(bit) >= p.weight) next[((s << 1) | bit) & mask] += cur[s];
      }
    }
    std::swap(cur, next);
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

BigInt count_sec(const SecParams& p, std::size_t n) {
  require_sec_length(p, n);
  // Weight seen so far in the current subblock, capped at w.
  std::vector<BigInt> cur(static_cast<std::size_t>(p.weight) + 1, 0);
  std::vector<BigInt> next(cur.size());
  cur[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (int k = 0; k <= p.weight; ++k) {
      const BigInt& c = cur[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      next[static_cast<std::size_t>(k)] += c;
      next[static_cast<std::size_t>(std::min(k + 1, p.weight))] += c;
    }
    std::swap(cur, next);
    if ((step + 1) % static_cast<std::size_t>(p.length) == 0) {
      BigInt done = cur.back();
      std::fill(cur.begin(), cur.end(), 0);
      cur[0] = done;
    }
  }
  BigInt total = 0;
  for (const auto& c : cur) total += c;
  return total;
}

}  // namespace

bool satisfies(const ConstraintSpec& spec, const BitSequence& seq) {
  switch (spec.family()) {
    case ConstraintFamily::rll: return rll_ok(spec.as<RllParams>().d, seq);
    case ConstraintFamily::swc: return swc_ok(spec.as<SwcParams>(), seq);
    case ConstraintFamily::sec: return sec_ok(spec.as<SecParams>(), seq);
  }
  return false;
}

std::vector<BitSequence> enumerate(const ConstraintSpec& spec, std::size_t n, const Settings& settings) {
  if (n > settings.exhaustive_limit) {
    throw ResourceError("exhaustive enumeration limited to n <= " + std::to_string(settings.exhaustive_limit) +
                        ", requested " + std::to_string(n));
  }
  if (spec.family() == ConstraintFamily::sec) require_sec_length(spec.as<SecParams>(), n);
  std::vector<BitSequence> out;
  const std::uint64_t words = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < words; ++mask) {
    auto seq = BitSequence::from_mask(mask, n);
    if (satisfies(spec, seq)) out.push_back(std::move(seq));
  }
  return out;
}

BigInt count_exact(const ConstraintSpec& spec, std::size_t n, const Settings& settings) {
  switch (spec.family()) {
    case ConstraintFamily::rll: return count_rll(spec.as<RllParams>().d, n);
    case ConstraintFamily::swc: return count_swc(spec.as<SwcParams>(), n, settings);
    case ConstraintFamily::sec: return count_sec(spec.as<SecParams>(), n);
  }
  return 0;
}

bool sets_equal(const ConstraintSpec& a, const ConstraintSpec& b, std::size_t n, const Settings& settings) {
  // Both lists come out lexicographically sorted, so equality is elementwise.
  return enumerate(a, n, settings) == enumerate(b, n, settings);
}

namespace {

enum class Witness { weight, initial_level, buffer };

// Which outage-avoidance condition the witness targets, or nullopt if none fails.
std::optional<Witness> failing_condition(const ConstraintSpec& spec, const EnergyModel& model) {
  const Rational& b = model.b();
  switch (spec.family()) {
    case ConstraintFamily::rll: {
      const int d = spec.as<RllParams>().d;
      if (d < min_rll_d(b)) return Witness::weight;
      if (model.e_init() < b) return Witness::initial_level;
      return std::nullopt;
    }
    case ConstraintFamily::swc: {
      const auto& p = spec.as<SwcParams>();
      Rational demand = b * p.window;
      if (p.weight < ceil(demand)) return Witness::weight;
      if (model.e_init() < b * (p.window - p.weight)) return Witness::initial_level;
      return std::nullopt;
    }
    case ConstraintFamily::sec: {
      const auto& p = spec.as<SecParams>();
      Rational demand = b * p.length;
      Rational deficit = b * (p.length - p.weight);
      if (p.weight < ceil(demand)) return Witness::weight;
      if (model.e_init() < deficit) return Witness::initial_level;
      if (model.e_max() < 2 * deficit) return Witness::buffer;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

BitSequence witness_period(const ConstraintSpec& spec, Witness kind) {
  switch (spec.family()) {
    case ConstraintFamily::rll: {
      auto period = BitSequence::zeros(1);
      return period.append(BitSequence::ones(static_cast<std::size_t>(spec.as<RllParams>().d)));
    }
    case ConstraintFamily::swc:
    case ConstraintFamily::sec: {
      std::size_t span = 0;
      std::size_t weight = 0;
      if (spec.family() == ConstraintFamily::swc) {
        span = static_cast<std::size_t>(spec.as<SwcParams>().window);
        weight = static_cast<std::size_t>(spec.as<SwcParams>().weight);
      } else {
        span = static_cast<std::size_t>(spec.as<SecParams>().length);
        weight = static_cast<std::size_t>(spec.as<SecParams>().weight);
      }
      auto ones_first = BitSequence::ones(weight).append(BitSequence::zeros(span - weight));
      auto zeros_first = BitSequence::zeros(span - weight).append(BitSequence::ones(weight));
      switch (kind) {
        case Witness::weight: return ones_first;
        case Witness::initial_level: return zeros_first;
        case Witness::buffer: return ones_first.append(zeros_first);
      }
    }
  }
  return {};
}

}  // namespace

BitSequence adversarial_sequence(const ConstraintSpec& spec, const EnergyModel& model, std::size_t repetitions) {
  if (repetitions == 0) throw DomainError("repetitions must be positive");
  auto kind = failing_condition(spec, model);
  if (!kind) {
    throw NoWitnessError(spec.to_string() + " avoids outage under " + model.to_string());
  }
  return witness_period(spec, *kind).repeated(repetitions);
}

std::size_t witness_repetitions(const ConstraintSpec& spec, const EnergyModel& model) {
  auto kind = failing_condition(spec, model);
  if (!kind) {
    throw NoWitnessError(spec.to_string() + " avoids outage under " + model.to_string());
  }
  if (*kind != Witness::weight) return 1;
  // Each period loses `deficit` > 0 units net, and without an outage the
  // level never rises above E_init minus the accumulated loss.
  auto period = witness_period(spec, *kind);
  Rational deficit = model.b() * static_cast<unsigned long>(period.size()) -
                     static_cast<unsigned long>(period.weight());
  Rational periods = model.e_init() / deficit;
  return static_cast<std::size_t>(to_long(floor(periods))) + 1;
}

}  // namespace capcomp

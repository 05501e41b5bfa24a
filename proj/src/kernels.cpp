#include "capcomp/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "capcomp/errors.hpp"

namespace capcomp::kernels {
namespace {

constexpr std::uint64_t kNoWitness = std::numeric_limits<std::uint64_t>::max();

inline double pull_state(std::uint64_t t, int window, int weight, std::span<const double> current) {
  const int bit = static_cast<int>(t & 1U);
  const std::uint64_t base = t >> 1;
  const std::uint64_t high = std::uint64_t{1} << (window - 2);
  double acc = 0.0;
  if (std::popcount(base) + bit >= weight) acc += current[base];
  if (std::popcount(base | high) + bit >= weight) acc += current[base | high];
  return acc;
}

}  // namespace

double transfer_step(int window, int weight, std::span<const double> current, std::span<double> next,
                     Execution execution) {
  if (window < 1 || window > 63) throw DomainError("transfer_step: window out of range");
  const std::uint64_t states = std::uint64_t{1} << (window - 1);
  if (current.size() != states || next.size() != states) {
    throw DomainError("transfer_step: vector size must be 2^(T-1)");
  }
  if (window == 1) {
    // Single empty-suffix state; both bits return to it.
    const double edges = (weight <= 0 ? 1.0 : 0.0) + (weight <= 1 ? 1.0 : 0.0);
    next[0] = edges * current[0];
    return next[0];
  }

  double sum = 0.0;
  const auto n = static_cast<std::int64_t>(states);
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (std::int64_t t = 0; t < n; ++t) {
      const double v = pull_state(static_cast<std::uint64_t>(t), window, weight, current);
      next[static_cast<std::size_t>(t)] = v;
      sum += v;
    }
  } else {
    for (std::int64_t t = 0; t < n; ++t) {
      const double v = pull_state(static_cast<std::uint64_t>(t), window, weight, current);
      next[static_cast<std::size_t>(t)] = v;
      sum += v;
    }
  }
  return sum;
}

RatioBracket ratio_bracket(std::span<const double> current, std::span<const double> next, Execution execution) {
  if (current.size() != next.size()) throw DomainError("ratio_bracket: size mismatch");
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = inf;
  double hi = 0.0;
  const auto n = static_cast<std::int64_t>(current.size());
  auto visit = [&](std::int64_t i, double& l, double& h) {
    const auto k = static_cast<std::size_t>(i);
    if (current[k] > 0.0) {
      const double r = next[k] / current[k];
      l = std::min(l, r);
      h = std::max(h, r);
    } else if (next[k] > 0.0) {
      h = inf;
    }
  };
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi)
    for (std::int64_t i = 0; i < n; ++i) visit(i, lo, hi);
  } else {
    for (std::int64_t i = 0; i < n; ++i) visit(i, lo, hi);
  }
  return {lo, hi};
}

ScaledEnergy ScaledEnergy::from(const EnergyModel& model) {
  BigInt den = 1;
  for (const Rational* r : {&model.b(), &model.e_max(), &model.e_init()}) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r->get_den_mpz_t());
  }
  auto scaled = [&](const Rational& r) -> std::int64_t {
    Rational v = r * den;
    BigInt whole = v.get_num();
    // 2^40 leaves headroom for 30-step sums in 64 bits.
    if (abs(whole) > (BigInt(1) << 40)) throw DomainError("energy model too fine-grained for the integer simulator");
    return whole.get_si();
  };
  if (den > (BigInt(1) << 40)) throw DomainError("energy model too fine-grained for the integer simulator");
  return ScaledEnergy{den.get_si(), scaled(model.b()), scaled(model.e_max()), scaled(model.e_init())};
}

bool satisfies_mask(const ConstraintSpec& spec, std::uint64_t mask, std::size_t n) {
  auto bit_at = [&](std::size_t i) { return static_cast<int>((mask >> (n - 1 - i)) & 1U); };
  switch (spec.family()) {
    case ConstraintFamily::rll: {
      const int d = spec.as<RllParams>().d;
      bool seen_zero = false;
      int run = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (bit_at(i)) {
          ++run;
          continue;
        }
        if (seen_zero && run < d) return false;
        seen_zero = true;
        run = 0;
      }
      return true;
    }
    case ConstraintFamily::swc: {
      const auto& p = spec.as<SwcParams>();
      const auto window = static_cast<std::size_t>(p.window);
      if (n < window) return static_cast<int>(n) - std::popcount(mask) <= p.window - p.weight;
      const std::uint64_t window_mask = window >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << window) - 1;
      for (std::size_t j = 0; j + window <= n; ++j) {
        if (std::popcount((mask >> (n - window - j)) & window_mask) < p.weight) return false;
      }
      return true;
    }
    case ConstraintFamily::sec: {
      const auto& p = spec.as<SecParams>();
      const auto length = static_cast<std::size_t>(p.length);
      if (n % length != 0) throw LengthMismatchError("SEC word length must be a multiple of L");
      const std::uint64_t block_mask = length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
      for (std::size_t start = 0; start < n; start += length) {
        if (std::popcount((mask >> (n - length - start)) & block_mask) < p.weight) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<std::size_t> first_outage(const ScaledEnergy& energy, std::uint64_t mask, std::size_t n) {
  std::int64_t level = energy.e_init;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t incoming = ((mask >> (n - 1 - i)) & 1U) ? energy.unit : 0;
    const std::int64_t next = level + incoming - energy.demand;
    if (next < 0) return i + 1;
    level = next > energy.e_max ? energy.e_max : next;
  }
  return std::nullopt;
}

OutageScan exhaustive_outage_scan(const ConstraintSpec& spec, const EnergyModel& model, std::size_t n,
                                  Execution execution) {
  if (n > 30) throw ResourceError("exhaustive outage scan limited to n <= 30");
  if (spec.family() == ConstraintFamily::sec && n % static_cast<std::size_t>(spec.as<SecParams>().length) != 0) {
    throw LengthMismatchError("SEC word length must be a multiple of L");
  }
  const ScaledEnergy energy = ScaledEnergy::from(model);
  const auto words = static_cast<std::int64_t>(std::uint64_t{1} << n);

  std::uint64_t valid = 0;
  std::uint64_t outages = 0;
  std::uint64_t witness = kNoWitness;
  auto visit = [&](std::int64_t w, std::uint64_t& v, std::uint64_t& o, std::uint64_t& first) {
    const auto mask = static_cast<std::uint64_t>(w);
    if (!satisfies_mask(spec, mask, n)) return;
    ++v;
    if (first_outage(energy, mask, n)) {
      ++o;
      if (mask < first) first = mask;
    }
  };

  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : valid, outages) reduction(min : witness)
    for (std::int64_t w = 0; w < words; ++w) visit(w, valid, outages, witness);
  } else {
    for (std::int64_t w = 0; w < words; ++w) visit(w, valid, outages, witness);
  }

  OutageScan scan{valid, outages, std::nullopt};
  if (witness != kNoWitness) scan.first_witness = witness;
  return scan;
}

}  // namespace capcomp::kernels

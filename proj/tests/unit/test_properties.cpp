#include <doctest.h>

#include <algorithm>
#include <random>

#include "capcomp/bounds.hpp"
#include "capcomp/capacity.hpp"
#include "capcomp/cli.hpp"
#include "capcomp/constraints.hpp"
#include "capcomp/energy.hpp"
#include "capcomp/kernels.hpp"

using namespace capcomp;

namespace {

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  Rational rational(long max_num, long max_den) {
    const long q = uniform(1, static_cast<int>(max_den));
    return frac(uniform(0, static_cast<int>(max_num)), q);
  }
  Rational demand() { return frac(uniform(1, 19), 20); }

  ConstraintSpec spec() {
    switch (uniform(0, 2)) {
      case 0: return ConstraintSpec::rll(uniform(1, 5));
      case 1: {
        const int t = uniform(1, 8);
        return ConstraintSpec::swc(t, uniform(1, t));
      }
      default: {
        const int l = uniform(1, 6);
        return ConstraintSpec::sec(l, uniform(1, l));
      }
    }
  }

  // Builds a valid word bit by bit: a random choice is overridden by a 1
  // whenever a 0 would break the constraint. A 1 never does.
  BitSequence valid_word(const ConstraintSpec& spec, std::size_t n, double p_one) {
    std::vector<std::uint8_t> bits;
    for (std::size_t i = 0; i < n; ++i) {
      bits.push_back(coin(p_one) ? 1 : 0);
      if (bits.back() == 0 && !prefix_ok(spec, bits)) bits.back() = 1;
    }
    return BitSequence(bits);
  }

  // Zeros in the trailing partial window or block must leave room for w ones.
  static bool prefix_ok(const ConstraintSpec& spec, const std::vector<std::uint8_t>& bits) {
    auto zeros_since = [&](std::size_t start) {
      return static_cast<int>(std::count(bits.begin() + static_cast<std::ptrdiff_t>(start), bits.end(), 0));
    };
    switch (spec.family()) {
      case ConstraintFamily::rll: return satisfies(spec, BitSequence(bits));
      case ConstraintFamily::swc: {
        const auto& p = spec.as<SwcParams>();
        const std::size_t span = std::min<std::size_t>(bits.size(), static_cast<std::size_t>(p.window));
        return zeros_since(bits.size() - span) <= p.window - p.weight;
      }
      case ConstraintFamily::sec: {
        const auto& p = spec.as<SecParams>();
        const std::size_t last = bits.size() - 1;
        return zeros_since(last - last % static_cast<std::size_t>(p.length)) <= p.length - p.weight;
      }
    }
    return false;
  }
};

}  // namespace

TEST_CASE("DP count equals enumeration size") {
  Gen g(1);
  for (int trial = 0; trial < 150; ++trial) {
    const auto spec = g.spec();
    std::size_t n = static_cast<std::size_t>(g.uniform(0, 14));
    if (spec.family() == ConstraintFamily::sec) n -= n % spec.as<SecParams>().length;
    CAPTURE(spec.to_string());
    CAPTURE(n);
    CHECK(count_exact(spec, n) == enumerate(spec, n).size());
  }
}

TEST_CASE("generated words are valid and the generator hits the boundary") {
  Gen g(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto spec = g.spec();
    std::size_t n = static_cast<std::size_t>(g.uniform(0, 120));
    if (spec.family() == ConstraintFamily::sec) n -= n % spec.as<SecParams>().length;
    CHECK(satisfies(spec, g.valid_word(spec, n, 0.3)));
  }
}

TEST_CASE("nesting: heavier windows are stricter") {
  Gen g(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int t = g.uniform(1, 7), w = g.uniform(1, t), m = g.uniform(1, 3);
    const auto inner = ConstraintSpec::swc(t + m, w + m);
    const auto word = g.valid_word(inner, static_cast<std::size_t>(g.uniform(0, 60)), 0.4);
    CHECK(satisfies(ConstraintSpec::swc(t, w), word));
    if (w > 1) CHECK(satisfies(ConstraintSpec::swc(t, w - 1), word));
    // Aligned blocks of an SWC word are windows, so it also satisfies the SEC.
    const auto blocks = static_cast<std::size_t>(t * g.uniform(0, 8));
    CHECK(satisfies(ConstraintSpec::sec(t, w), g.valid_word(ConstraintSpec::swc(t, w), blocks, 0.4)));
  }
}

TEST_CASE("feasible codes never run out of energy on long words") {
  Gen g(4);
  int exercised = 0;
  for (int trial = 0; trial < 2000 && exercised < 300; ++trial) {
    const auto spec = g.spec();
    const auto model = EnergyModel::saturated(g.demand(), g.rational(40, 8));
    if (!feasible(spec, model)) continue;
    ++exercised;
    std::size_t n = static_cast<std::size_t>(g.uniform(1, 400));
    if (spec.family() == ConstraintFamily::sec) n -= n % spec.as<SecParams>().length;
    const auto trace = simulate(model, g.valid_word(spec, n, g.coin() ? 0.05 : 0.5));
    CAPTURE(spec.to_string());
    CAPTURE(model.to_string());
    CHECK_FALSE(trace.has_outage());
  }
  CHECK(exercised == 300);
}

TEST_CASE("infeasible codes have a witness") {
  Gen g(5);
  int exercised = 0;
  for (int trial = 0; trial < 2000 && exercised < 300; ++trial) {
    const auto spec = g.spec();
    const auto b = g.demand();
    const auto e_max = g.rational(40, 8);
    const EnergyModel model(b, e_max, e_max * frac(g.uniform(0, 4), 4));
    if (feasible(spec, model)) continue;
    ++exercised;
    const auto word = adversarial_sequence(spec, model, witness_repetitions(spec, model));
    CAPTURE(spec.to_string());
    CAPTURE(model.to_string());
    CHECK(satisfies(spec, word));
    CHECK(simulate(model, word).has_outage());
  }
  CHECK(exercised == 300);
}

TEST_CASE("simulation is monotone in the starting level") {
  Gen g(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = g.demand();
    const auto e_max = g.rational(20, 4);
    const Rational low = e_max * frac(g.uniform(0, 4), 8);
    const Rational high = low + (e_max - low) * frac(g.uniform(0, 4), 4);
    const auto word = BitSequence::from_mask(g.rng(), static_cast<std::size_t>(g.uniform(1, 64)));
    const auto a = simulate(EnergyModel(b, e_max, low), word);
    const auto c = simulate(EnergyModel(b, e_max, high), word);
    for (std::size_t i = 0; i < a.levels.size(); ++i) CHECK(a.levels[i] <= c.levels[i]);
    CHECK(std::includes(a.outages.begin(), a.outages.end(), c.outages.begin(), c.outages.end()));
    for (const auto& level : c.levels) CHECK((level >= 0 && level <= e_max));
  }
}

TEST_CASE("trace JSON round trip") {
  Gen g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e_max = g.rational(10, 6);
    const EnergyModel model(g.demand(), e_max, e_max * frac(g.uniform(0, 3), 3));
    const auto trace = simulate(model, BitSequence::from_mask(g.rng(), static_cast<std::size_t>(g.uniform(0, 40))));
    const auto back = cli::trace_from_json(nlohmann::json::parse(cli::trace_to_json(trace).dump()));
    CHECK(back.levels == trace.levels);
    CHECK(back.outages == trace.outages);
    CHECK(back.overflows == trace.overflows);
  }
}

TEST_CASE("serial and parallel outage scans agree") {
  Gen g(8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto spec = g.spec();
    const auto model = EnergyModel::saturated(g.demand(), g.rational(12, 4));
    std::size_t n = static_cast<std::size_t>(g.uniform(1, 14));
    if (spec.family() == ConstraintFamily::sec) n -= n % spec.as<SecParams>().length;
    const auto a = kernels::exhaustive_outage_scan(spec, model, n, Execution::serial);
    const auto b = kernels::exhaustive_outage_scan(spec, model, n, Execution::parallel);
    CHECK(a.valid_words == b.valid_words);
    CHECK(a.outage_words == b.outage_words);
    CHECK(a.first_witness == b.first_witness);
  }
}

TEST_CASE("SWC capacity ordering and bounds") {
  Gen g(9);
  for (int trial = 0; trial < 60; ++trial) {
    const int t = g.uniform(2, 13), w = g.uniform(1, t - 1);
    const double c = swc_capacity_exact(t, w).value;
    CAPTURE(t);
    CAPTURE(w);
    CHECK(c > swc_capacity_exact(t, w + 1).value);
    CHECK(c < swc_capacity_exact(t + 1, w).value + 1e-12);
    const auto band = swc_sec_sandwich(t, w);
    CHECK(band.lower <= c + 1e-9);
    CHECK(c <= band.upper + 1e-9);
    CHECK(swc_lower_embedded_sec(t, w) <= c + 1e-8);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

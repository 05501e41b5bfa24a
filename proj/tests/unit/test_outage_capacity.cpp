#include <doctest.h>

#include "capcomp/bounds.hpp"
#include "capcomp/capacity.hpp"
#include "capcomp/energy.hpp"
#include "capcomp/errors.hpp"
#include "capcomp/outage_capacity.hpp"
#include "oracles/oracles.hpp"

using namespace capcomp;

namespace {

EnergyModel sat(long bp, long bq, long ep, long eq = 1) {
  return EnergyModel::saturated(Rational(bp, bq), Rational(ep, eq));
}

constexpr double kRll2 = 0.5514630897455955;

}  // namespace

TEST_CASE("RLL outage capacity") {
  CHECK(o_rll(sat(3, 5, 1, 2)).value == 0.0);
  CHECK_FALSE(o_rll(sat(3, 5, 1, 2)).achieving.has_value());
  for (auto e : {Rational(3, 5), Rational(1), Rational(12)}) {
    const auto r = o_rll(EnergyModel::saturated(Rational(3, 5), e));
    CHECK(r.value == doctest::Approx(kRll2).epsilon(1e-11));
    CHECK(r.achieving == ConstraintSpec::rll(2));
    CHECK(r.method == OutageMethod::exact);
  }
  CHECK(o_rll(sat(3, 4, 10)).achieving == ConstraintSpec::rll(3));
  CHECK_THROWS_AS(o_rll(EnergyModel(Rational(1, 2), Rational(2), Rational(1))), DomainError);
}

TEST_CASE("SWC outage capacity") {
  CHECK(o_swc(sat(3, 5, 1, 2)).value == 0.0);
  // Between B and 2B only the RLL-equivalent window fits.
  for (auto e : {Rational(3, 5), Rational(1), Rational(11, 10)}) {
    const auto r = o_swc(EnergyModel::saturated(Rational(3, 5), e));
    CHECK(r.value == doctest::Approx(kRll2).epsilon(1e-11));
    CHECK(r.method == OutageMethod::exact);
  }
  const auto r = o_swc(sat(3, 5, 3));
  CHECK(r.method == OutageMethod::exact);
  CHECK(r.value >= kRll2);
  REQUIRE(r.achieving.has_value());
  const auto& p = r.achieving->as<SwcParams>();
  CHECK(swc_feasible(p.window, p.weight, sat(3, 5, 3)));
  CHECK(std::abs(r.value - swc_capacity_growth(p.window, p.weight, 100000).value) < 1e-6);
}

TEST_CASE("SWC outage capacity falls back to bounds beyond the state budget") {
  Settings s;
  s.state_budget = 1 << 8;
  SwcCandidateEvaluator small(s);
  const auto r = o_swc(sat(3, 5, 3), small);
  CHECK(r.method == OutageMethod::lower_bound);
  CHECK(r.value <= o_swc(sat(3, 5, 3)).value + 1e-12);
  CHECK(r.value >= kRll2);
  const auto e = small.evaluate(12, 8);
  CHECK_FALSE(e.exact);
  CHECK(e.value == doctest::Approx(swc_best_lower_bound(12, 8)));
  CHECK(small.evaluate(12, 11).exact);
}

TEST_CASE("evaluator shortcuts agree with the spectral route") {
  SwcCandidateEvaluator ev;
  for (int t = 2; t <= 9; ++t) {
    CHECK(ev.evaluate(t, t).value == 0.0);
    CHECK(ev.evaluate(t, t - 1).value == doctest::Approx(swc_capacity_exact(t, t - 1).value).epsilon(1e-9));
  }
  const std::vector<std::pair<int, int>> pairs{{6, 3}, {7, 4}, {8, 5}};
  SwcCandidateEvaluator serial, parallel;
  serial.prefetch(pairs, Execution::serial);
  parallel.prefetch(pairs, Execution::parallel);
  for (auto [t, w] : pairs) CHECK(serial.evaluate(t, w).value == doctest::Approx(parallel.evaluate(t, w).value).epsilon(1e-12));
  CHECK(serial.cached() == 3);
}

TEST_CASE("SEC outage capacity") {
  CHECK(o_sec(sat(3, 5, 1)).value == 0.0);
  const auto at2b = o_sec(sat(3, 5, 6, 5));
  CHECK(at2b.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(at2b.achieving == ConstraintSpec::sec(3, 2));
  CHECK_FALSE(at2b.argmax_at_cap);
  const auto e10 = o_sec(sat(3, 5, 10));
  CHECK(e10.value >= 0.9004952570222677 - 1e-12);
  CHECK(e10.value <= entropy_ceiling(Rational(3, 5)));
  CHECK(o_sec(sat(3, 5, 10), 3).argmax_at_cap);
  CHECK(default_sec_length_cap(sat(3, 5, 10)) == 80);
  CHECK(default_sec_length_cap(sat(3, 5, 1)) == 64);
}

TEST_CASE("explicit lower bounds") {
  const auto swc = o_swc_lower_explicit(sat(3, 5, 10));
  CHECK(swc.achieving == ConstraintSpec::swc(40, 24));
  CHECK(swc.method == OutageMethod::lower_bound);
  CHECK(swc.value == doctest::Approx(swc_best_lower_bound(40, 24)));
  CHECK(swc.value <= entropy_ceiling(Rational(3, 5)));
  CHECK(o_swc_lower_explicit(sat(3, 5, 1, 2)).value == 0.0);

  const auto sec = o_sec_lower_explicit(sat(3, 5, 10));
  CHECK(sec.achieving == ConstraintSpec::sec(20, 12));
  CHECK(sec.value == doctest::Approx(0.9004952570222677).epsilon(1e-12));
  CHECK(o_sec_lower_explicit(sat(3, 5, 1)).value == 0.0);
  const auto far = o_sec_lower_explicit(sat(3, 5, 200));
  CHECK(far.achieving == ConstraintSpec::sec(415, 249));
  CHECK(far.value == doctest::Approx(0.963428462832207).epsilon(1e-12));
}

TEST_CASE("gap report on a grid") {
  // A small budget keeps this fast; the invariants hold for bounds too.
  Settings s;
  s.state_budget = 1 << 12;
  SwcCandidateEvaluator ev(s);
  for (long bq : {4L, 5L}) {
    Rational b(bq - 2, bq);
    b.canonicalize();
    double prev_swc_gap = 0.0, prev_sec_gap = 0.0;
    for (long e = 0; e <= 24; ++e) {
      Rational e_max(e, 4);
      e_max.canonicalize();
      const auto model = EnergyModel::saturated(b, e_max);
      const auto g = gap_report(model, ev);
      CAPTURE(model.to_string());
      CHECK(g.swc_gap >= 0.0);
      CHECK(g.swc_gap >= prev_swc_gap - 1e-12);
      // SEC needs 2B of buffer, so its gap is only tracked from there on.
      if (model.e_max() >= 2 * model.b()) {
        CHECK(g.sec_gap > 1e-9);
        CHECK(g.sec_gap >= prev_sec_gap - 1e-12);
        prev_sec_gap = g.sec_gap;
      }
      for (const auto* r : {&g.rll, &g.swc, &g.sec}) {
        CHECK(r->value <= g.ceiling + 1e-9);
        if (r->achieving) CHECK(feasible(*r->achieving, model));
      }
      if (model.e_max() >= b && model.e_max() < 2 * b) CHECK(g.swc.value == doctest::Approx(g.rll.value).epsilon(1e-11));
      prev_swc_gap = g.swc_gap;
    }
  }
}

TEST_CASE("method names") {
  CHECK(to_string(OutageMethod::exact) == "exact");
  CHECK(to_string(OutageMethod::lower_bound) == "lower-bound");
}

#include "capcomp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "capcomp/bounds.hpp"
#include "capcomp/capacity.hpp"
#include "capcomp/constraints.hpp"
#include "capcomp/energy.hpp"
#include "capcomp/errors.hpp"
#include "capcomp/kernels.hpp"

namespace capcomp {

VerifySuite parse_verify_suite(const std::string& name) {
  if (name == "counts") return VerifySuite::counts;
  if (name == "equivalence") return VerifySuite::equivalence;
  if (name == "bounds") return VerifySuite::bounds;
  if (name == "outage") return VerifySuite::outage;
  if (name == "all") return VerifySuite::all;
  throw ParseError("unknown verify suite '" + name + "'");
}

std::string to_string(VerifySuite suite) {
  switch (suite) {
    case VerifySuite::counts: return "counts";
    case VerifySuite::equivalence: return "equivalence";
    case VerifySuite::bounds: return "bounds";
    case VerifySuite::outage: return "outage";
    case VerifySuite::all: return "all";
  }
  return {};
}

namespace {

class Checker {
 public:
  explicit Checker(std::string suite) { report_.suite = std::move(suite); }

  void expect(bool ok, const std::string& property, const std::string& witness) {
    ++report_.checks;
    if (!ok) report_.failures.push_back({report_.suite, property, witness});
  }

  VerifyReport take() { return std::move(report_); }

 private:
  VerifyReport report_;
};

std::vector<ConstraintSpec> small_specs(int max_d, int max_span) {
  std::vector<ConstraintSpec> specs;
  for (int d = 1; d <= max_d; ++d) specs.push_back(ConstraintSpec::rll(d));
  for (int t = 1; t <= max_span; ++t) {
    for (int w = 1; w <= t; ++w) specs.push_back(ConstraintSpec::swc(t, w));
  }
  for (int l = 1; l <= max_span; ++l) {
    for (int w = 1; w <= l; ++w) specs.push_back(ConstraintSpec::sec(l, w));
  }
  return specs;
}

bool length_ok(const ConstraintSpec& spec, std::size_t n) {
  return spec.family() != ConstraintFamily::sec || n % static_cast<std::size_t>(spec.as<SecParams>().length) == 0;
}

std::string at(const ConstraintSpec& spec, std::size_t n) { return spec.to_string() + " n=" + std::to_string(n); }

VerifyReport verify_counts(const VerifyOptions& opt) {
  Checker check("counts");
  for (const auto& spec : small_specs(opt.max_d, 6)) {
    for (std::size_t n = 0; n <= opt.max_length; ++n) {
      if (!length_ok(spec, n)) continue;
      const BigInt dp = count_exact(spec, n, opt.settings);
      const auto listed = enumerate(spec, n, opt.settings).size();
      check.expect(dp == listed, "count_exact equals |enumerate|",
                   at(spec, n) + " dp=" + dp.get_str() + " enum=" + std::to_string(listed));
    }
  }
  for (int l = 1; l <= 6; ++l) {
    for (int w = 1; w <= l; ++w) {
      const BigInt per_block = sec_subblock_count(l, w);
      for (unsigned k = 1; k <= 3; ++k) {
        BigInt expected;
        mpz_pow_ui(expected.get_mpz_t(), per_block.get_mpz_t(), k);
        const auto spec = ConstraintSpec::sec(l, w);
        const BigInt dp = count_exact(spec, static_cast<std::size_t>(l) * k, opt.settings);
        check.expect(dp == expected, "SEC count is the subblock count to the k-th power",
                     at(spec, static_cast<std::size_t>(l) * k));
      }
    }
  }
  // M(a+b) <= M(a) 2^b for the concatenation-closed families.
  for (const auto& spec : small_specs(opt.max_d, 6)) {
    if (spec.family() == ConstraintFamily::sec) continue;
    for (std::size_t a = 0; a <= 10; ++a) {
      for (std::size_t b = 0; a + b <= opt.max_length; ++b) {
        BigInt bound = count_exact(spec, a, opt.settings) << static_cast<mp_bitcnt_t>(b);
        check.expect(count_exact(spec, a + b, opt.settings) <= bound, "M(a+b) <= M(a) 2^b",
                     spec.to_string() + " a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
    }
  }
  return check.take();
}

VerifyReport verify_equivalence(const VerifyOptions& opt) {
  Checker check("equivalence");
  for (int d = 1; d <= opt.max_d; ++d) {
    const auto rll = ConstraintSpec::rll(d);
    const auto swc = ConstraintSpec::swc(d + 1, d);
    for (std::size_t n = 0; n <= opt.max_length; ++n) {
      check.expect(sets_equal(rll, swc, n, opt.settings), "RLL(d) and SWC(d+1,d) admit the same words",
                   "d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
  }
  const std::size_t nested_max = std::min<std::size_t>(opt.max_length, 14);
  for (int t = 1; t <= 5; ++t) {
    for (int w = 1; w <= t; ++w) {
      for (int m = 1; m <= 3; ++m) {
        const auto tighter = ConstraintSpec::swc(t + m, w + m);
        const auto looser = ConstraintSpec::swc(t, w);
        // Below T + m the tighter constraint has no window and admits everything.
        for (std::size_t n = static_cast<std::size_t>(t + m); n <= nested_max; ++n) {
          bool ok = true;
          std::string bad;
          for (const auto& seq : enumerate(tighter, n, opt.settings)) {
            if (!satisfies(looser, seq)) {
              ok = false;
              bad = seq.to_string();
              break;
            }
          }
          check.expect(ok, "SWC(T+m,w+m) words are SWC(T,w) words", at(tighter, n) + " " + bad);
        }
      }
    }
  }
  for (int t = 1; t <= 6; ++t) {
    for (int w = 1; w <= t; ++w) {
      const auto swc = ConstraintSpec::swc(t, w);
      const auto sec = ConstraintSpec::sec(t, w);
      for (std::size_t n = 0; n <= opt.max_length; n += static_cast<std::size_t>(t)) {
        bool ok = true;
        for (const auto& seq : enumerate(swc, n, opt.settings)) ok = ok && satisfies(sec, seq);
        check.expect(ok, "SWC(T,w) words are SEC(T,w) words", at(swc, n));
      }
      check.expect(sets_equal(swc, sec, static_cast<std::size_t>(t), opt.settings),
                   "one window equals one subblock", at(swc, static_cast<std::size_t>(t)));
    }
  }
  return check.take();
}

VerifyReport verify_bounds(const VerifyOptions& opt) {
  Checker check("bounds");
  std::map<std::pair<int, int>, double> exact;
  auto swc = [&](int t, int w) {
    auto key = std::make_pair(t, w);
    if (auto it = exact.find(key); it != exact.end()) return it->second;
    const double v = swc_capacity_exact(t, w, opt.settings, opt.execution).value;
    exact.emplace(key, v);
    return v;
  };
  auto pair_name = [](int t, int w) { return "(T=" + std::to_string(t) + ",w=" + std::to_string(w) + ")"; };
  // Scaling checks reach windows of T*m; keep those within 2^15 states.
  constexpr int kWideWindow = 16;

  for (int t = 1; t <= opt.max_window; ++t) {
    for (int w = 1; w <= t; ++w) {
      const double c = swc(t, w);
      const auto growth = swc_capacity_growth(t, w, opt.settings.growth_max_length, opt.settings);
      check.expect(std::abs(growth.value - c) <= 1e-6, "spectral and growth estimates agree within 1e-6",
                   pair_name(t, w));
      const auto sandwich = swc_sec_sandwich(t, w);
      check.expect(sandwich.lower <= c + 1e-9 && c <= sandwich.upper + 1e-9, "stacking/SEC sandwich holds",
                   pair_name(t, w));
      check.expect(swc_lower_embedded_sec(t, w, opt.settings.embedding_max_m) <= c + 1e-8,
                   "embedded-SEC lower bound holds", pair_name(t, w));
      check.expect(c >= 0.0 && c <= 1.0, "capacity lies in [0,1]", pair_name(t, w));
      for (int m = 1; m <= 3; ++m) {
        if (t + m <= kWideWindow) {
          check.expect(swc(t + m, w + m) <= c + 1e-8, "C(T+m,w+m) <= C(T,w)", pair_name(t, w));
          check.expect(c <= swc(t + m, w) + 1e-8, "C(T,w) <= C(T+m,w)", pair_name(t, w));
        }
        if (t * m <= kWideWindow) {
          check.expect(c <= swc(t * m, w * m) + 1e-8, "C(T,w) <= C(Tm,wm)", pair_name(t, w));
        }
        if (w + m <= t) check.expect(swc(t, w + m) <= c + 1e-8, "C(T,w+m) <= C(T,w)", pair_name(t, w));
      }
    }
  }
  for (int t = 2; t <= opt.max_window; ++t) {
    check.expect(std::abs(swc(t, t - 1) - rll_capacity(t - 1, opt.settings).value) <= 1e-8,
                 "SWC(d+1,d) capacity equals RLL(d) capacity", pair_name(t, t - 1));
    check.expect(swc(t, t - 1) < sec_capacity(t, t - 1).value - 1e-6, "C_SWC(T,T-1) < C_SEC(T,T-1) strictly",
                 pair_name(t, t - 1));
  }
  for (int t = 2; t <= 20; ++t) {
    check.expect(std::abs(sec_one_zero_capacity(t).value - sec_capacity(t, t - 1).value) <= 1e-12,
                 "one-zero closed form matches binomial sum", "T=" + std::to_string(t));
    check.expect(sec_one_zero_capacity(t).value < sec_one_zero_capacity(t - 1).value,
                 "C_SEC(T,T-1) strictly decreasing in T", "T=" + std::to_string(t));
  }
  for (int d = 1; d <= 10; ++d) {
    check.expect(rll_capacity(d + 1, opt.settings).value < rll_capacity(d, opt.settings).value,
                 "C_RLL strictly decreasing in d", "d=" + std::to_string(d));
  }
  return check.take();
}

std::vector<Rational> rationals(std::initializer_list<const char*> literals) {
  std::vector<Rational> out;
  for (const char* s : literals) out.push_back(parse_rational(s));
  return out;
}

VerifyReport verify_outage(const VerifyOptions& opt) {
  Checker check("outage");
  const auto bs = rationals({"1/4", "1/2", "3/5", "3/4"});
  const auto buffers = rationals({"1/4", "1/2", "1", "3/2", "2", "3"});
  for (const auto& b : bs) {
    for (const auto& e_max : buffers) {
      const auto model = EnergyModel::saturated(b, e_max);
      for (const auto& spec : small_specs(opt.max_d, opt.max_outage_span)) {
        const std::string where = spec.to_string() + " " + model.to_string();
        if (feasible(spec, model)) {
          std::size_t longest = opt.max_length;
          if (spec.family() == ConstraintFamily::sec) {
            longest = std::max(longest, 3 * static_cast<std::size_t>(spec.as<SecParams>().length));
          }
          for (std::size_t n = 1; n <= longest; ++n) {
            if (!length_ok(spec, n)) continue;
            const auto scan = kernels::exhaustive_outage_scan(spec, model, n, opt.execution);
            std::string witness = where + " n=" + std::to_string(n);
            if (scan.first_witness) witness += " word=" + BitSequence::from_mask(*scan.first_witness, n).to_string();
            check.expect(scan.outage_words == 0, "feasible parameters never see an outage", witness);
          }
        } else {
          const auto seq = adversarial_sequence(spec, model, witness_repetitions(spec, model));
          const bool valid = satisfies(spec, seq);
          const auto trace = simulate(model, seq);
          check.expect(valid && trace.has_outage(), "infeasible parameters admit an outage witness",
                       where + " word=" + seq.to_string());
        }
      }
    }
  }
  return check.take();
}

}  // namespace

std::vector<VerifyReport> run_verify(VerifySuite suite, const VerifyOptions& options) {
  std::vector<VerifyReport> out;
  if (suite == VerifySuite::counts || suite == VerifySuite::all) out.push_back(verify_counts(options));
  if (suite == VerifySuite::equivalence || suite == VerifySuite::all) out.push_back(verify_equivalence(options));
  if (suite == VerifySuite::bounds || suite == VerifySuite::all) out.push_back(verify_bounds(options));
  if (suite == VerifySuite::outage || suite == VerifySuite::all) out.push_back(verify_outage(options));
  return out;
}

}  // namespace capcomp

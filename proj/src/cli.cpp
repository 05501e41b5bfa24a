#include "capcomp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "capcomp/bounds.hpp"
#include "capcomp/capacity.hpp"
#include "capcomp/errors.hpp"
#include "capcomp/outage_capacity.hpp"
#include "capcomp/sweep.hpp"
#include "capcomp/verify.hpp"

namespace capcomp::cli {

using nlohmann::json;

nlohmann::json trace_to_json(const SimTrace& trace) {
  json levels = json::array();
  for (const auto& l : trace.levels) levels.push_back(to_string(l));
  return json{{"levels", levels}, {"outages", trace.outages}, {"overflows", trace.overflows}};
}

SimTrace trace_from_json(const nlohmann::json& doc) {
  SimTrace trace;
  for (const auto& l : doc.at("levels")) trace.levels.push_back(parse_rational(l.get<std::string>()));
  trace.outages = doc.at("outages").get<std::vector<std::size_t>>();
  trace.overflows = doc.at("overflows").get<std::vector<std::size_t>>();
  return trace;
}

namespace {

// Flags shared by several subcommands. Strings are parsed as exact
// rationals after CLI11 is done so malformed literals surface as ParseError.
struct CodeFlags {
  std::string code;
  std::optional<int> d, t, l, w;
};

struct Options {
  Settings settings;
  CodeFlags code;
  std::string method = "exact";
  std::string format = "plain";
  std::size_t growth_nmax = 0;

  std::string b, e_max, e_init;
  std::string family = "all";
  std::optional<int> length_cap;

  std::string vary, fixed, from, to, step, out_path;
  bool serial = false;

  std::string bits;
  bool adversarial = false;
  std::optional<std::size_t> reps;

  std::string suite = "all";
  VerifyOptions verify;
};

int require(const std::optional<int>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing ") + flag);
  return *v;
}

ConstraintSpec spec_from(const CodeFlags& f) {
  if (f.code == "rll") return ConstraintSpec::rll(require(f.d, "--d"));
  if (f.code == "swc") return ConstraintSpec::swc(require(f.t, "--t"), require(f.w, "--w"));
  if (f.code == "sec") return ConstraintSpec::sec(require(f.l, "--l"), require(f.w, "--w"));
  throw DomainError("--code must be rll, swc or sec");
}

json spec_json(const ConstraintSpec& spec) {
  switch (spec.family()) {
    case ConstraintFamily::rll: return {{"code", "rll"}, {"d", spec.as<RllParams>().d}};
    case ConstraintFamily::swc:
      return {{"code", "swc"}, {"t", spec.as<SwcParams>().window}, {"w", spec.as<SwcParams>().weight}};
    case ConstraintFamily::sec:
      return {{"code", "sec"}, {"l", spec.as<SecParams>().length}, {"w", spec.as<SecParams>().weight}};
  }
  return {};
}

// Emits one flat record in the requested format.
void emit(std::ostream& out, const std::string& format, const std::vector<std::pair<std::string, json>>& fields) {
  auto scalar = [](const json& v) -> std::string {
    if (v.is_number_float()) return format_capacity(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  if (format == "json") {
    json doc = json::object();
    for (const auto& [k, v] : fields) doc[k] = v;
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
    out << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << scalar(fields[i].second);
    out << '\n';
  } else {
    for (const auto& [k, v] : fields) out << k << ": " << scalar(v) << '\n';
  }
}

int cmd_capacity(const Options& o, std::ostream& out) {
  const auto spec = spec_from(o.code);
  std::vector<std::pair<std::string, json>> fields;
  fields.emplace_back("code", o.code.code);
  fields.emplace_back("spec", spec.to_string());

  if (o.method == "bounds") {
    if (spec.family() != ConstraintFamily::swc) {
      throw DomainError("--method bounds applies to swc; rll and sec capacities are closed-form");
    }
    const auto& p = spec.as<SwcParams>();
    const auto sandwich = swc_sec_sandwich(p.window, p.weight);
    const double embedded = swc_lower_embedded_sec(p.window, p.weight, o.settings.embedding_max_m);
    fields.emplace_back("lower", std::max(sandwich.lower, embedded));
    fields.emplace_back("upper", sandwich.upper);
    fields.emplace_back("sandwich_lower", sandwich.lower);
    fields.emplace_back("embedded_sec_lower", embedded);
    fields.emplace_back("method", "bounds");
    emit(out, o.format, fields);
    return kExitOk;
  }

  std::optional<CapacityResult> result;
  if (o.method == "growth") {
    if (spec.family() != ConstraintFamily::swc) throw DomainError("--method growth applies to swc only");
    const auto& p = spec.as<SwcParams>();
    const std::size_t nmax = o.growth_nmax ? o.growth_nmax : o.settings.growth_max_length;
    result = swc_capacity_growth(p.window, p.weight, nmax, o.settings);
  } else if (o.method == "exact") {
    switch (spec.family()) {
      case ConstraintFamily::rll: result = rll_capacity(spec.as<RllParams>().d, o.settings); break;
      case ConstraintFamily::sec:
        result = sec_capacity(spec.as<SecParams>().length, spec.as<SecParams>().weight);
        break;
      case ConstraintFamily::swc:
        result = swc_capacity_exact(spec.as<SwcParams>().window, spec.as<SwcParams>().weight, o.settings);
        break;
    }
  } else {
    throw DomainError("--method must be exact, bounds or growth");
  }
  fields.emplace_back("value", result->value);
  fields.emplace_back("method", to_string(result->method));
  fields.emplace_back("residual", result->residual);
  fields.emplace_back("converged", result->converged);
  emit(out, o.format, fields);
  return kExitOk;
}

json outage_json(const OutageCapacityResult& r) {
  json doc{{"value", r.value}, {"method", to_string(r.method)}, {"ceiling", r.ceiling}};
  doc["achieving"] = r.achieving ? spec_json(*r.achieving) : json(nullptr);
  if (r.argmax_at_cap) doc["argmax_at_cap"] = true;
  return doc;
}

void outage_plain(std::ostream& out, const std::string& family, const OutageCapacityResult& r) {
  out << family << ": " << format_capacity(r.value) << " (" << to_string(r.method) << ")";
  if (r.achieving) out << " at " << r.achieving->to_string();
  if (r.argmax_at_cap) out << " [argmax at length cap]";
  out << '\n';
}

int cmd_outage(const Options& o, std::ostream& out, std::ostream& err) {
  const auto model = EnergyModel::saturated(parse_rational(o.b), parse_rational(o.e_max));
  if (o.family != "rll" && o.family != "swc" && o.family != "sec" && o.family != "all") {
    throw DomainError("--family must be rll, swc, sec or all");
  }
  std::vector<std::pair<std::string, OutageCapacityResult>> results;
  std::optional<GapReport> gaps;
  if (o.family == "all") {
    gaps = gap_report(model, o.settings, o.length_cap);
    results = {{"rll", gaps->rll}, {"swc", gaps->swc}, {"sec", gaps->sec}};
  } else if (o.family == "rll") {
    results = {{"rll", o_rll(model, o.settings)}};
  } else if (o.family == "swc") {
    results = {{"swc", o_swc(model, o.settings)}};
  } else {
    results = {{"sec", o_sec(model, o.length_cap)}};
  }
  for (const auto& [family, r] : results) {
    if (r.argmax_at_cap) err << "warning: " << family << " maximum sits at the length cap; raise --lcap\n";
  }

  const double ceiling = entropy_ceiling(model.b());
  if (o.format == "json") {
    json doc{{"params", {{"b", to_string(model.b())}, {"emax", to_string(model.e_max())}}}, {"ceiling", ceiling}};
    for (const auto& [family, r] : results) doc[family] = outage_json(r);
    if (gaps) {
      doc["gaps"] = {{"swc_minus_rll", gaps->swc_gap}, {"sec_minus_rll", gaps->sec_gap}};
      doc["swc_lower_explicit"] = outage_json(o_swc_lower_explicit(model, o.settings));
      doc["sec_lower_explicit"] = outage_json(o_sec_lower_explicit(model));
    }
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "family,value,method,achieving,ceiling\n";
    for (const auto& [family, r] : results) {
      out << family << ',' << format_capacity(r.value) << ',' << to_string(r.method) << ','
          << (r.achieving ? r.achieving->to_string() : "") << ',' << format_capacity(ceiling) << '\n';
    }
  } else {
    for (const auto& [family, r] : results) outage_plain(out, family, r);
    if (gaps) {
      out << "gap swc-rll: " << format_capacity(gaps->swc_gap) << '\n';
      out << "gap sec-rll: " << format_capacity(gaps->sec_gap) << '\n';
    }
    out << "ceiling: " << format_capacity(ceiling) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepGrid grid;
  if (o.vary == "emax") {
    grid.axis = SweepAxis::e_max;
  } else if (o.vary == "b") {
    grid.axis = SweepAxis::b;
  } else {
    throw DomainError("--vary must be emax or b");
  }
  grid.fixed = parse_rational(o.fixed);
  grid.from = parse_rational(o.from);
  grid.to = parse_rational(o.to);
  grid.step = parse_rational(o.step);
  grid.points();  // validates step and range before any work

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty() && o.out_path != "-") {
    file.open(o.out_path, std::ios::out | std::ios::trunc);
    if (!file) throw Error("cannot write '" + o.out_path + "'");
    sink = &file;
  }
  const auto rows = run_sweep(grid, o.settings, o.serial ? Execution::serial : Execution::parallel);
  write_sweep_csv(*sink, rows);
  if (file.is_open()) {
    file.close();
    if (!file) throw Error("failed writing '" + o.out_path + "'");
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Rational b = parse_rational(o.b);
  const Rational e_max = parse_rational(o.e_max);
  const Rational e_init = o.e_init.empty() ? e_max : parse_rational(o.e_init);
  const EnergyModel model(b, e_max, e_init);

  json params{{"b", to_string(b)}, {"emax", to_string(e_max)}, {"einit", to_string(e_init)}};
  BitSequence seq;
  if (o.adversarial) {
    const auto spec = spec_from(o.code);
    const std::size_t reps = o.reps.value_or(witness_repetitions(spec, model));
    seq = adversarial_sequence(spec, model, reps);
    params["code"] = spec_json(spec);
    params["reps"] = reps;
  } else {
    seq = BitSequence::parse(o.bits);
  }
  params["bits"] = seq.to_string();
  json doc = trace_to_json(simulate(model, seq));
  doc["params"] = params;
  out << doc.dump() << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions options = o.verify;
  options.settings = o.settings;
  options.execution = o.serial ? Execution::serial : Execution::parallel;
  const auto reports = run_verify(parse_verify_suite(o.suite), options);
  bool ok = true;
  for (const auto& r : reports) {
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"property", f.property}, {"witness", f.witness}});
    out << json{{"suite", r.suite}, {"checks", r.checks}, {"passed", r.ok()}, {"failures", failures}}.dump() << '\n';
    ok = ok && r.ok();
  }
  return ok ? kExitOk : kExitPropertyFailed;
}

void add_code_flags(CLI::App* sub, CodeFlags& f) {
  sub->add_option("--code", f.code, "Constraint family")->check(CLI::IsMember({"rll", "swc", "sec"}));
  sub->add_option("--d", f.d, "RLL minimum run of ones between zeros");
  sub->add_option("--t", f.t, "SWC window length T");
  sub->add_option("--l", f.l, "SEC subblock length L");
  sub->add_option("--w", f.w, "Minimum number of ones per window/subblock");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Capacity and outage analysis for RLL, SWC and SEC binary codes", "capcomp"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with default budgets and tolerances");

  app.add_option("--state-budget", o.settings.state_budget, "Max SWC transfer-graph states (2^(T-1))")
      ->envname("CAPCOMP_STATE_BUDGET");
  app.add_option("--exhaustive-limit", o.settings.exhaustive_limit, "Longest word for exhaustive enumeration")
      ->envname("CAPCOMP_EXHAUSTIVE_LIMIT");
  app.add_option("--root-tol", o.settings.root_tolerance, "Bisection tolerance")->envname("CAPCOMP_ROOT_TOL");
  app.add_option("--spectral-tol", o.settings.spectral_tolerance, "Power-iteration tolerance")
      ->envname("CAPCOMP_SPECTRAL_TOL");
  app.add_option("--growth-tol", o.settings.growth_tolerance, "DP growth tolerance")->envname("CAPCOMP_GROWTH_TOL");
  app.add_option("--embedding-m", o.settings.embedding_max_m, "Largest m tried by the embedded-SEC lower bound")
      ->envname("CAPCOMP_EMBEDDING_M");

  auto* capacity = app.add_subcommand("capacity", "Noiseless capacity of one constraint");
  add_code_flags(capacity, o.code);
  capacity->get_option("--code")->required();
  capacity->add_option("--method", o.method, "exact | bounds | growth")
      ->check(CLI::IsMember({"exact", "bounds", "growth"}));
  capacity->add_option("--format", o.format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  capacity->add_option("--nmax", o.growth_nmax, "Longest length for --method growth");

  auto* outage = app.add_subcommand("outage", "Outage-constrained capacity for a saturated battery");
  outage->add_option("--b", o.b, "Energy per bit B, as p/q or decimal")->required();
  outage->add_option("--emax", o.e_max, "Buffer size E_max, as p/q or decimal")->required();
  outage->add_option("--family", o.family, "rll | swc | sec | all")->check(CLI::IsMember({"rll", "swc", "sec", "all"}));
  outage->add_option("--lcap", o.length_cap, "Largest SEC subblock length searched")->envname("CAPCOMP_LCAP");
  outage->add_option("--format", o.format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));

  auto* sweep = app.add_subcommand("sweep", "Outage capacities over a rational grid, as CSV");
  sweep->add_option("--vary", o.vary, "emax | b")->required()->check(CLI::IsMember({"emax", "b"}));
  sweep->add_option("--fixed", o.fixed, "Value of the parameter held fixed")->required();
  sweep->add_option("--from", o.from, "First grid point")->required();
  sweep->add_option("--to", o.to, "Last grid point (inclusive)")->required();
  sweep->add_option("--step", o.step, "Grid step")->required();
  sweep->add_option("--out", o.out_path, "CSV output path ('-' for stdout)");
  sweep->add_flag("--serial", o.serial, "Use the serial reference path");

  auto* sim = app.add_subcommand("simulate", "Exact energy-buffer trace as JSON");
  sim->add_option("--b", o.b, "Energy per bit B")->required();
  sim->add_option("--emax", o.e_max, "Buffer size E_max")->required();
  sim->add_option("--einit", o.e_init, "Initial level E(1) (defaults to E_max)");
  auto* bits = sim->add_option("--bits", o.bits, "Bit string to simulate");
  auto* adv = sim->add_flag("--adversarial", o.adversarial, "Simulate the outage witness for --code");
  bits->excludes(adv);
  add_code_flags(sim, o.code);
  sim->add_option("--reps", o.reps, "Witness repetitions (default: enough to force an outage)");

  auto* verify = app.add_subcommand("verify", "Run property suites; exit 0 iff all hold");
  verify->add_option("--suite", o.suite, "counts | equivalence | bounds | outage | all")
      ->check(CLI::IsMember({"counts", "equivalence", "bounds", "outage", "all"}));
  verify->add_option("--max-n", o.verify.max_length, "Longest exhaustive word");
  verify->add_option("--max-window", o.verify.max_window, "Largest SWC window in the bounds grid");
  verify->add_flag("--serial", o.serial, "Use serial reference kernels");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*capacity) return cmd_capacity(o, out);
    if (*outage) return cmd_outage(o, out, err);
    if (*sweep) return cmd_sweep(o, out);
    if (*sim) return cmd_simulate(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace capcomp::cli

#include "capcomp/sweep.hpp"

#include <cstdio>
#include <ostream>

#include "capcomp/energy.hpp"
#include "capcomp/errors.hpp"

namespace capcomp {

std::vector<Rational> SweepGrid::points() const {
  if (step <= 0) throw DomainError("sweep step must be positive");
  if (from > to) throw DomainError("sweep range is empty (from > to)");
  std::vector<Rational> out;
  for (Rational p = from; p <= to; p += step) out.push_back(p);
  return out;
}

EnergyModel SweepGrid::model_at(const Rational& param) const {
  return axis == SweepAxis::e_max ? EnergyModel::saturated(fixed, param) : EnergyModel::saturated(param, fixed);
}

std::vector<SweepRow> run_sweep(const SweepGrid& grid, const Settings& settings, Execution execution) {
  const auto points = grid.points();
  std::vector<EnergyModel> models;
  models.reserve(points.size());
  for (const auto& p : points) models.push_back(grid.model_at(p));

  SwcCandidateEvaluator evaluator(settings);
  std::vector<SweepRow> rows(points.size());
  const auto count = static_cast<std::int64_t>(points.size());

  if (execution == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) {
      const auto k = static_cast<std::size_t>(i);
      rows[k] = SweepRow{points[k], gap_report(models[k], evaluator, std::nullopt, Execution::serial)};
    }
    return rows;
  }

  std::vector<std::pair<int, int>> all_candidates;
  for (const auto& m : models) {
    auto c = feasible_swc_candidates(m);
    all_candidates.insert(all_candidates.end(), c.begin(), c.end());
  }
  evaluator.prefetch(all_candidates, Execution::parallel);

  std::vector<std::string> errors(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      rows[k] = SweepRow{points[k], gap_report(models[k], evaluator, std::nullopt, Execution::serial)};
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(e);
  }
  return rows;
}

std::string format_capacity(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << format_capacity(to_double(row.param)) << ',' << format_capacity(r.rll.value) << ','
        << format_capacity(r.swc.value) << ',' << to_string(r.swc.method) << ',' << format_capacity(r.sec.value)
        << ',' << to_string(r.sec.method) << ',' << format_capacity(r.ceiling) << '\n';
  }
}

}  // namespace capcomp

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "capcomp/outage_capacity.hpp"
#include "capcomp/rational.hpp"
#include "capcomp/settings.hpp"

namespace capcomp {

enum class SweepAxis { e_max, b };

// Exact rational grid from, from + step, ... up to and including `to`. The
// non-swept parameter is held at `fixed` (B when sweeping E_max, E_max when
// sweeping B).
struct SweepGrid {
  SweepAxis axis = SweepAxis::e_max;
  Rational fixed;
  Rational from;
  Rational to;
  Rational step;

  std::vector<Rational> points() const;
  EnergyModel model_at(const Rational& param) const;
};

struct SweepRow {
  Rational param;
  GapReport report;
};

// Rows come back in grid order regardless of execution. The parallel path
// evaluates every SWC candidate of the whole grid up front, then the rows.
std::vector<SweepRow> run_sweep(const SweepGrid& grid, const Settings& settings, Execution execution);

inline constexpr const char* kSweepCsvHeader = "param,o_rll,o_swc,o_swc_method,o_sec,o_sec_method,ceiling";

// Fixed 6-decimal formatting; output is byte-stable for identical inputs.
std::string format_capacity(double value);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace capcomp

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "capcomp/energy.hpp"

namespace capcomp::cli {

// Exit codes: 0 success, 1 a verification property failed, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `capcomp` executable; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Trace JSON: {"levels": ["p/q", ...], "outages": [...], "overflows": [...]}.
nlohmann::json trace_to_json(const SimTrace& trace);
SimTrace trace_from_json(const nlohmann::json& doc);

}  // namespace capcomp::cli

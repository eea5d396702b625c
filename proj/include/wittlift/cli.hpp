#pragma once

#include <string>

#include <json.hpp>

#include "wittlift/closures.hpp"
#include "wittlift/lifting.hpp"

namespace wl::cli {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "wittlift-report/1";

struct Budget {
    i64 max_enumeration = 50'000'000;
    int max_degree = 12;  // bound on |a_i| for flag weights
};

// Budget defaults, overridden by WITTLIFT_BUDGET ("N" or "enum=N,degree=M").
Budget budget_from_env();

struct JobSpec {
    std::string command;  // witt, cohomology, ext, lift-flag, ...
    json input = json::object();
    Budget budget;
    std::string output;   // empty: stdout
};

struct JobResult {
    int exit_code = 0;
    json report;
    std::string text;     // plain rendering, used by `witt` without --json
};

// Never throws; errors come back as {"error": {...}} with exit code 1 or 2.
JobResult run(const JobSpec& job);

// Names: trivial, C<n>, Z/<n>, D<n> (order 2n), Q8, S<n>, products joined by 'x'.
FiniteGroup parse_group(const std::string& s);
// A name string, or {"table": [[...]]}, or {"permutations": [[...], ...]}.
FiniteGroup group_from_json(const json& j);
json group_to_json(const FiniteGroup& G);

Mat mat_from_json(const json& j);
json mat_to_json(const Mat& M);
// {"group", "p", "k", "generators": [matrix per group generator]}
Rep rep_from_json(const json& j);
FlagRep flag_from_json(const json& j);
json flag_to_json(const FlagRep& F);
json obstruction_to_json(const ObstructionReport& r);
json closure_to_json(const ClosureGroup& S);

// Shallow schema check on a report document; empty if fine.
std::string validate_report(const json& report);

}  // namespace wl::cli

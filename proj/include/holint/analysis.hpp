#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "holint/vector_field.hpp"

namespace holint {

inline constexpr const char* kVersion = "0.1.0";

enum class Task { star, resonances, first_integral, meromorphic_invariant, distribution, resolution, holonomy };

// Name <-> enum for CLI parsing; throws ConfigError on unknown names.
Task task_from_name(const std::string& name);
std::string task_name(Task t);
std::set<Task> all_tasks();

struct AnalysisRequest {
    VectorFieldGerm field;
    std::set<Task> tasks = all_tasks();
    int degree_bound = 0;                 // resonance search bound; 0 = field order
    std::vector<GaussianRational> z0;     // resolution candidates; empty = default grid
    int max_period = 24;
    double tol = 1e-6;
    int max_blowups = 64;
    std::uint64_t seed = 0;               // recorded in provenance; pipeline is deterministic

    explicit AnalysisRequest(VectorFieldGerm f) : field(std::move(f)) {}
};

struct AnalysisReport {
    std::string structured; // canonical JSON, byte-stable for a given request + seed
    std::string text;
    bool budget_hit = false;
};

// Executes the requested tasks in dependency order; per-task failures are
// recorded in the report rather than thrown. Only configuration errors
// (empty task set) throw.
AnalysisReport run(const AnalysisRequest& request);

} // namespace holint

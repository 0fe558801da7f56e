#pragma once

#include <cstdint>
#include <vector>

#include "fdsched/engine.hpp"
#include "fdsched/schedule.hpp"
#include "fdsched/scenario.hpp"

namespace fdsched {

inline constexpr int kOracleMaxFlows = 6;
inline constexpr std::uint64_t kOracleDefaultBudget = 50'000'000;

struct FeasibleSet {
    std::vector<int> flows;           // ascending
    std::vector<double> flow_rates;   // rate of flows[k] when exactly this set transmits
};

// Every role-feasible subset of flows, the empty set first, in bitmask order.
// Throws SizeError above kOracleMaxFlows flows.
std::vector<FeasibleSet> enumerate_feasible_sets(const Scenario& scenario);

struct Allocation {
    struct Entry {
        std::vector<int> flows;
        int slots;
    };
    std::vector<Entry> entries;  // nonzero counts only

    int total_slots() const;
};

struct ExactSolution {
    int optimum = 0;
    Allocation allocation;  // among optimal allocations, one using the fewest slots
    std::uint64_t nodes = 0;
};

// Maximum number of flows meeting their demand over all slot-count allocations to
// feasible sets. Slot order does not change any frame throughput, so counts suffice.
// Throws SizeError if the search visits more than `node_budget` nodes.
ExactSolution solve_exact(const Scenario& scenario, std::uint64_t node_budget = kOracleDefaultBudget);

// Re-derives frame throughput from an exported schedule, independently of the engine's
// cached link budget. Throws ContractViolation for schedules failing check_schedule().
TrialMetrics recompute_metrics(const Schedule& schedule, const Scenario& scenario);

}  // namespace fdsched

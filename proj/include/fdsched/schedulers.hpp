#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fdsched/contention.hpp"
#include "fdsched/schedule.hpp"
#include "fdsched/scenario.hpp"

namespace fdsched {

// Slots each flow needs at its interference-free rate to meet its demand within the
// frame: q_f (T_s + M dt) / (R_f dt). Infinite when the solo rate is zero.
struct SlotDemand {
    std::vector<double> slots;

    // Demand cannot be met inside the frame even without interference.
    bool droppable(int flow, int num_slots) const;
};

SlotDemand slot_demand(const Scenario& scenario);

enum class SchedulerKind { ProposedFd, ProposedHd, Mqis, Tdma, Fdp };

inline constexpr SchedulerKind kAllSchedulers[] = {SchedulerKind::ProposedFd, SchedulerKind::ProposedHd,
                                                    SchedulerKind::Mqis, SchedulerKind::Tdma, SchedulerKind::Fdp};

const char* to_string(SchedulerKind kind);
// Accepts "proposed-fd", "proposed-hd", "mqis", "tdma", "fdp"; throws ConfigError otherwise.
SchedulerKind scheduler_from_name(std::string_view name);

// Drop flows whose demand exceeds the frame, sort the rest by demand, then at every
// completion event re-scan that order and admit each idle, contention-free flow whose
// admission strictly raises the slot's total rate.
Schedule proposed_fd(const Scenario& scenario);
// proposed_fd over the half-duplex graph.
Schedule proposed_hd(const Scenario& scenario);
// The shared admission loop, on any graph.
Schedule proposed_on_graph(const Scenario& scenario, const ContentionGraph& graph);

// Minimum-degree greedy independent set on the half-duplex graph, rebuilt over the
// uncompleted flows whenever a member completes. No dropping, no profit check.
Schedule mqis(const Scenario& scenario);

// One flow at a time at its solo rate, smallest demand first.
Schedule tdma(const Scenario& scenario);

// Phases anchored on the largest remaining demand; members are added in decreasing
// remaining demand when role-feasible and within the RI threshold of every member.
// A phase runs until all members meet their demand.
Schedule fdp(const Scenario& scenario);

Schedule run_scheduler(SchedulerKind kind, const Scenario& scenario);

// Repeatedly take the minimum-degree vertex of the graph induced on `candidates`
// (ties: smaller demand, then smaller id) and delete it with its neighbours.
// Returns the chosen vertices in ascending id order.
std::vector<int> min_degree_independent_set(const ContentionGraph& graph, std::span<const int> candidates,
                                            std::span<const double> demand);

}  // namespace fdsched

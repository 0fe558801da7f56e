#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdsched/scenario.hpp"

namespace fdsched {

enum class CellState : std::int8_t { Unscheduled = 0, Scheduled = 1, Completed = -1 };

// F x M decision matrix plus the set of flows removed before scheduling.
// Storage is slot-major so a slot's column is contiguous.
class Schedule {
public:
    Schedule() = default;
    Schedule(int num_flows, int num_slots);

    int num_flows() const { return num_flows_; }
    int num_slots() const { return num_slots_; }

    CellState at(int flow, int slot) const { return cells_[index(flow, slot)]; }
    void set(int flow, int slot, CellState state) { cells_[index(flow, slot)] = state; }

    // Scheduled flows of `slot`, ascending.
    std::vector<int> active(int slot) const;
    // First slot whose cell is Completed, if any.
    std::optional<int> completion_slot(int flow) const;

    std::vector<int> dropped;

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::size_t index(int flow, int slot) const {
        return static_cast<std::size_t>(slot) * static_cast<std::size_t>(num_flows_) + static_cast<std::size_t>(flow);
    }

    int num_flows_ = 0;
    int num_slots_ = 0;
    std::vector<CellState> cells_;
};

// Per-slot station capacity and role split, no rescheduling after completion, dropped
// rows empty. Returns one message per problem; empty means valid.
std::vector<std::string> check_schedule(const Schedule& schedule, const Scenario& scenario);

// {"num_flows", "num_slots", "dropped", "slots": [[active ids]...], "completion_slot": [int|null]}
std::string to_json(const Schedule& schedule);
Schedule schedule_from_json(std::string_view text);

}  // namespace fdsched

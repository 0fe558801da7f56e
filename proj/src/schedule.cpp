#include "fdsched/schedule.hpp"

#include <algorithm>

#include "fdsched/errors.hpp"
#include "json.hpp"

namespace fdsched {

using nlohmann::json;

Schedule::Schedule(int num_flows, int num_slots)
    : num_flows_(num_flows),
      num_slots_(num_slots),
      cells_(static_cast<std::size_t>(num_flows) * static_cast<std::size_t>(num_slots), CellState::Unscheduled) {
    if (num_flows < 0 || num_slots < 0) throw ContractViolation("schedule dimensions must be nonnegative");
}

std::vector<int> Schedule::active(int slot) const {
    std::vector<int> out;
    for (int f = 0; f < num_flows_; ++f) {
        if (at(f, slot) == CellState::Scheduled) out.push_back(f);
    }
    return out;
}

std::optional<int> Schedule::completion_slot(int flow) const {
    for (int i = 0; i < num_slots_; ++i) {
        if (at(flow, i) == CellState::Completed) return i;
    }
    return std::nullopt;
}

std::vector<std::string> check_schedule(const Schedule& sched, const Scenario& s) {
    std::vector<std::string> problems;
    if (sched.num_flows() != s.num_flows() || sched.num_slots() != s.timing.num_slots) {
        problems.push_back("schedule dimensions do not match the scenario");
        return problems;
    }
    const std::size_t n = s.stations.size();
    std::vector<int> tx_use(n);
    std::vector<int> rx_use(n);
    for (int i = 0; i < sched.num_slots(); ++i) {
        std::fill(tx_use.begin(), tx_use.end(), 0);
        std::fill(rx_use.begin(), rx_use.end(), 0);
        for (int f : sched.active(i)) {
            const Flow& flow = s.flows[static_cast<std::size_t>(f)];
            ++tx_use[static_cast<std::size_t>(flow.tx)];
            ++rx_use[static_cast<std::size_t>(flow.rx)];
        }
        for (std::size_t b = 0; b < n; ++b) {
            const std::string where = "slot " + std::to_string(i) + " station " + std::to_string(b);
            if (tx_use[b] + rx_use[b] > 2) problems.push_back(where + ": more than two flows");
            if (tx_use[b] > 1) problems.push_back(where + ": two flows transmit");
            if (rx_use[b] > 1) problems.push_back(where + ": two flows receive");
        }
    }
    for (int f = 0; f < sched.num_flows(); ++f) {
        bool completed = false;
        for (int i = 0; i < sched.num_slots(); ++i) {
            const CellState c = sched.at(f, i);
            if (completed && c != CellState::Completed) {
                problems.push_back("flow " + std::to_string(f) + " leaves Completed at slot " + std::to_string(i));
                break;
            }
            completed = c == CellState::Completed;
        }
    }
    for (int f : sched.dropped) {
        if (f < 0 || f >= sched.num_flows()) {
            problems.push_back("dropped id " + std::to_string(f) + " out of range");
            continue;
        }
        for (int i = 0; i < sched.num_slots(); ++i) {
            if (sched.at(f, i) != CellState::Unscheduled) {
                problems.push_back("dropped flow " + std::to_string(f) + " has a non-empty row");
                break;
            }
        }
    }
    return problems;
}

std::string to_json(const Schedule& sched) {
    json j;
    j["num_flows"] = sched.num_flows();
    j["num_slots"] = sched.num_slots();
    j["dropped"] = sched.dropped;
    json slots = json::array();
    for (int i = 0; i < sched.num_slots(); ++i) slots.push_back(sched.active(i));
    j["slots"] = std::move(slots);
    json completion = json::array();
    for (int f = 0; f < sched.num_flows(); ++f) {
        const auto c = sched.completion_slot(f);
        completion.push_back(c ? json(*c) : json(nullptr));
    }
    j["completion_slot"] = std::move(completion);
    return j.dump() + "\n";
}

Schedule schedule_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        Schedule sched(j.at("num_flows").get<int>(), j.at("num_slots").get<int>());
        sched.dropped = j.at("dropped").get<std::vector<int>>();
        const auto& slots = j.at("slots");
        if (static_cast<int>(slots.size()) != sched.num_slots()) throw ConfigError("schedule JSON: slot count mismatch");
        for (int i = 0; i < sched.num_slots(); ++i) {
            for (int f : slots[static_cast<std::size_t>(i)].get<std::vector<int>>()) {
                if (f < 0 || f >= sched.num_flows()) throw ConfigError("schedule JSON: flow id out of range");
                sched.set(f, i, CellState::Scheduled);
            }
        }
        const auto& completion = j.at("completion_slot");
        for (int f = 0; f < sched.num_flows(); ++f) {
            const auto& c = completion.at(static_cast<std::size_t>(f));
            if (c.is_null()) continue;
            for (int i = c.get<int>(); i < sched.num_slots(); ++i) sched.set(f, i, CellState::Completed);
        }
        return sched;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("schedule JSON: ") + e.what());
    }
}

}  // namespace fdsched

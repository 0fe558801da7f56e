#include "fdsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fdsched/errors.hpp"
#include "fdsched/rates.hpp"

namespace fdsched {

bool SlotDemand::droppable(int flow, int num_slots) const {
    const double xi = slots[static_cast<std::size_t>(flow)];
    return !(xi <= static_cast<double>(num_slots));
}

SlotDemand slot_demand(const Scenario& s) {
    SlotDemand d;
    d.slots.reserve(s.flows.size());
    const double frame = s.timing.frame_duration();
    for (int f = 0; f < s.num_flows(); ++f) {
        const double q = s.flows[static_cast<std::size_t>(f)].qos;
        const double r = solo_rate(f, s);
        if (q == 0.0) {
            d.slots.push_back(0.0);
        } else if (!(r > 0.0)) {
            d.slots.push_back(std::numeric_limits<double>::infinity());
        } else {
            d.slots.push_back(q * frame / (r * s.timing.slot_duration));
        }
    }
    return d;
}

const char* to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::ProposedFd: return "proposed-fd";
        case SchedulerKind::ProposedHd: return "proposed-hd";
        case SchedulerKind::Mqis: return "mqis";
        case SchedulerKind::Tdma: return "tdma";
        case SchedulerKind::Fdp: return "fdp";
    }
    return "?";
}

SchedulerKind scheduler_from_name(std::string_view name) {
    for (auto k : kAllSchedulers) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("unknown scheduler '" + std::string(name) + "'");
}

namespace {

// Co-simulates the frame while a scheduler fills it: writes each slot's column and
// accumulates sum(R dt) per flow. Rates are recomputed only when the active set changes.
class FrameTicker {
public:
    FrameTicker(const Scenario& s, const LinkBudget& budget)
        : budget_(budget),
          dt_(s.timing.slot_duration),
          frame_(s.timing.frame_duration()),
          delivered_(s.flows.size(), 0.0) {
        qos_.reserve(s.flows.size());
        for (const auto& f : s.flows) qos_.push_back(f.qos);
    }

    void tick(Schedule& sched, int slot, std::span<const CellState> cells, const std::vector<int>& active) {
        for (int f = 0; f < sched.num_flows(); ++f) sched.set(f, slot, cells[static_cast<std::size_t>(f)]);
        if (active != cached_active_) {
            cached_active_ = active;
            budget_.rates(active, cached_rates_);
        }
        for (std::size_t k = 0; k < active.size(); ++k) {
            delivered_[static_cast<std::size_t>(active[k])] += cached_rates_[k] * dt_;
        }
    }

    bool met(int f) const { return delivered_[idx(f)] / frame_ >= qos_[idx(f)]; }
    double delivered(int f) const { return delivered_[idx(f)]; }

private:
    static std::size_t idx(int f) { return static_cast<std::size_t>(f); }

    const LinkBudget& budget_;
    double dt_;
    double frame_;
    std::vector<double> qos_;
    std::vector<double> delivered_;
    std::vector<int> cached_active_;
    std::vector<double> cached_rates_;
};

std::vector<int> with_flow(const std::vector<int>& active, int f) {
    std::vector<int> out;
    out.reserve(active.size() + 1);
    const auto pos = std::lower_bound(active.begin(), active.end(), f);
    out.insert(out.end(), active.begin(), pos);
    out.push_back(f);
    out.insert(out.end(), pos, active.end());
    return out;
}

bool conflicts_with_any(const ContentionGraph& g, int f, const std::vector<int>& set) {
    return std::any_of(set.begin(), set.end(), [&](int o) { return g.has_edge(f, o); });
}

// Writes `cells` into every slot from `from` on, with nobody transmitting.
void fill_idle(Schedule& sched, int from, const std::vector<CellState>& cells) {
    for (int slot = from; slot < sched.num_slots(); ++slot) {
        for (int f = 0; f < sched.num_flows(); ++f) {
            const CellState c = cells[static_cast<std::size_t>(f)];
            sched.set(f, slot, c == CellState::Scheduled ? CellState::Unscheduled : c);
        }
    }
}

// Indices 0..F-1 stably sorted by demand ascending.
std::vector<int> by_demand(const SlotDemand& demand) {
    std::vector<int> order(demand.slots.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return demand.slots[static_cast<std::size_t>(a)] < demand.slots[static_cast<std::size_t>(b)];
    });
    return order;
}

}  // namespace

Schedule proposed_on_graph(const Scenario& s, const ContentionGraph& graph) {
    const int m = s.timing.num_slots;
    const int nf = s.num_flows();
    const LinkBudget budget(s);
    const SlotDemand demand = slot_demand(s);

    Schedule sched(nf, m);
    std::vector<int> prescheduled;
    for (int f : by_demand(demand)) {
        if (demand.droppable(f, m)) {
            sched.dropped.push_back(f);
        } else {
            prescheduled.push_back(f);
        }
    }
    std::sort(sched.dropped.begin(), sched.dropped.end());

    FrameTicker ticker(s, budget);
    std::vector<CellState> cells(static_cast<std::size_t>(nf), CellState::Unscheduled);
    std::vector<int> active;
    double active_sum = 0.0;
    bool change = true;

    for (int slot = 0; slot < m; ++slot) {
        if (change) {
            active_sum = budget.sum_rate(active);
            for (int f : prescheduled) {
                if (cells[static_cast<std::size_t>(f)] != CellState::Unscheduled) continue;
                if (conflicts_with_any(graph, f, active)) continue;
                auto candidate = with_flow(active, f);
                const double candidate_sum = budget.sum_rate(candidate);
                if (candidate_sum > active_sum) {
                    active = std::move(candidate);
                    active_sum = candidate_sum;
                    cells[static_cast<std::size_t>(f)] = CellState::Scheduled;
                }
            }
            change = false;
        }

        ticker.tick(sched, slot, cells, active);

        std::vector<int> still_active;
        for (int f : active) {
            if (ticker.met(f)) {
                cells[static_cast<std::size_t>(f)] = CellState::Completed;
                change = true;
            } else {
                still_active.push_back(f);
            }
        }
        active = std::move(still_active);
    }
    return sched;
}

Schedule proposed_fd(const Scenario& s) { return proposed_on_graph(s, build_graph(s)); }

Schedule proposed_hd(const Scenario& s) { return proposed_on_graph(s, hd_graph(s)); }

std::vector<int> min_degree_independent_set(const ContentionGraph& graph, std::span<const int> candidates,
                                            std::span<const double> demand) {
    std::vector<int> residual(candidates.begin(), candidates.end());
    std::vector<int> chosen;
    while (!residual.empty()) {
        int best = -1;
        int best_degree = 0;
        for (int v : residual) {
            int d = 0;
            for (int u : residual) d += graph.has_edge(v, u) ? 1 : 0;
            const bool better = best < 0 || d < best_degree ||
                                (d == best_degree && (demand[static_cast<std::size_t>(v)] < demand[static_cast<std::size_t>(best)] ||
                                                      (demand[static_cast<std::size_t>(v)] == demand[static_cast<std::size_t>(best)] && v < best)));
            if (better) {
                best = v;
                best_degree = d;
            }
        }
        chosen.push_back(best);
        std::erase_if(residual, [&](int u) { return u == best || graph.has_edge(best, u); });
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Schedule mqis(const Scenario& s) {
    const int m = s.timing.num_slots;
    const int nf = s.num_flows();
    const LinkBudget budget(s);
    const SlotDemand demand = slot_demand(s);
    const ContentionGraph graph = hd_graph(s);

    Schedule sched(nf, m);
    FrameTicker ticker(s, budget);
    std::vector<CellState> cells(static_cast<std::size_t>(nf), CellState::Unscheduled);
    std::vector<int> active;
    bool change = true;

    for (int slot = 0; slot < m; ++slot) {
        if (change) {
            std::vector<int> uncompleted;
            for (int f = 0; f < nf; ++f) {
                auto& c = cells[static_cast<std::size_t>(f)];
                if (c == CellState::Completed) continue;
                c = CellState::Unscheduled;
                uncompleted.push_back(f);
            }
            active = min_degree_independent_set(graph, uncompleted, demand.slots);
            for (int f : active) cells[static_cast<std::size_t>(f)] = CellState::Scheduled;
            change = false;
        }

        ticker.tick(sched, slot, cells, active);

        for (int f : active) {
            if (ticker.met(f)) {
                cells[static_cast<std::size_t>(f)] = CellState::Completed;
                change = true;
            }
        }
        std::erase_if(active, [&](int f) { return cells[static_cast<std::size_t>(f)] == CellState::Completed; });
    }
    return sched;
}

Schedule tdma(const Scenario& s) {
    const int m = s.timing.num_slots;
    const int nf = s.num_flows();
    const LinkBudget budget(s);
    const std::vector<int> order = by_demand(slot_demand(s));

    Schedule sched(nf, m);
    FrameTicker ticker(s, budget);
    std::vector<CellState> cells(static_cast<std::size_t>(nf), CellState::Unscheduled);
    std::size_t next = 0;

    int slot = 0;
    for (; slot < m && next < order.size(); ++slot) {
        const int f = order[next];
        cells[static_cast<std::size_t>(f)] = CellState::Scheduled;
        ticker.tick(sched, slot, cells, {f});
        if (ticker.met(f)) {
            cells[static_cast<std::size_t>(f)] = CellState::Completed;
            ++next;
        }
    }
    fill_idle(sched, slot, cells);
    return sched;
}

Schedule fdp(const Scenario& s) {
    const int m = s.timing.num_slots;
    const int nf = s.num_flows();
    const LinkBudget budget(s);
    const SlotDemand demand = slot_demand(s);
    const ContentionGraph graph = build_graph(s);
    const double frame = s.timing.frame_duration();

    Schedule sched(nf, m);
    FrameTicker ticker(s, budget);
    std::vector<CellState> cells(static_cast<std::size_t>(nf), CellState::Unscheduled);

    const auto remaining = [&](int f) {
        const double q = s.flows[static_cast<std::size_t>(f)].qos;
        const double left = q > 0.0 ? std::max(0.0, 1.0 - ticker.delivered(f) / (q * frame)) : 0.0;
        return demand.slots[static_cast<std::size_t>(f)] * left;
    };

    int slot = 0;
    while (slot < m) {
        std::vector<int> pending;
        for (int f = 0; f < nf; ++f) {
            if (cells[static_cast<std::size_t>(f)] != CellState::Completed) pending.push_back(f);
        }
        if (pending.empty()) break;

        std::vector<double> rem(static_cast<std::size_t>(nf), 0.0);
        for (int f : pending) rem[static_cast<std::size_t>(f)] = remaining(f);
        std::stable_sort(pending.begin(), pending.end(), [&](int a, int b) {
            return rem[static_cast<std::size_t>(a)] > rem[static_cast<std::size_t>(b)];
        });

        std::vector<int> members;
        for (int f : pending) {
            if (!conflicts_with_any(graph, f, members)) members.push_back(f);
        }
        std::sort(members.begin(), members.end());
        for (int f : members) cells[static_cast<std::size_t>(f)] = CellState::Scheduled;

        bool phase_done = false;
        while (slot < m && !phase_done) {
            ticker.tick(sched, slot, cells, members);
            ++slot;
            phase_done = std::all_of(members.begin(), members.end(), [&](int f) { return ticker.met(f); });
        }
        for (int f : members) {
            cells[static_cast<std::size_t>(f)] = ticker.met(f) ? CellState::Completed : CellState::Unscheduled;
        }
    }
    fill_idle(sched, slot, cells);
    return sched;
}

Schedule run_scheduler(SchedulerKind kind, const Scenario& s) {
    switch (kind) {
        case SchedulerKind::ProposedFd: return proposed_fd(s);
        case SchedulerKind::ProposedHd: return proposed_hd(s);
        case SchedulerKind::Mqis: return mqis(s);
        case SchedulerKind::Tdma: return tdma(s);
        case SchedulerKind::Fdp: return fdp(s);
    }
    throw ConfigError("unknown scheduler kind");
}

}  // namespace fdsched

#include "fdsched/oracle.hpp"

#include <algorithm>

#include "fdsched/errors.hpp"
#include "fdsched/rates.hpp"

namespace fdsched {

std::vector<FeasibleSet> enumerate_feasible_sets(const Scenario& s) {
    const int nf = s.num_flows();
    if (nf > kOracleMaxFlows) {
        throw SizeError("exact oracle supports at most " + std::to_string(kOracleMaxFlows) + " flows, got " +
                        std::to_string(nf));
    }
    std::vector<FeasibleSet> out;
    for (unsigned mask = 0; mask < (1u << nf); ++mask) {
        std::vector<int> flows;
        for (int f = 0; f < nf; ++f) {
            if (mask & (1u << f)) flows.push_back(f);
        }
        if (!is_role_feasible(flows, s)) continue;
        FeasibleSet set;
        set.flow_rates.reserve(flows.size());
        for (int f : flows) set.flow_rates.push_back(slot_rate(f, flows, s));
        set.flows = std::move(flows);
        out.push_back(std::move(set));
    }
    return out;
}

int Allocation::total_slots() const {
    int total = 0;
    for (const auto& e : entries) total += e.slots;
    return total;
}

namespace {

class ExactSearch {
public:
    ExactSearch(const Scenario& s, std::vector<FeasibleSet> sets, std::uint64_t budget)
        : s_(s), sets_(std::move(sets)), budget_(budget), dt_(s.timing.slot_duration), frame_(s.timing.frame_duration()) {
        std::erase_if(sets_, [](const FeasibleSet& fs) { return fs.flows.empty(); });
        const auto nf = static_cast<std::size_t>(s.num_flows());
        // best_rate_from_[k][f]: best rate of f over sets k..end, for the completion bound.
        best_rate_from_.assign(sets_.size() + 1, std::vector<double>(nf, 0.0));
        for (std::size_t k = sets_.size(); k-- > 0;) {
            best_rate_from_[k] = best_rate_from_[k + 1];
            for (std::size_t j = 0; j < sets_[k].flows.size(); ++j) {
                auto& r = best_rate_from_[k][static_cast<std::size_t>(sets_[k].flows[j])];
                r = std::max(r, sets_[k].flow_rates[j]);
            }
        }
        counts_.assign(sets_.size(), 0);
    }

    ExactSolution run() {
        std::vector<double> acc(static_cast<std::size_t>(s_.num_flows()), 0.0);
        best_counts_ = counts_;
        visit(0, s_.timing.num_slots, acc);

        ExactSolution sol;
        sol.optimum = best_;
        sol.nodes = nodes_;
        for (std::size_t k = 0; k < sets_.size(); ++k) {
            if (best_counts_[k] > 0) sol.allocation.entries.push_back({sets_[k].flows, best_counts_[k]});
        }
        return sol;
    }

private:
    bool met(int f, const std::vector<double>& acc) const {
        return acc[static_cast<std::size_t>(f)] / frame_ >= s_.flows[static_cast<std::size_t>(f)].qos;
    }

    int completed(const std::vector<double>& acc) const {
        int c = 0;
        for (int f = 0; f < s_.num_flows(); ++f) c += met(f, acc) ? 1 : 0;
        return c;
    }

    // Completed now plus every unmet flow that could still close its gap with all
    // remaining slots at its best remaining rate.
    int upper_bound(std::size_t k, int slots_left, const std::vector<double>& acc) const {
        int bound = 0;
        for (int f = 0; f < s_.num_flows(); ++f) {
            const auto fi = static_cast<std::size_t>(f);
            if (met(f, acc)) {
                ++bound;
                continue;
            }
            const double reach = acc[fi] + slots_left * best_rate_from_[k][fi] * dt_;
            if (reach / frame_ >= s_.flows[fi].qos * (1.0 - 1e-12)) ++bound;
        }
        return bound;
    }

    void visit(std::size_t k, int slots_left, const std::vector<double>& acc) {
        if (++nodes_ > budget_) throw SizeError("exact oracle exceeded its node budget");
        if (best_ == s_.num_flows() && used_ >= best_slots_) return;
        if (k == sets_.size()) {
            const int c = completed(acc);
            if (c > best_ || (c == best_ && used_ < best_slots_)) {
                best_ = c;
                best_slots_ = used_;
                best_counts_ = counts_;
            }
            return;
        }
        const int bound = upper_bound(k, slots_left, acc);
        if (bound < best_ || (bound == best_ && used_ >= best_slots_)) return;

        // Fewer slots on this set first, so the first optimum found is the cheapest along this branch.
        visit(k + 1, slots_left, acc);
        std::vector<double> next = acc;
        const auto& set = sets_[k];
        for (int c = 1; c <= slots_left; ++c) {
            for (std::size_t j = 0; j < set.flows.size(); ++j) {
                next[static_cast<std::size_t>(set.flows[j])] += set.flow_rates[j] * dt_;
            }
            counts_[k] = c;
            used_ += 1;
            visit(k + 1, slots_left - c, next);
        }
        used_ -= counts_[k];
        counts_[k] = 0;
    }

    const Scenario& s_;
    std::vector<FeasibleSet> sets_;
    std::uint64_t budget_;
    double dt_;
    double frame_;
    std::vector<std::vector<double>> best_rate_from_;
    std::vector<int> counts_;
    std::vector<int> best_counts_;
    int used_ = 0;
    int best_ = -1;
    int best_slots_ = 0;
    std::uint64_t nodes_ = 0;
};

}  // namespace

ExactSolution solve_exact(const Scenario& s, std::uint64_t node_budget) {
    return ExactSearch(s, enumerate_feasible_sets(s), node_budget).run();
}

TrialMetrics recompute_metrics(const Schedule& sched, const Scenario& s) {
    const auto problems = check_schedule(sched, s);
    if (!problems.empty()) throw ContractViolation("recompute_metrics: invalid schedule: " + problems.front());

    const double noise = noise_power(s.constants);
    const auto nf = static_cast<std::size_t>(s.num_flows());
    std::vector<double> sum_rate_dt(nf, 0.0);

    for (int i = 0; i < sched.num_slots(); ++i) {
        const std::vector<int> active = sched.active(i);
        for (int f : active) {
            const Flow& victim = s.flows[static_cast<std::size_t>(f)];
            double self_interference = 0.0;
            for (int g : active) {
                const Flow& h = s.flows[static_cast<std::size_t>(g)];
                if (g != f && h.tx == victim.rx) {
                    self_interference += s.stations[static_cast<std::size_t>(h.tx)].si_cancel * noise;
                }
            }
            double multi_user = 0.0;
            for (int g : active) {
                const Flow& l = s.flows[static_cast<std::size_t>(g)];
                const bool disjoint = l.tx != victim.tx && l.tx != victim.rx && l.rx != victim.tx && l.rx != victim.rx;
                if (g != f && disjoint) multi_user += interference_power(s, g, f);
            }
            const double sinr = signal_power(s, f) / (noise + self_interference + multi_user);
            sum_rate_dt[static_cast<std::size_t>(f)] += shannon_rate(s.constants, sinr) * s.timing.slot_duration;
        }
    }

    TrialMetrics m;
    const double frame = s.timing.frame_duration();
    for (std::size_t f = 0; f < nf; ++f) {
        const double t = sum_rate_dt[f] / frame;
        m.per_flow_throughput.push_back(t);
        m.per_flow_completed.push_back(t >= s.flows[f].qos);
        m.completed_count += t >= s.flows[f].qos ? 1 : 0;
        m.system_throughput += t;
    }
    return m;
}

}  // namespace fdsched

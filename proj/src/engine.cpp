#include "fdsched/engine.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>

#include "fdsched/errors.hpp"
#include "fdsched/random.hpp"
#include "fdsched/rates.hpp"
#include "json.hpp"

namespace fdsched {

TrialMetrics evaluate(const Schedule& sched, const Scenario& s) {
    if (sched.num_flows() != s.num_flows() || sched.num_slots() != s.timing.num_slots) {
        throw ContractViolation("evaluate: schedule does not match scenario dimensions");
    }
    const LinkBudget budget(s);
    const auto nf = static_cast<std::size_t>(s.num_flows());
    std::vector<double> delivered(nf, 0.0);
    std::vector<int> last_active;
    std::vector<double> rates;
    bool have_rates = false;

    for (int i = 0; i < sched.num_slots(); ++i) {
        std::vector<int> active = sched.active(i);
        if (!have_rates || active != last_active) {
            budget.rates(active, rates);
            last_active = std::move(active);
            have_rates = true;
        }
        for (std::size_t k = 0; k < last_active.size(); ++k) {
            delivered[static_cast<std::size_t>(last_active[k])] += rates[k] * s.timing.slot_duration;
        }
    }

    const double frame = s.timing.frame_duration();
    TrialMetrics m;
    m.per_flow_throughput.resize(nf);
    m.per_flow_completed.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        const double t = delivered[f] / frame;
        m.per_flow_throughput[f] = t;
        m.per_flow_completed[f] = t >= s.flows[f].qos;
        m.completed_count += m.per_flow_completed[f] ? 1 : 0;
        m.system_throughput += t;
    }
    return m;
}

TrialMetrics run_trial(const Scenario& s, SchedulerKind scheduler) { return evaluate(run_scheduler(scheduler, s), s); }

TrialMetrics run_trial(const Scenario& s, std::string_view scheduler) {
    return run_trial(s, scheduler_from_name(scheduler));
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::NumFlows: return "num_flows";
        case SweepAxis::BetaMagnitude: return "beta_magnitude";
        case SweepAxis::SigmaMagnitude: return "sigma_magnitude";
    }
    return "?";
}

GenerationParams params_at(const SweepSpec& spec, double v) {
    GenerationParams p = spec.base;
    switch (spec.axis) {
        case SweepAxis::NumFlows:
            if (v < 0.0 || v != std::floor(v)) throw ConfigError("num_flows axis values must be nonnegative integers");
            p.num_flows = static_cast<int>(v);
            break;
        case SweepAxis::BetaMagnitude: {
            const double scale = std::pow(10.0, v);
            p.beta_low = spec.base.beta_low * scale;
            p.beta_high = spec.base.beta_high * scale;
            break;
        }
        case SweepAxis::SigmaMagnitude:
            p.sigma = std::pow(10.0, v);
            break;
    }
    return p;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t trial) {
    return splitmix64(splitmix64(master_seed) ^ static_cast<std::uint64_t>(trial));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::vector<SchedulerKind>& schedulers,
                                std::uint64_t master_seed, const SweepOptions& options) {
    if (spec.trials < 1) throw ConfigError("sweep needs at least one trial");
    if (spec.axis_values.empty()) throw ConfigError("sweep needs at least one axis value");
    if (schedulers.empty()) throw ConfigError("sweep needs at least one scheduler");

    const std::size_t trials = static_cast<std::size_t>(spec.trials);
    const std::size_t jobs = spec.axis_values.size() * trials;
    const std::size_t ns = schedulers.size();
    std::vector<SweepRow> rows(jobs * ns);

    // Fail fast on bad axis values before spawning workers.
    for (double v : spec.axis_values) (void)params_at(spec, v);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs || failed.load()) return;
            const std::size_t a = job / trials;
            const std::size_t t = job % trials;
            try {
                const double v = spec.axis_values[a];
                const std::uint64_t seed = derive_seed(master_seed, t);
                const Scenario scenario = generate(seed, params_at(spec, v));
                for (std::size_t k = 0; k < ns; ++k) {
                    const TrialMetrics m = run_trial(scenario, schedulers[k]);
                    rows[job * ns + k] = {schedulers[k], spec.axis, v, static_cast<int>(t), seed,
                                          m.completed_count, m.system_throughput};
                }
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (options.progress) options.progress(finished, jobs);
        }
    };

    unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<SweepRow>& rows) {
    struct Acc {
        std::vector<double> completed;
        std::vector<double> throughput;
    };
    std::vector<std::pair<std::pair<double, SchedulerKind>, Acc>> groups;
    std::map<std::pair<double, int>, std::size_t> slot_of;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.axis_value, static_cast<int>(r.scheduler));
        auto [it, inserted] = slot_of.try_emplace(key, groups.size());
        if (inserted) groups.push_back({{r.axis_value, r.scheduler}, {}});
        auto& acc = groups[it->second].second;
        acc.completed.push_back(r.completed);
        acc.throughput.push_back(r.throughput);
    }

    const auto mean_std = [](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        const double mean = sum / static_cast<double>(xs.size());
        if (xs.size() < 2) return std::make_pair(mean, 0.0);
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::make_pair(mean, std::sqrt(ss / static_cast<double>(xs.size() - 1)));
    };

    std::vector<AggregateRow> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        const auto [mc, sc] = mean_std(acc.completed);
        const auto [mt, st] = mean_std(acc.throughput);
        out.push_back({key.second, key.first, acc.completed.size(), mc, sc, mt, st});
    }
    return out;
}

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_rows_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "scheduler,axis,axis_value,trial,seed,completed,throughput_gbps\n";
    for (const auto& r : rows) {
        out << to_string(r.scheduler) << ',' << to_string(r.axis) << ',' << format_number(r.axis_value) << ','
            << r.trial << ',' << r.seed << ',' << r.completed << ',' << format_number(r.throughput / 1e9) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
    out << "scheduler,axis_value,mean_completed,std_completed,mean_throughput_gbps,std_throughput_gbps\n";
    for (const auto& r : rows) {
        out << to_string(r.scheduler) << ',' << format_number(r.axis_value) << ',' << format_number(r.mean_completed)
            << ',' << format_number(r.std_completed) << ',' << format_number(r.mean_throughput / 1e9) << ','
            << format_number(r.std_throughput / 1e9) << '\n';
    }
}

void write_rows_json(std::ostream& out, const std::vector<SweepRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        j.push_back({{"scheduler", to_string(r.scheduler)},
                     {"axis", to_string(r.axis)},
                     {"axis_value", r.axis_value},
                     {"trial", r.trial},
                     {"seed", r.seed},
                     {"completed", r.completed},
                     {"throughput_gbps", r.throughput / 1e9}});
    }
    out << j.dump(2) << '\n';
}

}  // namespace fdsched

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdsched/schedule.hpp"
#include "fdsched/schedulers.hpp"
#include "fdsched/scenario.hpp"

namespace fdsched {

struct TrialMetrics {
    int completed_count = 0;
    double system_throughput = 0.0;           // bit/s, sum of per-flow throughput
    std::vector<double> per_flow_throughput;  // T_f, bit/s
    std::vector<bool> per_flow_completed;     // T_f >= q_f

    friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

// Plays a schedule over the frame: T_f = sum_i R_f^i dt / (T_s + M dt).
TrialMetrics evaluate(const Schedule& schedule, const Scenario& scenario);

TrialMetrics run_trial(const Scenario& scenario, SchedulerKind scheduler);
// Throws ConfigError for unknown names.
TrialMetrics run_trial(const Scenario& scenario, std::string_view scheduler);

enum class SweepAxis { NumFlows, BetaMagnitude, SigmaMagnitude };

const char* to_string(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::NumFlows;
    std::vector<double> axis_values;
    int trials = 100;
    GenerationParams base;
};

// Applies one axis value: flow count, beta range scaled by 10^x, or sigma = 10^x.
GenerationParams params_at(const SweepSpec& spec, double axis_value);

// Seed of trial `trial`: splitmix64(splitmix64(master) ^ trial). The axis value does
// not enter, so trial t draws the same stations, betas (up to the axis scale) and flow
// prefix at every axis point.
std::uint64_t derive_seed(std::uint64_t master_seed, std::size_t trial);

struct SweepRow {
    SchedulerKind scheduler;
    SweepAxis axis;
    double axis_value;
    int trial;
    std::uint64_t seed;
    int completed;
    double throughput;  // bit/s
};

struct SweepOptions {
    unsigned workers = 0;  // 0: hardware concurrency
    // Called after each finished (axis value, trial) job with (done, total); may come from any worker.
    std::function<void(std::size_t, std::size_t)> progress;
};

// Rows in (axis value, trial, scheduler) order regardless of worker count. Every
// scheduler at a given (value, trial) sees the same scenario.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const std::vector<SchedulerKind>& schedulers,
                                std::uint64_t master_seed, const SweepOptions& options = {});

struct AggregateRow {
    SchedulerKind scheduler;
    double axis_value;
    std::size_t samples;
    double mean_completed;
    double std_completed;     // sample standard deviation, 0 for one sample
    double mean_throughput;   // bit/s
    double std_throughput;
};

// Groups in first-appearance order of (axis value, scheduler).
std::vector<AggregateRow> aggregate(const std::vector<SweepRow>& rows);

// Shortest round-trip decimal form.
std::string format_number(double value);

// scheduler,axis,axis_value,trial,seed,completed,throughput_gbps
void write_rows_csv(std::ostream& out, const std::vector<SweepRow>& rows);
// scheduler,axis_value,mean_completed,std_completed,mean_throughput_gbps,std_throughput_gbps
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
// Array of objects with the CSV column names as keys.
void write_rows_json(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace fdsched

#include <sstream>

#include "doctest.h"
#include "fdsched/engine.hpp"
#include "fdsched/errors.hpp"
#include "fdsched/oracle.hpp"
#include "fdsched/rates.hpp"
#include "support.hpp"

using namespace fdsched;

namespace {

SweepSpec small_spec(SweepAxis axis, std::vector<double> values, int trials, int flows = 20) {
    SweepSpec spec;
    spec.axis = axis;
    spec.axis_values = std::move(values);
    spec.trials = trials;
    spec.base.num_flows = flows;
    return spec;
}

std::string csv(const std::vector<SweepRow>& rows) {
    std::ostringstream ss;
    write_rows_csv(ss, rows);
    return ss.str();
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("never scheduled flow delivers nothing") {
    const Scenario s = test::square_scenario();
    const Schedule empty(2, s.timing.num_slots);
    const TrialMetrics m = evaluate(empty, s);
    CHECK(m.completed_count == 0);
    CHECK(m.system_throughput == 0.0);
    CHECK(m.per_flow_throughput == std::vector<double>{0.0, 0.0});
}

TEST_CASE("flow alone in every slot") {
    const Scenario s = test::square_scenario(20e9);
    Schedule sched(2, s.timing.num_slots);
    for (int i = 0; i < s.timing.num_slots; ++i) sched.set(0, i, CellState::Scheduled);
    const TrialMetrics m = evaluate(sched, s);
    const double expect = solo_rate(0, s) * s.timing.num_slots * s.timing.slot_duration / s.timing.frame_duration();
    CHECK(m.per_flow_throughput[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(m.per_flow_throughput[1] == 0.0);
    CHECK_FALSE(m.per_flow_completed[0]);
}

TEST_CASE("metrics bookkeeping") {
    GenerationParams p;
    p.num_flows = 30;
    const Scenario s = generate(5, p);
    for (auto k : kAllSchedulers) {
        const TrialMetrics m = run_trial(s, k);
        double sum = 0.0;
        int done = 0;
        for (int f = 0; f < s.num_flows(); ++f) {
            sum += m.per_flow_throughput[static_cast<std::size_t>(f)];
            done += m.per_flow_completed[static_cast<std::size_t>(f)] ? 1 : 0;
            CHECK(m.per_flow_completed[static_cast<std::size_t>(f)] ==
                  (m.per_flow_throughput[static_cast<std::size_t>(f)] >= s.flows[static_cast<std::size_t>(f)].qos));
        }
        CHECK(m.system_throughput == sum);
        CHECK(m.completed_count == done);
        CHECK(run_trial(s, to_string(k)) == m);
    }
    CHECK_THROWS_AS(run_trial(s, "nope"), ConfigError);
}

TEST_CASE("engine agrees with the independent recomputation") {
    GenerationParams p;
    p.num_flows = 25;
    const Scenario s = generate(8, p);
    for (auto k : kAllSchedulers) {
        const Schedule sched = run_scheduler(k, s);
        CHECK(evaluate(sched, s) == recompute_metrics(sched, s));
    }
}

TEST_CASE("sweep shape") {
    const auto one = run_sweep(small_spec(SweepAxis::NumFlows, {10}, 1), {SchedulerKind::Tdma}, 1);
    CHECK(one.size() == 1);

    const auto spec = small_spec(SweepAxis::SigmaMagnitude, {-4, -3, -2}, 3);
    const std::vector<SchedulerKind> kinds{SchedulerKind::ProposedFd, SchedulerKind::Mqis};
    const auto rows = run_sweep(spec, kinds, 9);
    REQUIRE(rows.size() == 3 * 3 * 2);
    // (axis value, trial, scheduler) order
    CHECK(rows[0].axis_value == -4);
    CHECK(rows[0].trial == 0);
    CHECK(rows[0].scheduler == SchedulerKind::ProposedFd);
    CHECK(rows[1].scheduler == SchedulerKind::Mqis);
    CHECK(rows[2].trial == 1);
    CHECK(rows[6].axis_value == -3);
    CHECK(rows[0].seed == derive_seed(9, 0));
    CHECK(rows[6].seed == rows[0].seed);

    CHECK_THROWS_AS(run_sweep(small_spec(SweepAxis::NumFlows, {}, 1), kinds, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(small_spec(SweepAxis::NumFlows, {10}, 0), kinds, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(small_spec(SweepAxis::NumFlows, {10.5}, 1), kinds, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(small_spec(SweepAxis::NumFlows, {10}, 1), {}, 1), ConfigError);
}

TEST_CASE("axis values map onto generation parameters") {
    SweepSpec spec = small_spec(SweepAxis::BetaMagnitude, {2}, 1);
    const auto p = params_at(spec, 2);
    CHECK(p.beta_low == doctest::Approx(200.0));
    CHECK(p.beta_high == doctest::Approx(400.0));
    spec.axis = SweepAxis::SigmaMagnitude;
    CHECK(params_at(spec, -3).sigma == doctest::Approx(1e-3));
    spec.axis = SweepAxis::NumFlows;
    CHECK(params_at(spec, 70).num_flows == 70);
}

TEST_CASE("paired scenarios") {
    // Every scheduler at a (value, trial) sees the same scenario, so TDMA, which
    // ignores sigma, is identical along a sigma sweep.
    const auto spec = small_spec(SweepAxis::SigmaMagnitude, {-6, -3, -1}, 4);
    const auto rows = run_sweep(spec, {SchedulerKind::Tdma}, 2);
    for (std::size_t t = 0; t < 4; ++t) {
        CHECK(rows[t].completed == rows[4 + t].completed);
        CHECK(rows[t].throughput == rows[8 + t].throughput);
    }
}

TEST_CASE("sweeps are reproducible for any worker count") {
    const auto spec = small_spec(SweepAxis::NumFlows, {10, 20, 30}, 4);
    const std::vector<SchedulerKind> all(std::begin(kAllSchedulers), std::end(kAllSchedulers));
    const std::string serial = csv(run_sweep(spec, all, 77, {1, {}}));
    CHECK(csv(run_sweep(spec, all, 77, {4, {}})) == serial);
    CHECK(csv(run_sweep(spec, all, 77, {0, {}})) == serial);
    CHECK(csv(run_sweep(spec, all, 78, {1, {}})) != serial);
}

TEST_CASE("progress reaches the total") {
    const auto spec = small_spec(SweepAxis::NumFlows, {5, 6}, 3);
    std::size_t last = 0;
    std::size_t total = 0;
    SweepOptions opts{1, [&](std::size_t done, std::size_t of) {
                          last = done;
                          total = of;
                      }};
    (void)run_sweep(spec, {SchedulerKind::Tdma}, 1, opts);
    CHECK(total == 6);
    CHECK(last == 6);
}

TEST_CASE("aggregate") {
    const auto row = [](SchedulerKind k, double v, int c, double t) { return SweepRow{k, SweepAxis::NumFlows, v, 0, 0, c, t}; };
    const std::vector<SweepRow> rows{row(SchedulerKind::Tdma, 30, 4, 1e9), row(SchedulerKind::Tdma, 30, 6, 3e9),
                                     row(SchedulerKind::Mqis, 30, 5, 2e9), row(SchedulerKind::Tdma, 40, 7, 7e9),
                                     row(SchedulerKind::Tdma, 40, 7, 7e9)};
    const auto agg = aggregate(rows);
    REQUIRE(agg.size() == 3);
    CHECK(agg[0].scheduler == SchedulerKind::Tdma);
    CHECK(agg[0].samples == 2);
    CHECK(agg[0].mean_completed == 5.0);
    CHECK(agg[0].std_completed == doctest::Approx(std::sqrt(2.0)));
    CHECK(agg[0].mean_throughput == 2e9);
    CHECK(agg[1].scheduler == SchedulerKind::Mqis);
    CHECK(agg[1].std_completed == 0.0);
    CHECK(agg[2].axis_value == 40);
    CHECK(agg[2].std_completed == 0.0);
    CHECK(agg[2].std_throughput == 0.0);
    CHECK(aggregate({}).empty());
}

TEST_CASE("csv layout") {
    const std::vector<SweepRow> rows{{SchedulerKind::ProposedFd, SweepAxis::BetaMagnitude, 2, 3, 12345, 17, 41.5e9}};
    CHECK(csv(rows) ==
          "scheduler,axis,axis_value,trial,seed,completed,throughput_gbps\n"
          "proposed-fd,beta_magnitude,2,3,12345,17,41.5\n");
    std::ostringstream ss;
    write_aggregate_csv(ss, aggregate(rows));
    CHECK(ss.str() ==
          "scheduler,axis_value,mean_completed,std_completed,mean_throughput_gbps,std_throughput_gbps\n"
          "proposed-fd,2,17,0,41.5,0\n");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-6) == "-6");
}

}  // TEST_SUITE

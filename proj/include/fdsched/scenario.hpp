#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdsched/phy.hpp"

namespace fdsched {

struct BaseStation {
    int id = 0;
    Point position;
    double si_cancel = 0.0;  // beta_n; residual self-interference is beta_n * N0 * W

    friend bool operator==(const BaseStation&, const BaseStation&) = default;
};

struct Flow {
    int id = 0;
    int tx = 0;
    int rx = 0;
    double qos = 0.0;  // bit/s

    friend bool operator==(const Flow&, const Flow&) = default;
};

struct FrameTiming {
    double slot_duration = 18e-6;     // s
    double scheduling_phase = 850e-6; // s
    int num_slots = 2000;

    // T_s + M * dt, the denominator of every per-frame throughput.
    double frame_duration() const { return scheduling_phase + num_slots * slot_duration; }

    friend bool operator==(const FrameTiming&, const FrameTiming&) = default;
};

// Station and flow ids are their indices in the respective vectors.
struct Scenario {
    std::vector<BaseStation> stations;
    std::vector<Flow> flows;
    RadioConstants constants = RadioConstants::defaults();
    FrameTiming timing;
    double contention_threshold = 1e-3;  // sigma

    int num_flows() const { return static_cast<int>(flows.size()); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct GenerationParams {
    int num_bs = 10;
    double area = 100.0;  // side of the square, m
    int num_flows = 30;
    double qos_low = 1e9;
    double qos_high = 3e9;
    double beta_low = 2.0;
    double beta_high = 4.0;
    RadioConstants constants = RadioConstants::defaults();
    FrameTiming timing;
    double sigma = 1e-3;
};

// Draws a scenario from mt19937_64(seed). Draw order: station x,y pairs, then one
// beta per station, then per flow a (tx, rx) pair redrawn while tx == rx, then qos.
Scenario generate(std::uint64_t seed, const GenerationParams& params);

struct Violation {
    std::string name;    // stable tag, e.g. "self-flow", "colocated-bs"
    std::string detail;
};

// Every invariant violation in the scenario; empty means valid.
std::vector<Violation> validate(const Scenario& scenario);

// JSON schema: stations[{id,x_m,y_m,beta}], flows[{id,tx,rx,qos_bps}],
// constants{...}, timing{...}, sigma.
std::string to_json(const Scenario& scenario);
Scenario scenario_from_json(std::string_view text);

}  // namespace fdsched

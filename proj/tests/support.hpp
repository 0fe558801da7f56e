#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fdsched/random.hpp"
#include "fdsched/scenario.hpp"

namespace fdsched::test {

struct StationSpec {
    double x;
    double y;
    double beta = 0.0;
};

struct FlowSpec {
    int tx;
    int rx;
    double qos = 1e9;
};

inline Scenario make_scenario(const std::vector<StationSpec>& stations, const std::vector<FlowSpec>& flows,
                              double sigma = 1e-3) {
    Scenario s;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        s.stations.push_back({static_cast<int>(i), {stations[i].x, stations[i].y}, stations[i].beta});
    }
    for (std::size_t i = 0; i < flows.size(); ++i) {
        s.flows.push_back({static_cast<int>(i), flows[i].tx, flows[i].rx, flows[i].qos});
    }
    s.contention_threshold = sigma;
    return s;
}

// A(0,0) B(50,0) C(0,50) D(50,50); flows A->B and C->D are parallel 50 m links.
inline Scenario square_scenario(double qos = 1e9) {
    return make_scenario({{0, 0}, {50, 0}, {0, 50}, {50, 50}}, {{0, 1, qos}, {2, 3, qos}});
}

// Desk-size instance: four stations, up to four flows, a six-slot frame and demands
// scaled so that one to four slots of air time decide completion.
inline Scenario tiny_scenario(std::uint64_t seed) {
    Rng rng(seed);
    GenerationParams p;
    p.num_bs = 4;
    p.num_flows = 1 + static_cast<int>(rng.below(4));
    p.timing.num_slots = 1 + static_cast<int>(rng.below(6));
    p.qos_low = 0.1e9;
    p.qos_high = 0.9e9;
    p.sigma = std::pow(10.0, -1.0 - static_cast<double>(rng.below(6)));
    return generate(rng.next(), p);
}

}  // namespace fdsched::test

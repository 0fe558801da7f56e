#include "fdsched/rates.hpp"

#include <algorithm>
#include <string>

#include "fdsched/errors.hpp"

namespace fdsched {

namespace {

const Flow& flow_at(const Scenario& s, int f) {
    if (f < 0 || f >= s.num_flows()) throw ContractViolation("unknown flow id " + std::to_string(f));
    return s.flows[static_cast<std::size_t>(f)];
}

const Point& station_at(const Scenario& s, int id) { return s.stations.at(static_cast<std::size_t>(id)).position; }

bool shares_station(const Flow& a, const Flow& b) {
    return a.tx == b.tx || a.tx == b.rx || a.rx == b.tx || a.rx == b.rx;
}

}  // namespace

Antenna tx_antenna(const Scenario& s, const Flow& flow) {
    return {station_at(s, flow.tx), station_at(s, flow.rx)};
}

Antenna rx_antenna(const Scenario& s, const Flow& flow) {
    return {station_at(s, flow.rx), station_at(s, flow.tx)};
}

double signal_power(const Scenario& s, int flow) {
    const Flow& f = flow_at(s, flow);
    const auto pattern = AntennaPattern::from_beamwidth(s.constants.halfpower_beamwidth);
    return received_power(tx_antenna(s, f), rx_antenna(s, f), s.constants, pattern, false);
}

double interference_power(const Scenario& s, int interferer, int victim) {
    const Flow& l = flow_at(s, interferer);
    const Flow& f = flow_at(s, victim);
    const auto pattern = AntennaPattern::from_beamwidth(s.constants.halfpower_beamwidth);
    return received_power(tx_antenna(s, l), rx_antenna(s, f), s.constants, pattern, true);
}

bool is_role_feasible(std::span<const int> active, const Scenario& s) {
    for (std::size_t a = 0; a < active.size(); ++a) {
        const Flow& fa = flow_at(s, active[a]);
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            if (active[a] == active[b]) return false;
            const Flow& fb = flow_at(s, active[b]);
            if (fa.tx == fb.tx || fa.rx == fb.rx) return false;
        }
    }
    return true;
}

double slot_rate(int flow, std::span<const int> active, const Scenario& s) {
    if (!is_role_feasible(active, s)) {
        throw ContractViolation("slot_rate: active set violates the one-transmit/one-receive rule");
    }
    if (std::find(active.begin(), active.end(), flow) == active.end()) return 0.0;

    std::vector<int> order(active.begin(), active.end());
    std::sort(order.begin(), order.end());

    const Flow& f = flow_at(s, flow);
    const double noise = noise_power(s.constants);
    double rsi = 0.0;
    for (int g : order) {
        const Flow& h = flow_at(s, g);
        if (g != flow && h.tx == f.rx) rsi += s.stations.at(static_cast<std::size_t>(h.tx)).si_cancel * noise;
    }
    double mui = 0.0;
    for (int g : order) {
        const Flow& l = flow_at(s, g);
        if (g != flow && !shares_station(f, l)) mui += interference_power(s, g, flow);
    }
    return shannon_rate(s.constants, signal_power(s, flow) / (noise + rsi + mui));
}

double solo_rate(int flow, const Scenario& s) {
    return shannon_rate(s.constants, signal_power(s, flow) / noise_power(s.constants));
}

LinkBudget::LinkBudget(const Scenario& s)
    : num_flows_(s.num_flows()), noise_(noise_power(s.constants)), constants_(s.constants) {
    const auto n = idx(num_flows_);
    signal_.resize(n);
    mui_.assign(n * n, 0.0);
    tx_.resize(n);
    rx_.resize(n);
    for (std::size_t f = 0; f < n; ++f) {
        tx_[f] = s.flows[f].tx;
        rx_[f] = s.flows[f].rx;
        signal_[f] = signal_power(s, static_cast<int>(f));
    }
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t f = 0; f < n; ++f) {
            if (l != f && tx_[l] != rx_[f]) {
                mui_[l * n + f] = interference_power(s, static_cast<int>(l), static_cast<int>(f));
            }
        }
    }
    rsi_at_station_.reserve(s.stations.size());
    for (const auto& bs : s.stations) rsi_at_station_.push_back(bs.si_cancel * noise_);
}

double LinkBudget::rate(int flow, std::span<const int> active) const {
    if (std::find(active.begin(), active.end(), flow) == active.end()) return 0.0;
    const int ft = tx(flow);
    const int fr = rx(flow);
    double rsi = 0.0;
    for (int g : active) {
        if (g != flow && tx(g) == fr) rsi += rsi_at_station_[idx(tx(g))];
    }
    double mui = 0.0;
    for (int g : active) {
        if (g == flow) continue;
        const int gt = tx(g);
        const int gr = rx(g);
        if (gt != ft && gt != fr && gr != ft && gr != fr) mui += interference(g, flow);
    }
    return shannon_rate(constants_, signal(flow) / (noise_ + rsi + mui));
}

double LinkBudget::solo_rate(int flow) const { return shannon_rate(constants_, signal(flow) / noise_); }

double LinkBudget::sum_rate(std::span<const int> active) const {
    double total = 0.0;
    for (int g : active) total += rate(g, active);
    return total;
}

void LinkBudget::rates(std::span<const int> active, std::vector<double>& out) const {
    out.resize(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) out[k] = rate(active[k], active);
}

}  // namespace fdsched

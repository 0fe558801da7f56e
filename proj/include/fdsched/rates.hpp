#pragma once

#include <span>
#include <vector>

#include "fdsched/phy.hpp"
#include "fdsched/scenario.hpp"

namespace fdsched {

// Transmit antenna of `flow`, steered at its receiver.
Antenna tx_antenna(const Scenario& scenario, const Flow& flow);
// Receive antenna of `flow`, steered at its transmitter.
Antenna rx_antenna(const Scenario& scenario, const Flow& flow);

// P_r(t_f, r_f)
double signal_power(const Scenario& scenario, int flow);
// rho * P_r(t_l, r_f); the interferer's beam stays on its own receiver.
double interference_power(const Scenario& scenario, int interferer, int victim);

// No two flows share a transmitter and no two share a receiver. Under this rule a
// station carries at most one outgoing and one incoming flow, which is exactly the
// two-antenna limit with one antenna per role.
bool is_role_feasible(std::span<const int> active, const Scenario& scenario);

// Instantaneous rate of `flow` in a slot where `active` transmits. RSI counts once
// per active flow transmitting from f's receiver; MUI counts from active flows that
// share no station with f. Throws ContractViolation for role-infeasible sets.
double slot_rate(int flow, std::span<const int> active, const Scenario& scenario);

// Interference-free rate.
double solo_rate(int flow, const Scenario& scenario);

// Per-scenario cache of every power term a slot-rate evaluation can touch.
// Rates computed here are bit-identical to slot_rate().
class LinkBudget {
public:
    explicit LinkBudget(const Scenario& scenario);

    int num_flows() const { return num_flows_; }
    double noise() const { return noise_; }
    double signal(int f) const { return signal_[idx(f)]; }
    // rho * P_r(t_l, r_f); zero when t_l == r_f.
    double interference(int interferer, int victim) const {
        return mui_[idx(interferer) * idx(num_flows_) + idx(victim)];
    }
    int tx(int f) const { return tx_[idx(f)]; }
    int rx(int f) const { return rx_[idx(f)]; }

    // `active` sorted ascending and role-feasible; not checked.
    double rate(int flow, std::span<const int> active) const;
    double solo_rate(int flow) const;
    // Sum of rate(g, active) over g in active, in order.
    double sum_rate(std::span<const int> active) const;
    // rates[k] = rate(active[k], active)
    void rates(std::span<const int> active, std::vector<double>& out) const;

private:
    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

    int num_flows_ = 0;
    double noise_ = 0.0;
    RadioConstants constants_;
    std::vector<double> signal_;
    std::vector<double> mui_;
    std::vector<double> rsi_at_station_;
    std::vector<int> tx_;
    std::vector<int> rx_;
};

}  // namespace fdsched

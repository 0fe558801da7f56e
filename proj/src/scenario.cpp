#include "fdsched/scenario.hpp"

#include <cmath>
#include <limits>

#include "fdsched/errors.hpp"
#include "fdsched/random.hpp"
#include "json.hpp"

namespace fdsched {

using nlohmann::json;

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ConfigError("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Scenario generate(std::uint64_t seed, const GenerationParams& params) {
    if (params.num_bs < 2) throw ConfigError("generate: need at least 2 base stations");
    if (params.num_flows < 0) throw ConfigError("generate: negative flow count");
    if (!(params.area > 0.0)) throw ConfigError("generate: area must be positive");
    if (!(params.qos_low <= params.qos_high)) throw ConfigError("generate: empty qos range");
    if (!(params.beta_low <= params.beta_high)) throw ConfigError("generate: empty beta range");

    Rng rng(seed);
    Scenario s;
    s.constants = params.constants;
    s.timing = params.timing;
    s.contention_threshold = params.sigma;

    s.stations.reserve(static_cast<std::size_t>(params.num_bs));
    for (int i = 0; i < params.num_bs; ++i) {
        Point p;
        for (;;) {
            p.x = params.area * rng.uniform();
            p.y = params.area * rng.uniform();
            bool clash = false;
            for (const auto& other : s.stations) clash = clash || other.position == p;
            if (!clash) break;
        }
        s.stations.push_back({i, p, 0.0});
    }
    for (auto& bs : s.stations) bs.si_cancel = rng.uniform(params.beta_low, params.beta_high);

    const auto n = static_cast<std::uint64_t>(params.num_bs);
    s.flows.reserve(static_cast<std::size_t>(params.num_flows));
    for (int f = 0; f < params.num_flows; ++f) {
        int tx = 0;
        int rx = 0;
        do {
            tx = static_cast<int>(rng.below(n));
            rx = static_cast<int>(rng.below(n));
        } while (tx == rx);
        s.flows.push_back({f, tx, rx, rng.uniform(params.qos_low, params.qos_high)});
    }
    return s;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;
    auto add = [&out](std::string name, std::string detail) {
        out.push_back({std::move(name), std::move(detail)});
    };
    const int n = static_cast<int>(s.stations.size());

    for (int i = 0; i < n; ++i) {
        const auto& bs = s.stations[static_cast<std::size_t>(i)];
        if (bs.id != i) add("station-id", "station at index " + std::to_string(i) + " has id " + std::to_string(bs.id));
        if (!(bs.si_cancel >= 0.0) || !std::isfinite(bs.si_cancel))
            add("negative-beta", "station " + std::to_string(i));
        if (!std::isfinite(bs.position.x) || !std::isfinite(bs.position.y))
            add("bad-position", "station " + std::to_string(i));
        for (int j = 0; j < i; ++j) {
            if (s.stations[static_cast<std::size_t>(j)].position == bs.position)
                add("colocated-bs", "stations " + std::to_string(j) + " and " + std::to_string(i));
        }
    }

    for (int f = 0; f < s.num_flows(); ++f) {
        const auto& flow = s.flows[static_cast<std::size_t>(f)];
        const std::string tag = "flow " + std::to_string(f);
        if (flow.id != f) add("flow-id", tag + " has id " + std::to_string(flow.id));
        const bool tx_ok = flow.tx >= 0 && flow.tx < n;
        const bool rx_ok = flow.rx >= 0 && flow.rx < n;
        if (!tx_ok || !rx_ok) add("unknown-endpoint", tag);
        if (flow.tx == flow.rx) add("self-flow", tag);
        if (!(flow.qos > 0.0) || !std::isfinite(flow.qos)) add("nonpositive-qos", tag);
    }

    const auto& c = s.constants;
    if (!(c.tx_power > 0.0)) add("constants", "tx_power must be positive");
    if (!(c.bandwidth > 0.0)) add("constants", "bandwidth must be positive");
    if (!(c.noise_psd > 0.0)) add("constants", "noise_psd must be positive");
    if (!(c.transceiver_efficiency > 0.0 && c.transceiver_efficiency < 1.0))
        add("constants", "transceiver_efficiency must lie in (0, 1)");
    if (!(c.pathloss_exponent >= 1.0)) add("constants", "pathloss_exponent must be >= 1");
    if (!(c.pathloss_constant > 0.0)) add("constants", "pathloss_constant must be positive");
    if (!(c.mui_factor >= 0.0)) add("constants", "mui_factor must be nonnegative");
    if (!(c.halfpower_beamwidth > 0.0 && c.halfpower_beamwidth < 360.0 / 2.6))
        add("constants", "halfpower_beamwidth must lie in (0, 360/2.6)");

    if (!(s.timing.slot_duration > 0.0)) add("timing", "slot_duration must be positive");
    if (!(s.timing.scheduling_phase >= 0.0)) add("timing", "scheduling_phase must be nonnegative");
    if (s.timing.num_slots < 1) add("timing", "num_slots must be >= 1");
    if (!(s.contention_threshold > 0.0)) add("sigma", "contention threshold must be positive");
    return out;
}

std::string to_json(const Scenario& s) {
    json j;
    j["stations"] = json::array();
    for (const auto& bs : s.stations) {
        j["stations"].push_back({{"id", bs.id}, {"x_m", bs.position.x}, {"y_m", bs.position.y}, {"beta", bs.si_cancel}});
    }
    j["flows"] = json::array();
    for (const auto& f : s.flows) {
        j["flows"].push_back({{"id", f.id}, {"tx", f.tx}, {"rx", f.rx}, {"qos_bps", f.qos}});
    }
    const auto& c = s.constants;
    j["constants"] = {
        {"carrier_wavelength_m", c.carrier_wavelength},
        {"tx_power_w", c.tx_power},
        {"pathloss_exponent", c.pathloss_exponent},
        {"mui_factor", c.mui_factor},
        {"transceiver_efficiency", c.transceiver_efficiency},
        {"bandwidth_hz", c.bandwidth},
        {"noise_psd_w_per_hz", c.noise_psd},
        {"pathloss_constant", c.pathloss_constant},
        {"halfpower_beamwidth_deg", c.halfpower_beamwidth},
    };
    j["timing"] = {
        {"slot_duration_s", s.timing.slot_duration},
        {"scheduling_phase_s", s.timing.scheduling_phase},
        {"num_slots", s.timing.num_slots},
    };
    j["sigma"] = s.contention_threshold;
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario JSON: ") + e.what());
    }
    try {
        Scenario s;
        for (const auto& bs : j.at("stations")) {
            s.stations.push_back({bs.at("id").get<int>(), {bs.at("x_m").get<double>(), bs.at("y_m").get<double>()},
                                  bs.at("beta").get<double>()});
        }
        for (const auto& f : j.at("flows")) {
            s.flows.push_back({f.at("id").get<int>(), f.at("tx").get<int>(), f.at("rx").get<int>(),
                               f.at("qos_bps").get<double>()});
        }
        const auto& c = j.at("constants");
        s.constants.carrier_wavelength = c.at("carrier_wavelength_m").get<double>();
        s.constants.tx_power = c.at("tx_power_w").get<double>();
        s.constants.pathloss_exponent = c.at("pathloss_exponent").get<double>();
        s.constants.mui_factor = c.at("mui_factor").get<double>();
        s.constants.transceiver_efficiency = c.at("transceiver_efficiency").get<double>();
        s.constants.bandwidth = c.at("bandwidth_hz").get<double>();
        s.constants.noise_psd = c.at("noise_psd_w_per_hz").get<double>();
        s.constants.pathloss_constant = c.at("pathloss_constant").get<double>();
        s.constants.halfpower_beamwidth = c.at("halfpower_beamwidth_deg").get<double>();
        const auto& t = j.at("timing");
        s.timing.slot_duration = t.at("slot_duration_s").get<double>();
        s.timing.scheduling_phase = t.at("scheduling_phase_s").get<double>();
        s.timing.num_slots = t.at("num_slots").get<int>();
        s.contention_threshold = j.at("sigma").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario JSON: ") + e.what());
    }
}

}  // namespace fdsched

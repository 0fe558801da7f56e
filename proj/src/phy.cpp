#include "fdsched/phy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdsched/errors.hpp"

namespace fdsched {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double dbm_per_mhz_to_w_per_hz(double dbm_per_mhz) { return dbm_to_watts(dbm_per_mhz) / 1e6; }
double w_per_hz_to_dbm_per_mhz(double w_per_hz) { return watts_to_dbm(w_per_hz * 1e6); }

double RadioConstants::friis_constant(double wavelength) {
    const double r = wavelength / (4.0 * kPi);
    return r * r;
}

RadioConstants RadioConstants::defaults() {
    RadioConstants c;
    c.carrier_wavelength = 5e-3;  // 60 GHz with c rounded to 3e8 m/s
    c.tx_power = 1.0;
    c.pathloss_exponent = 2.0;
    c.mui_factor = 1.0;
    c.transceiver_efficiency = 0.5;
    c.bandwidth = 1200e6;
    c.noise_psd = dbm_per_mhz_to_w_per_hz(-134.0);
    c.pathloss_constant = friis_constant(c.carrier_wavelength);
    c.halfpower_beamwidth = 30.0;
    return c;
}

AntennaPattern AntennaPattern::from_beamwidth(double halfpower_beamwidth_deg) {
    if (!(halfpower_beamwidth_deg > 0.0) || !(halfpower_beamwidth_deg < 360.0 / 2.6)) {
        throw DomainError("half-power beamwidth must lie in (0, 360/2.6) degrees");
    }
    const double half_rad = halfpower_beamwidth_deg / 2.0 * kPi / 180.0;
    const double amplitude = 1.6162 / std::sin(half_rad);

    AntennaPattern p;
    p.halfpower_beamwidth_deg = halfpower_beamwidth_deg;
    p.g0_db = 10.0 * std::log10(amplitude * amplitude);
    p.mainlobe_width_deg = 2.6 * halfpower_beamwidth_deg;
    p.sidelobe_gain_db = -0.4111 * std::log(halfpower_beamwidth_deg) - 10.579;
    return p;
}

double antenna_gain_db(const AntennaPattern& pattern, double theta_deg) {
    if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
        throw DomainError("antenna angle " + std::to_string(theta_deg) + " outside [0, 180]");
    }
    if (theta_deg <= pattern.mainlobe_width_deg / 2.0) {
        const double r = 2.0 * theta_deg / pattern.halfpower_beamwidth_deg;
        return pattern.g0_db - 3.01 * r * r;
    }
    return pattern.sidelobe_gain_db;
}

double antenna_gain(const AntennaPattern& pattern, double theta_deg) {
    return db_to_linear(antenna_gain_db(pattern, theta_deg));
}

double boresight_angle(const Point& antenna_at, const Point& aimed_at, const Point& other) {
    if (antenna_at == aimed_at) throw DomainError("antenna aimed at its own position");
    if (other == antenna_at) throw DomainError("degenerate geometry: target colocated with antenna");

    const double ax = aimed_at.x - antenna_at.x;
    const double ay = aimed_at.y - antenna_at.y;
    const double bx = other.x - antenna_at.x;
    const double by = other.y - antenna_at.y;
    const double cross = ax * by - ay * bx;
    const double dot = ax * bx + ay * by;
    const double deg = std::atan2(std::abs(cross), dot) * 180.0 / kPi;
    return std::clamp(deg, 0.0, 180.0);
}

double received_power(const Antenna& tx, const Antenna& rx, const RadioConstants& constants,
                      const AntennaPattern& pattern, bool is_interference) {
    const double d = distance(tx.position, rx.position);
    if (!(d > 0.0)) throw DomainError("received_power: zero transmitter-receiver distance");

    const double gt = antenna_gain(pattern, boresight_angle(tx.position, tx.aim, rx.position));
    const double gr = antenna_gain(pattern, boresight_angle(rx.position, rx.aim, tx.position));
    double p = constants.pathloss_constant * constants.tx_power * gt * gr *
               std::pow(d, -constants.pathloss_exponent);
    if (is_interference) p *= constants.mui_factor;
    return p;
}

double noise_power(const RadioConstants& constants) { return constants.noise_psd * constants.bandwidth; }

double shannon_rate(const RadioConstants& constants, double sinr) {
    return constants.transceiver_efficiency * constants.bandwidth * std::log2(1.0 + sinr);
}

}  // namespace fdsched

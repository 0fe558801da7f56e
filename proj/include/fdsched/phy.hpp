#pragma once

// Closed-form physical-layer models for a 60 GHz line-of-sight backhaul link:
// directional antenna gain, Friis-style received power, thermal noise.
// Everything is SI linear units; dB appears only in the conversion helpers.

namespace fdsched {

struct Point {
    double x = 0.0;  // meters
    double y = 0.0;  // meters

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

inline constexpr double kPi = 3.14159265358979323846;

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
// dBm/MHz -> W/Hz
double dbm_per_mhz_to_w_per_hz(double dbm_per_mhz);
double w_per_hz_to_dbm_per_mhz(double w_per_hz);

struct RadioConstants {
    double carrier_wavelength = 0.0;   // m
    double tx_power = 0.0;             // W
    double pathloss_exponent = 0.0;
    double mui_factor = 0.0;
    double transceiver_efficiency = 0.0;
    double bandwidth = 0.0;            // Hz
    double noise_psd = 0.0;            // W/Hz
    double pathloss_constant = 0.0;
    double halfpower_beamwidth = 0.0;  // degrees

    // 60 GHz, 1 W, n=2, rho=1, eta=0.5, 1200 MHz, -134 dBm/MHz, 30 degree beams.
    static RadioConstants defaults();

    // k = (lambda / 4 pi)^2
    static double friis_constant(double wavelength);

    friend bool operator==(const RadioConstants&, const RadioConstants&) = default;
};

// Sectored main-lobe / flat side-lobe pattern parameterised by the half-power beamwidth.
struct AntennaPattern {
    double g0_db = 0.0;
    double mainlobe_width_deg = 0.0;
    double sidelobe_gain_db = 0.0;
    double halfpower_beamwidth_deg = 0.0;

    static AntennaPattern from_beamwidth(double halfpower_beamwidth_deg);
};

// Gain in dB at `theta_deg` off boresight; theta in [0, 180].
double antenna_gain_db(const AntennaPattern& pattern, double theta_deg);
double antenna_gain(const AntennaPattern& pattern, double theta_deg);

// Planar angle between (antenna_at -> aimed_at) and (antenna_at -> other), degrees in [0, 180].
double boresight_angle(const Point& antenna_at, const Point& aimed_at, const Point& other);

struct Antenna {
    Point position;
    Point aim;
};

// Power at `rx` from `tx`, each antenna steered at its own aim point.
// With `is_interference` the result is scaled by the MUI factor.
double received_power(const Antenna& tx, const Antenna& rx, const RadioConstants& constants,
                      const AntennaPattern& pattern, bool is_interference);

// N0 * W
double noise_power(const RadioConstants& constants);

// eta * W * log2(1 + sinr)
double shannon_rate(const RadioConstants& constants, double sinr);

}  // namespace fdsched

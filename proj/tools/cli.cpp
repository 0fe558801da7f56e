#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "fdsched/errors.hpp"
#include "fdsched/oracle.hpp"
#include "json.hpp"

namespace fdsched::cli {

namespace {

double parse_number(std::string_view token) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) throw ConfigError("not a number: '" + std::string(token) + "'");
    return v;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = text.find(sep, start);
        out.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Simulation defaults, in the units used on the command line.
struct GenerationOptions {
    int num_bs = 10;
    double area_m = 100.0;
    int flows = 30;
    double qos_low_gbps = 1.0;
    double qos_high_gbps = 3.0;
    double beta_low = 2.0;
    double beta_high = 4.0;
    double sigma = 1e-3;
    double tx_power_mw = 1000.0;
    double pathloss_exponent = 2.0;
    double mui_factor = 1.0;
    double efficiency = 0.5;
    double bandwidth_mhz = 1200.0;
    double noise_dbm_per_mhz = -134.0;
    double slot_us = 18.0;
    double scheduling_phase_us = 850.0;
    int slots = 2000;
    double beamwidth_deg = 30.0;
    double wavelength_mm = 5.0;

    GenerationParams to_params() const {
        GenerationParams p;
        p.num_bs = num_bs;
        p.area = area_m;
        p.num_flows = flows;
        p.qos_low = qos_low_gbps * 1e9;
        p.qos_high = qos_high_gbps * 1e9;
        p.beta_low = beta_low;
        p.beta_high = beta_high;
        p.sigma = sigma;
        p.constants.tx_power = tx_power_mw * 1e-3;
        p.constants.pathloss_exponent = pathloss_exponent;
        p.constants.mui_factor = mui_factor;
        p.constants.transceiver_efficiency = efficiency;
        p.constants.bandwidth = bandwidth_mhz * 1e6;
        p.constants.noise_psd = dbm_per_mhz_to_w_per_hz(noise_dbm_per_mhz);
        p.constants.halfpower_beamwidth = beamwidth_deg;
        p.constants.carrier_wavelength = wavelength_mm * 1e-3;
        p.constants.pathloss_constant = RadioConstants::friis_constant(p.constants.carrier_wavelength);
        p.timing.slot_duration = slot_us * 1e-6;
        p.timing.scheduling_phase = scheduling_phase_us * 1e-6;
        p.timing.num_slots = slots;
        return p;
    }
};

void add_generation_options(CLI::App* app, GenerationOptions& g) {
    auto* grp = app->add_option_group("Scenario generation");
    grp->add_option("--bs", g.num_bs, "number of base stations")->capture_default_str();
    grp->add_option("--area-m", g.area_m, "side of the square deployment area [m]")->capture_default_str();
    grp->add_option("--flows", g.flows, "number of flows")->capture_default_str();
    grp->add_option("--qos-low", g.qos_low_gbps, "lower bound of per-flow QoS demand [Gbps]")->capture_default_str();
    grp->add_option("--qos-high", g.qos_high_gbps, "upper bound of per-flow QoS demand [Gbps]")->capture_default_str();
    grp->add_option("--beta-low", g.beta_low, "lower bound of SI cancelation level beta [linear]")->capture_default_str();
    grp->add_option("--beta-high", g.beta_high, "upper bound of SI cancelation level beta [linear]")->capture_default_str();
    grp->add_option("--sigma", g.sigma, "contention threshold [linear]")->capture_default_str();
    grp->add_option("--tx-power", g.tx_power_mw, "transmission power P_t [mW]")->capture_default_str();
    grp->add_option("--pathloss-exponent", g.pathloss_exponent, "path loss exponent n")->capture_default_str();
    grp->add_option("--mui-factor", g.mui_factor, "MUI factor rho")->capture_default_str();
    grp->add_option("--efficiency", g.efficiency, "transceiver efficiency eta")->capture_default_str();
    grp->add_option("--bandwidth", g.bandwidth_mhz, "system bandwidth W [MHz]")->capture_default_str();
    grp->add_option("--noise", g.noise_dbm_per_mhz, "background noise N0 [dBm/MHz]")->capture_default_str();
    grp->add_option("--slot", g.slot_us, "slot time [us]")->capture_default_str();
    grp->add_option("--scheduling-phase", g.scheduling_phase_us, "scheduling phase time T_s [us]")->capture_default_str();
    grp->add_option("--slots", g.slots, "slots per transmission phase M")->capture_default_str();
    grp->add_option("--beamwidth", g.beamwidth_deg, "half-power beamwidth [deg]")->capture_default_str();
    grp->add_option("--wavelength", g.wavelength_mm, "carrier wavelength [mm]")->capture_default_str();
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
    file.flush();
    if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

std::string resolve_output(const std::string& explicit_path, const std::string& stem) {
    if (!explicit_path.empty()) return explicit_path;
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        return (std::filesystem::path(dir) / stem).string();
    }
    return "-";
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "'");
}

void require_valid(const Scenario& s) {
    const auto violations = validate(s);
    if (violations.empty()) return;
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v.name + ": " + v.detail;
    throw ConfigError(msg);
}

struct SweepOptionsCli {
    GenerationOptions gen;
    std::string values;
    int trials = 100;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string schedulers = "proposed-fd,proposed-hd,mqis,tdma,fdp";
    std::string out;
    std::string aggregate_out;
    std::string format = "csv";
    bool quiet = false;
};

void add_sweep_options(CLI::App* app, SweepOptionsCli& o, const char* values_flag, const char* values_help) {
    add_generation_options(app, o.gen);
    app->add_option(values_flag, o.values, values_help)->capture_default_str();
    app->add_option("--trials", o.trials, "trials per axis value")->capture_default_str();
    app->add_option("--seed", o.seed, "master seed")->capture_default_str();
    app->add_option("--workers", o.workers, "worker threads (0: available parallelism)")->capture_default_str();
    app->add_option("--schedulers", o.schedulers, "comma-separated scheduler names")->capture_default_str();
    app->add_option("--out", o.out, "per-trial results file ('-' for stdout)");
    app->add_option("--aggregate-out", o.aggregate_out, "per-(scheduler, axis value) mean/std CSV");
    app->add_option("--format", o.format, "results format: csv or json")->capture_default_str();
    app->add_flag("--quiet", o.quiet, "no progress on stderr");
}

int run_sweep_command(const SweepOptionsCli& o, SweepAxis axis, const std::string& name, std::ostream& out,
                      std::ostream& err) {
    const auto schedulers = parse_schedulers(o.schedulers);
    const Format format = parse_format(o.format);

    SweepSpec spec;
    spec.axis = axis;
    spec.axis_values = parse_axis_values(o.values);
    spec.trials = o.trials;
    spec.base = o.gen.to_params();

    SweepOptions opts;
    opts.workers = o.workers;
    if (!o.quiet) {
        opts.progress = [&err, name](std::size_t done, std::size_t total) {
            if (done == total || done % std::max<std::size_t>(1, total / 20) == 0) {
                err << "[" << name << "] " << done << "/" << total << " trials\n";
            }
        };
    }
    const auto rows = run_sweep(spec, schedulers, o.seed, opts);
    emit(rows, format, resolve_output(o.out, name + (format == Format::Csv ? ".csv" : ".json")), out);

    const std::string agg_path = o.aggregate_out.empty() && std::getenv(kOutputDirEnv) != nullptr
                                     ? resolve_output("", name + "_aggregate.csv")
                                     : o.aggregate_out;
    if (!agg_path.empty()) {
        std::ostringstream ss;
        write_aggregate_csv(ss, aggregate(rows));
        write_text(agg_path, ss.str(), out);
    }
    return kExitOk;
}

}  // namespace

std::vector<double> parse_axis_values(std::string_view text) {
    const auto tokens = split(text, ',');
    std::vector<double> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (tok.empty()) throw ConfigError("empty entry in value list '" + std::string(text) + "'");
        if (tok == "...") {
            if (out.size() < 2 || i + 1 != tokens.size() - 1) {
                throw ConfigError("'...' needs two values before it and exactly one after it");
            }
            const double step = out[out.size() - 1] - out[out.size() - 2];
            const double last = parse_number(tokens[i + 1]);
            if (step == 0.0 || (last - out.back()) / step < 0.0) throw ConfigError("'...' progression never reaches " + tokens[i + 1]);
            const double n = (last - out.back()) / step;
            if (std::abs(n - std::round(n)) > 1e-9) throw ConfigError("'...' progression does not land on " + tokens[i + 1]);
            const double base = out.back();
            for (long k = 1; k <= std::lround(n); ++k) out.push_back(base + static_cast<double>(k) * step);
            break;
        }
        if (const auto pos = tok.find("..", 1); pos != std::string::npos) {
            const double a = parse_number(std::string_view(tok).substr(0, pos));
            const double b = parse_number(std::string_view(tok).substr(pos + 2));
            if (a != std::floor(a) || b != std::floor(b)) throw ConfigError("range '" + tok + "' needs integer bounds");
            const double step = a <= b ? 1.0 : -1.0;
            for (double v = a; step > 0 ? v <= b : v >= b; v += step) out.push_back(v);
            continue;
        }
        out.push_back(parse_number(tok));
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

std::vector<SchedulerKind> parse_schedulers(std::string_view text) {
    std::vector<SchedulerKind> out;
    for (const auto& name : split(text, ',')) {
        if (name.empty()) continue;
        out.push_back(scheduler_from_name(name));
    }
    if (out.empty()) throw ConfigError("scheduler list is empty");
    return out;
}

void emit(const std::vector<SweepRow>& rows, Format format, const std::string& path, std::ostream& out) {
    if (rows.empty()) throw ConfigError("nothing to emit");
    std::ostringstream ss;
    if (format == Format::Csv) {
        write_rows_csv(ss, rows);
    } else {
        write_rows_json(ss, rows);
    }
    write_text(path, ss.str(), out);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Full-duplex mmWave backhaul scheduling simulator", "fdsched"};
    app.require_subcommand(1);

    // generate
    GenerationOptions gen_opts;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "draw a scenario and write it as JSON");
    add_generation_options(generate_cmd, gen_opts);
    generate_cmd->add_option("--seed", gen_seed, "scenario seed")->capture_default_str();
    generate_cmd->add_option("--out", gen_out, "scenario JSON path ('-' for stdout)");

    // run
    GenerationOptions run_gen;
    std::uint64_t run_seed = 1;
    std::string run_scenario;
    std::string run_schedulers = "proposed-fd,proposed-hd,mqis,tdma,fdp";
    std::string run_out;
    std::string run_format = "csv";
    std::string run_schedule_dir;
    auto* run_cmd = app.add_subcommand("run", "run schedulers on one scenario");
    add_generation_options(run_cmd, run_gen);
    run_cmd->add_option("--scenario", run_scenario, "scenario JSON path (otherwise generated)");
    run_cmd->add_option("--seed", run_seed, "scenario seed when generating")->capture_default_str();
    run_cmd->add_option("--schedulers", run_schedulers, "comma-separated scheduler names")->capture_default_str();
    run_cmd->add_option("--out", run_out, "results path ('-' for stdout)");
    run_cmd->add_option("--format", run_format, "results format: csv or json")->capture_default_str();
    run_cmd->add_option("--schedule-dir", run_schedule_dir, "directory for <scheduler>.schedule.json exports");

    // sweeps
    SweepOptionsCli flows_opts;
    flows_opts.values = "30,40,...,90";
    auto* flows_cmd = app.add_subcommand("sweep-flows", "completed flows and throughput versus flow count");
    add_sweep_options(flows_cmd, flows_opts, "--values", "flow counts");

    SweepOptionsCli beta_opts;
    beta_opts.values = "0..4";
    beta_opts.gen.flows = 90;
    auto* beta_cmd = app.add_subcommand("sweep-beta", "versus SI cancelation magnitude x: beta ~ U[low 10^x, high 10^x]");
    add_sweep_options(beta_cmd, beta_opts, "--magnitudes", "beta magnitudes x");

    SweepOptionsCli sigma_opts;
    sigma_opts.values = "-6..-1";
    sigma_opts.gen.flows = 90;
    auto* sigma_cmd = app.add_subcommand("sweep-sigma", "versus contention threshold magnitude x: sigma = 10^x");
    add_sweep_options(sigma_cmd, sigma_opts, "--magnitudes", "sigma magnitudes x");

    // validate
    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "check a scenario JSON file");
    validate_cmd->add_option("scenario", validate_path, "scenario JSON path ('-' for stdin)")->required();

    // oracle
    std::string oracle_path;
    std::uint64_t oracle_budget = kOracleDefaultBudget;
    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum for a tiny scenario, next to every scheduler");
    oracle_cmd->add_option("scenario", oracle_path, "scenario JSON path ('-' for stdin)")->required();
    oracle_cmd->add_option("--budget", oracle_budget, "search node budget")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*generate_cmd) {
            const Scenario s = generate(gen_seed, gen_opts.to_params());
            require_valid(s);
            write_text(resolve_output(gen_out, "scenario.json"), to_json(s), out);
            return kExitOk;
        }
        if (*run_cmd) {
            std::vector<SchedulerKind> kinds;
            Format format{};
            try {
                kinds = parse_schedulers(run_schedulers);
                format = parse_format(run_format);
            } catch (const ConfigError& e) {
                err << "usage error: " << e.what() << '\n';
                return kExitUsage;
            }
            const Scenario s = run_scenario.empty() ? generate(run_seed, run_gen.to_params())
                                                    : scenario_from_json(read_file(run_scenario));
            require_valid(s);
            const std::uint64_t seed = run_scenario.empty() ? run_seed : 0;
            std::vector<SweepRow> rows;
            for (auto k : kinds) {
                const Schedule sched = run_scheduler(k, s);
                const TrialMetrics m = evaluate(sched, s);
                rows.push_back({k, SweepAxis::NumFlows, static_cast<double>(s.num_flows()), 0, seed, m.completed_count,
                                m.system_throughput});
                if (!run_schedule_dir.empty()) {
                    const auto path = std::filesystem::path(run_schedule_dir) / (std::string(to_string(k)) + ".schedule.json");
                    write_text(path.string(), to_json(sched), out);
                }
            }
            emit(rows, format, resolve_output(run_out, format == Format::Csv ? "run.csv" : "run.json"), out);
            return kExitOk;
        }
        const auto sweep = [&](const SweepOptionsCli& o, SweepAxis axis, const char* name) {
            try {
                (void)parse_schedulers(o.schedulers);
                (void)parse_format(o.format);
                (void)parse_axis_values(o.values);
            } catch (const ConfigError& e) {
                err << "usage error: " << e.what() << '\n';
                return kExitUsage;
            }
            return run_sweep_command(o, axis, name, out, err);
        };
        if (*flows_cmd) return sweep(flows_opts, SweepAxis::NumFlows, "sweep-flows");
        if (*beta_cmd) return sweep(beta_opts, SweepAxis::BetaMagnitude, "sweep-beta");
        if (*sigma_cmd) return sweep(sigma_opts, SweepAxis::SigmaMagnitude, "sweep-sigma");
        if (*validate_cmd) {
            const Scenario s = scenario_from_json(read_file(validate_path));
            const auto violations = validate(s);
            if (violations.empty()) {
                out << "ok\n";
                return kExitOk;
            }
            for (const auto& v : violations) out << v.name << ": " << v.detail << '\n';
            return kExitFailure;
        }
        if (*oracle_cmd) {
            const Scenario s = scenario_from_json(read_file(oracle_path));
            require_valid(s);
            const ExactSolution sol = solve_exact(s, oracle_budget);
            nlohmann::json j;
            j["optimum"] = sol.optimum;
            j["nodes"] = sol.nodes;
            j["allocation"] = nlohmann::json::array();
            for (const auto& e : sol.allocation.entries) j["allocation"].push_back({{"flows", e.flows}, {"slots", e.slots}});
            for (auto k : kAllSchedulers) j["schedulers"][to_string(k)] = run_trial(s, k).completed_count;
            out << j.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace fdsched::cli

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "fwm/errors.hpp"
#include "fwm/fitting.hpp"
#include "fwm/harris_hau.hpp"
#include "fwm/parallel.hpp"
#include "fwm/propagation.hpp"
#include "fwm/steady_state.hpp"

namespace fwm::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

ExperimentConfig require_config(const CommandOptions& opts, const char* command) {
    if (opts.config_path.empty()) {
        throw config_error(std::string(command) + " requires --config PATH");
    }
    return load_config(opts.config_path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw io_error("write to '" + path + "' failed");
}

SteadyStateInputs steady_inputs(const ExperimentConfig& config) {
    SteadyStateInputs in;
    in.omega_c = config.params.omega_c;
    in.omega_d = config.driving.peak_rabi;
    in.delta = config.params.delta;
    in.gamma31 = config.params.gamma31;
    in.alpha = config.params.alpha;
    return in;
}

PulseSpec probe_spec(const ExperimentConfig& config, const PhysicalConstants& consts,
                     const char* command) {
    if (config.probe.duration_us <= 0.0) {
        throw config_error(std::string(command) + " needs a [probe] section with duration_us > 0");
    }
    return to_pulse_spec(config.probe, consts);
}

PulseSpec driving_spec(const ExperimentConfig& config, const PulseSpec& probe,
                       const PhysicalConstants& consts) {
    if (config.driving.duration_us > 0.0) return to_pulse_spec(config.driving, consts);
    // No driving configured: a zero-amplitude pulse shadowing the probe.
    PulseSpec off = probe;
    off.peak_rabi = 0.0;
    return off;
}

std::optional<PulseSpec> coupling_spec(const ExperimentConfig& config,
                                       const PhysicalConstants& consts) {
    if (!config.coupling) return std::nullopt;
    return to_pulse_spec(*config.coupling, consts);
}

PropagationResult run_configured(const ExperimentConfig& config, double grid_scale,
                                 const PhysicalConstants& consts, const char* command) {
    const PulseSpec probe = probe_spec(config, consts, command);
    const PulseSpec driving = driving_spec(config, probe, consts);
    return propagate(probe, driving, config.params, resolved_grid(config, grid_scale, consts),
                     coupling_spec(config, consts));
}

std::vector<double> linspace(double from, double to, int count) {
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        values[static_cast<std::size_t>(i)] =
            from + (to - from) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return values;
}

struct SweepRecord {
    double value = 0.0;
    double conversion_efficiency = 0.0;
    double probe_transmission = 0.0;
    double probe_delay_us = 0.0;
    double plateau_probe = std::nan("");
    double plateau_signal = std::nan("");
};

std::vector<SweepRecord> run_pde_sweep(const ExperimentConfig& base, const std::string& parameter,
                                       const std::vector<double>& values, bool serial,
                                       double grid_scale, const PhysicalConstants& consts) {
    std::vector<SweepRecord> records(values.size());
    parallel_for(
        values.size(),
        [&](std::size_t i) {
            ExperimentConfig point = base;
            apply_sweep_value(point, parameter, values[i]);
            const PropagationResult r = run_configured(point, grid_scale, consts, "sweep");
            SweepRecord& rec = records[i];
            rec.value = values[i];
            rec.conversion_efficiency = r.conversion_efficiency;
            rec.probe_transmission = r.energy_transmission_probe;
            rec.probe_delay_us = r.probe_delay * consts.us_per_gamma_time();
            if (r.plateau_transmissions) {
                rec.plateau_probe = r.plateau_transmissions->first;
                rec.plateau_signal = r.plateau_transmissions->second;
            }
        },
        !serial);
    return records;
}

void write_pde_sweep_csv(const std::string& path, const std::string& parameter,
                         const std::vector<SweepRecord>& records, const std::string& hash,
                         const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::ostringstream os;
    os << "# mode = propagation\n";
    os << "# parameter = " << parameter << "\n";
    os << "# config = " << hash << "\n";
    for (const auto& [k, v] : extra) os << "# " << k << " = " << v << "\n";
    os << "parameter,conversion_efficiency,probe_transmission,probe_delay_us,plateau_probe,plateau_signal\n";
    for (const SweepRecord& r : records) {
        os << fmt(r.value) << ',' << fmt(r.conversion_efficiency) << ',' << fmt(r.probe_transmission)
           << ',' << fmt(r.probe_delay_us) << ',' << fmt(r.plateau_probe) << ','
           << fmt(r.plateau_signal) << '\n';
    }
    write_text_file(path, os.str());
}

void write_analytic_sweep_csv(const std::string& path, const std::string& parameter,
                              const ExperimentConfig& base, const std::vector<double>& values,
                              const std::string& hash,
                              const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::ostringstream os;
    os << "# mode = steady_state\n";
    os << "# parameter = " << parameter << "\n";
    os << "# config = " << hash << "\n";
    for (const auto& [k, v] : extra) os << "# " << k << " = " << v << "\n";
    os << "parameter,probe_transmission,signal_efficiency,total_transmission\n";
    for (double value : values) {
        ExperimentConfig point = base;
        apply_sweep_value(point, parameter, value);
        const SteadyStateSolution sol = steady_state(steady_inputs(point));
        os << fmt(value) << ',' << fmt(sol.probe_transmission) << ',' << fmt(sol.signal_efficiency)
           << ',' << fmt(total_transmission(steady_inputs(point))) << '\n';
    }
    write_text_file(path, os.str());
}

} // namespace

int cmd_steady(const CommandOptions& opts, std::ostream& out) {
    const ExperimentConfig config = require_config(opts, "steady");
    const SteadyStateInputs in = steady_inputs(config);
    const SteadyStateSolution sol = steady_state(in);
    std::ostringstream os;
    if (config.params.gamma21 > 0.0) {
        os << "# note: the closed form assumes gamma21 = 0; configured gamma21 ignored\n";
    }
    os << "omega_c = " << fmt(in.omega_c) << "\n"
       << "omega_d = " << fmt(in.omega_d) << "\n"
       << "delta = " << fmt(in.delta) << "\n"
       << "gamma31 = " << fmt(in.gamma31) << "\n"
       << "alpha = " << fmt(in.alpha) << "\n"
       << "probe_transmission = " << fmt(sol.probe_transmission) << "\n"
       << "signal_efficiency = " << fmt(sol.signal_efficiency) << "\n"
       << "total_transmission = " << fmt(total_transmission(in)) << "\n"
       << "probe_ratio = " << fmt(sol.probe_ratio.real()) << (sol.probe_ratio.imag() < 0 ? " - " : " + ")
       << fmt(std::abs(sol.probe_ratio.imag())) << "i\n"
       << "signal_ratio = " << fmt(sol.signal_ratio.real()) << (sol.signal_ratio.imag() < 0 ? " - " : " + ")
       << fmt(std::abs(sol.signal_ratio.imag())) << "i\n"
       << "config = " << config_hash(config) << "\n";
    out << os.str();
    if (!opts.out_path.empty()) write_text_file(opts.out_path, os.str());
    return 0;
}

int cmd_propagate(const CommandOptions& opts, std::ostream& out) {
    const ExperimentConfig config = require_config(opts, "propagate");
    const PhysicalConstants consts;
    const PropagationResult r = run_configured(config, opts.grid_scale, consts, "propagate");
    const double us = consts.us_per_gamma_time();
    const std::string hash = config_hash(config);
    out << "conversion_efficiency = " << fmt(r.conversion_efficiency) << "\n"
        << "energy_transmission_probe = " << fmt(r.energy_transmission_probe) << "\n"
        << "probe_delay_us = " << fmt(r.probe_delay * us) << "\n";
    if (r.plateau_transmissions) {
        out << "plateau_probe_transmission = " << fmt(r.plateau_transmissions->first) << "\n"
            << "plateau_signal_efficiency = " << fmt(r.plateau_transmissions->second) << "\n";
    } else {
        out << "plateau_probe_transmission = none\n"
            << "plateau_signal_efficiency = none\n";
    }
    out << "grid.n_z = " << r.grid.n_z << "\n"
        << "grid.dt = " << fmt(r.grid.dt) << "\n"
        << "grid.t_max_us = " << fmt(r.grid.t_max * us) << "\n"
        << "config = " << hash << "\n";
    if (!opts.out_path.empty()) {
        write_envelope_csv(opts.out_path, r, config.output.stride, consts, {{"config", hash}});
        out << "envelope = " << opts.out_path << "\n";
    }
    return 0;
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out) {
    const ExperimentConfig config = require_config(opts, "sweep");
    if (!config.sweep.present) throw config_error("sweep requires a [sweep] section in the config");
    if (opts.out_path.empty()) throw config_error("sweep requires --out PATH for the CSV");
    const std::vector<double> values = linspace(config.sweep.from, config.sweep.to, config.sweep.count);
    const std::string hash = config_hash(config);
    const PhysicalConstants consts;
    if (opts.analytic) {
        const std::string& p = config.sweep.parameter;
        if (p != "params.delta" && p != "driving.peak_rabi" && p != "params.omega_c" &&
            p != "params.alpha") {
            throw config_error("sweep --analytic cannot vary '" + p +
                               "'; the closed form exposes delta, omega_c, omega_d and alpha");
        }
        write_analytic_sweep_csv(opts.out_path, p, config, values, hash);
    } else {
        const std::vector<SweepRecord> records =
            run_pde_sweep(config, config.sweep.parameter, values, opts.serial, opts.grid_scale, consts);
        write_pde_sweep_csv(opts.out_path, config.sweep.parameter, records, hash);
    }
    out << "points = " << values.size() << "\n"
        << "out = " << opts.out_path << "\n"
        << "config = " << hash << "\n";
    return 0;
}

int cmd_fit(const CommandOptions& opts, std::ostream& out) {
    const ExperimentConfig config = require_config(opts, "fit");
    if (!config.fit.present) throw config_error("fit requires a [fit] section in the config");
    if (opts.trace_path.empty()) throw config_error("fit requires --trace PATH with the recorded trace");
    if (config.driving.duration_us <= 0.0) {
        throw config_error("fit needs a [driving] section with duration_us > 0");
    }
    const PhysicalConstants consts;
    const Trace trace = load_trace(opts.trace_path);

    FitSetup setup;
    setup.params = config.params;
    setup.probe = probe_spec(config, consts, "fit");
    setup.driving = to_pulse_spec(config.driving, consts);
    setup.coupling = coupling_spec(config, consts);
    setup.grid = resolved_grid(config, opts.grid_scale, consts);
    setup.box = ParameterBox{config.fit.omega_d_min, config.fit.omega_d_max, config.fit.gamma21_min,
                             config.fit.gamma21_max};
    setup.max_evals = config.fit.max_evals;
    setup.trace_power_scale = config.fit.trace_power_scale;
    setup.consts = consts;

    const FitResult result = fit_pulse_trace(trace, setup);
    std::ostringstream os;
    fit_result_kv(os, result);
    os << "config = " << config_hash(config) << "\n";
    out << os.str();
    if (!opts.out_path.empty()) write_text_file(opts.out_path, os.str());
    return 0;
}

int cmd_harris_hau(const CommandOptions& opts, std::ostream& out) {
    const ExperimentConfig config = require_config(opts, "harris-hau");
    const PhysicalConstants consts;
    const double per_us = 1.0 / consts.us_per_gamma_time();

    double probe_duration_us = config.harris_hau.probe_duration_us;
    if (probe_duration_us <= 0.0) probe_duration_us = config.probe.duration_us;
    if (probe_duration_us <= 0.0) {
        throw config_error("harris-hau needs [harris_hau] probe_duration_us or a [probe] pulse");
    }

    double n_photons = config.harris_hau.n_photons;
    bool derived_photons = false;
    if (n_photons < 0.0) {
        if (config.driving.peak_rabi <= 0.0 || config.driving.duration_us <= 0.0) {
            throw config_error("harris-hau needs [harris_hau] n_photons or a [driving] pulse to derive it");
        }
        const double intensity = rabi_to_intensity(config.driving.peak_rabi, consts);
        n_photons = photons_per_atomic_cross_section(intensity, config.driving.duration_us * 1e-6, consts);
        derived_photons = true;
    }

    HarrisHauInputs in;
    in.delta = config.params.delta;
    in.gamma31 = config.params.gamma31;
    in.alpha = config.params.alpha;
    in.omega_c = config.params.omega_c;
    in.probe_duration = probe_duration_us * per_us;
    in.n_photons = n_photons;
    in.sigma_ratio = config.harris_hau.sigma_ratio;
    in.phi = config.harris_hau.phi;
    const HarrisHauReport report = evaluate_harris_hau(in);

    std::ostringstream os;
    os << "eta = " << fmt(report.eta) << "\n"
       << "r = " << fmt(report.r) << "\n"
       << "zeta = " << fmt(report.zeta) << "\n"
       << "n_photons = " << fmt(n_photons) << (derived_photons ? "  # derived from [driving]" : "") << "\n"
       << "probe_duration_us = " << fmt(probe_duration_us) << "\n"
       << "delay_us = " << fmt(eit_delay_time(in.alpha, in.gamma31, in.omega_c, consts) * 1e6) << "\n"
       << "config = " << config_hash(config) << "\n";
    out << os.str();
    if (!opts.out_path.empty()) write_text_file(opts.out_path, os.str());
    return 0;
}

int cmd_reproduce_figure(const CommandOptions& opts, std::ostream& out) {
    if (opts.figure.empty()) {
        throw config_error("reproduce-figure requires --figure (fig2, fig3a, fig3b, fig4 or fig5)");
    }
    const std::string dir = opts.out_path.empty() ? std::string("figures") : opts.out_path;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());

    const PhysicalConstants consts;
    ExperimentConfig base;
    base.params.omega_c = 0.32;
    base.params.delta = 13.0;
    base.params.gamma31 = 1.25;
    base.params.gamma41 = 1.25;
    base.params.alpha = 42.0;
    base.probe = PulseConfig{"square", 0.074, 50.0, 0.5, 0.0};
    base.driving = PulseConfig{"square", 0.35, 70.0, 0.5, 0.0};
    base.output.stride = 20;

    std::vector<std::string> written;
    auto emit = [&](const std::string& name) {
        written.push_back((std::filesystem::path(dir) / name).string());
        return written.back();
    };

    if (opts.figure == "fig2") {
        const std::vector<std::pair<double, std::string>> dephasings = {
            {2e-4, "2e-04"}, {9e-4, "9e-04"}, {1.6e-3, "1.6e-03"}};
        const std::vector<double> omegas = linspace(0.0, 1.0, 26);
        for (const auto& [gamma21, label] : dephasings) {
            ExperimentConfig cfg = base;
            cfg.params.gamma21 = gamma21;
            const auto records = run_pde_sweep(cfg, "driving.peak_rabi", omegas, opts.serial,
                                               opts.grid_scale, consts);
            write_pde_sweep_csv(emit("fig2_gamma21_" + label + ".csv"), "driving.peak_rabi", records,
                                config_hash(cfg), {{"figure", "fig2"}, {"gamma21", fmt(gamma21)}});
        }
    } else if (opts.figure == "fig3a" || opts.figure == "fig3b") {
        ExperimentConfig cfg = base;
        if (opts.figure == "fig3a") {
            cfg.params.alpha = 40.0;
            cfg.params.gamma21 = 1e-3;
            cfg.driving.peak_rabi = 0.37;
        } else {
            cfg.params.alpha = 42.0;
            cfg.params.gamma21 = 1.5e-3;
            cfg.driving.peak_rabi = 0.67;
        }
        const PropagationResult r = run_configured(cfg, opts.grid_scale, consts, "reproduce-figure");
        write_envelope_csv(emit(opts.figure + "_envelope.csv"), r, cfg.output.stride, consts,
                           {{"figure", opts.figure}, {"config", config_hash(cfg)}});
    } else if (opts.figure == "fig4") {
        ExperimentConfig cfg = base;
        cfg.params.alpha = 36.0;
        cfg.params.gamma21 = 6e-4;
        cfg.driving.peak_rabi = 0.35;
        const auto records = run_pde_sweep(cfg, "params.delta", linspace(0.0, 20.0, 41), opts.serial,
                                           opts.grid_scale, consts);
        write_pde_sweep_csv(emit("fig4_delta_sweep.csv"), "params.delta", records, config_hash(cfg),
                            {{"figure", "fig4"}});
    } else if (opts.figure == "fig5") {
        for (const auto& [gamma31, label] :
             std::vector<std::pair<double, std::string>>{{1.0, "1.00"}, {1.25, "1.25"}}) {
            ExperimentConfig cfg = base;
            cfg.params.alpha = 500.0;
            cfg.params.gamma31 = gamma31;
            cfg.params.gamma41 = gamma31;
            cfg.driving.peak_rabi = 0.32;
            write_analytic_sweep_csv(emit("fig5_gamma31_" + label + ".csv"), "params.delta", cfg,
                                     linspace(0.0, 150.0, 1501), config_hash(cfg),
                                     {{"figure", "fig5"}, {"gamma31", fmt(gamma31)}});
        }
    } else {
        throw config_error("unknown figure '" + opts.figure + "'; expected fig2, fig3a, fig3b, fig4 or fig5");
    }

    for (const std::string& path : written) out << "wrote " << path << "\n";
    return 0;
}

int cmd_convert_units(const ConvertOptions& opts, std::ostream& out) {
    if (opts.rabi.has_value() == opts.intensity.has_value()) {
        throw config_error("convert-units needs exactly one of --rabi or --intensity");
    }
    const PhysicalConstants consts;
    double rabi = 0.0;
    double intensity = 0.0;
    if (opts.rabi) {
        rabi = *opts.rabi;
        intensity = rabi_to_intensity(rabi, consts);
    } else {
        intensity = *opts.intensity;
        rabi = intensity_to_rabi(intensity, consts);
    }
    out << "rabi = " << fmt(rabi) << "\n"
        << "intensity_mw_cm2 = " << fmt(intensity) << "\n";
    if (opts.duration_us) {
        if (!(*opts.duration_us > 0.0)) throw config_error("convert-units --duration-us must be positive");
        out << "duration_us = " << fmt(*opts.duration_us) << "\n"
            << "photons_per_cross_section = "
            << fmt(photons_per_atomic_cross_section(intensity, *opts.duration_us * 1e-6, consts)) << "\n";
    }
    return 0;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const config_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace fwm::cli

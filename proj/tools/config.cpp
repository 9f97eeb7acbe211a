#include "config.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fwm/errors.hpp"
#include "fwm/fitting.hpp"

namespace fwm::cli {

namespace {

const std::set<std::string> kSections = {"params", "probe",       "driving", "coupling",
                                         "grid",   "sweep",       "fit",     "harris_hau",
                                         "output"};

const std::set<std::string> kSweepParameters = {"driving.peak_rabi", "probe.peak_rabi",
                                                "params.delta",      "params.gamma21",
                                                "params.omega_c",    "params.alpha"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& message) {
    throw config_error("config line " + std::to_string(line_no) + ": " + message);
}

double parse_double(const std::string& value, std::size_t line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        if (!std::isfinite(v)) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(line_no, "cannot parse number '" + value + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& value, std::size_t line_no, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        if (v < INT_MIN || v > INT_MAX) throw std::out_of_range(value);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        fail(line_no, "cannot parse integer '" + value + "' for key '" + key + "'");
    }
}

bool assign_pulse_key(PulseConfig& pulse, const std::string& key, const std::string& value,
                      std::size_t line_no) {
    if (key == "shape") {
        if (value != "square" && value != "square_smooth" && value != "gaussian") {
            fail(line_no, "shape must be 'square' or 'gaussian', got '" + value + "'");
        }
        pulse.shape = value;
    } else if (key == "peak_rabi") {
        pulse.peak_rabi = parse_double(value, line_no, key);
    } else if (key == "duration_us") {
        pulse.duration_us = parse_double(value, line_no, key);
    } else if (key == "edge_us") {
        pulse.edge_us = parse_double(value, line_no, key);
    } else if (key == "start_us") {
        pulse.start_us = parse_double(value, line_no, key);
    } else {
        return false;
    }
    return true;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void serialize_pulse(std::ostream& os, const char* name, const PulseConfig& pulse) {
    os << '[' << name << "]\n"
       << "shape = " << pulse.shape << '\n'
       << "peak_rabi = " << fmt(pulse.peak_rabi) << '\n'
       << "duration_us = " << fmt(pulse.duration_us) << '\n'
       << "edge_us = " << fmt(pulse.edge_us) << '\n'
       << "start_us = " << fmt(pulse.start_us) << "\n\n";
}

} // namespace

ExperimentConfig load_config(std::istream& is) {
    ExperimentConfig config;
    std::string section;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;
    bool have_omega_c = false;
    bool have_alpha = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kSections.count(section)) fail(line_no, "unknown section [" + section + "]");
            if (!seen_sections.insert(section).second) fail(line_no, "duplicate section [" + section + "]");
            if (section == "coupling") config.coupling.emplace();
            if (section == "sweep") config.sweep.present = true;
            if (section == "fit") config.fit.present = true;
            if (section == "harris_hau") config.harris_hau.present = true;
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
        if (section.empty()) fail(line_no, "key '" + key + "' appears before any [section]");
        if (!seen_keys.insert(section + "." + key).second) {
            fail(line_no, "duplicate key '" + key + "' in [" + section + "]");
        }

        if (section == "params") {
            if (key == "omega_c") {
                config.params.omega_c = parse_double(value, line_no, key);
                have_omega_c = true;
            } else if (key == "delta") {
                config.params.delta = parse_double(value, line_no, key);
            } else if (key == "gamma21") {
                config.params.gamma21 = parse_double(value, line_no, key);
            } else if (key == "gamma31") {
                config.params.gamma31 = parse_double(value, line_no, key);
            } else if (key == "gamma41") {
                config.params.gamma41 = parse_double(value, line_no, key);
            } else if (key == "alpha") {
                config.params.alpha = parse_double(value, line_no, key);
                have_alpha = true;
            } else {
                fail(line_no, "unknown key '" + key + "' in [params]");
            }
        } else if (section == "probe") {
            if (!assign_pulse_key(config.probe, key, value, line_no)) {
                fail(line_no, "unknown key '" + key + "' in [probe]");
            }
        } else if (section == "driving") {
            if (!assign_pulse_key(config.driving, key, value, line_no)) {
                fail(line_no, "unknown key '" + key + "' in [driving]");
            }
        } else if (section == "coupling") {
            if (!assign_pulse_key(*config.coupling, key, value, line_no)) {
                fail(line_no, "unknown key '" + key + "' in [coupling]");
            }
        } else if (section == "grid") {
            if (key == "n_z") {
                config.grid.n_z = parse_int(value, line_no, key);
            } else if (key == "dt") {
                config.grid.dt = parse_double(value, line_no, key);
            } else if (key == "t_max_us") {
                config.grid.t_max_us = parse_double(value, line_no, key);
            } else {
                fail(line_no, "unknown key '" + key + "' in [grid]");
            }
        } else if (section == "sweep") {
            if (key == "parameter") {
                if (!kSweepParameters.count(value)) {
                    fail(line_no, "unknown sweep parameter '" + value + "'");
                }
                config.sweep.parameter = value;
            } else if (key == "from") {
                config.sweep.from = parse_double(value, line_no, key);
            } else if (key == "to") {
                config.sweep.to = parse_double(value, line_no, key);
            } else if (key == "count") {
                config.sweep.count = parse_int(value, line_no, key);
            } else {
                fail(line_no, "unknown key '" + key + "' in [sweep]");
            }
        } else if (section == "fit") {
            if (key == "omega_d_min") {
                config.fit.omega_d_min = parse_double(value, line_no, key);
            } else if (key == "omega_d_max") {
                config.fit.omega_d_max = parse_double(value, line_no, key);
            } else if (key == "gamma21_min") {
                config.fit.gamma21_min = parse_double(value, line_no, key);
            } else if (key == "gamma21_max") {
                config.fit.gamma21_max = parse_double(value, line_no, key);
            } else if (key == "max_evals") {
                config.fit.max_evals = parse_int(value, line_no, key);
            } else if (key == "trace_power_scale") {
                config.fit.trace_power_scale = parse_double(value, line_no, key);
            } else {
                fail(line_no, "unknown key '" + key + "' in [fit]");
            }
        } else if (section == "harris_hau") {
            if (key == "n_photons") {
                config.harris_hau.n_photons = parse_double(value, line_no, key);
            } else if (key == "sigma_ratio") {
                config.harris_hau.sigma_ratio = parse_double(value, line_no, key);
            } else if (key == "phi") {
                config.harris_hau.phi = parse_double(value, line_no, key);
            } else if (key == "probe_duration_us") {
                config.harris_hau.probe_duration_us = parse_double(value, line_no, key);
            } else {
                fail(line_no, "unknown key '" + key + "' in [harris_hau]");
            }
        } else if (section == "output") {
            if (key == "stride") {
                config.output.stride = parse_int(value, line_no, key);
                if (config.output.stride < 1) fail(line_no, "stride must be at least 1");
            } else {
                fail(line_no, "unknown key '" + key + "' in [output]");
            }
        }
    }

    if (!seen_sections.count("params")) throw config_error("config: missing [params] section");
    if (!have_omega_c) throw config_error("config: [params] must set omega_c");
    if (!have_alpha) throw config_error("config: [params] must set alpha");
    if (config.sweep.present) {
        if (config.sweep.parameter.empty()) throw config_error("config: [sweep] must set parameter");
        if (config.sweep.count < 2) throw config_error("config: [sweep] count must be at least 2");
        if (!std::isfinite(config.sweep.from) || !std::isfinite(config.sweep.to)) {
            throw config_error("config: [sweep] range must be finite");
        }
    }
    if (config.fit.present) {
        if (config.fit.max_evals < 1) throw config_error("config: [fit] max_evals must be positive");
        ParameterBox box{config.fit.omega_d_min, config.fit.omega_d_max, config.fit.gamma21_min,
                         config.fit.gamma21_max};
        try {
            box.validate();
        } catch (const std::domain_error& e) {
            throw config_error(std::string("config: [fit] ") + e.what());
        }
    }
    try {
        config.params.validate();
    } catch (const std::domain_error& e) {
        throw config_error(std::string("config: [params] ") + e.what());
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("config: cannot open '" + path + "'");
    return load_config(in);
}

std::string serialize(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "[params]\n"
       << "omega_c = " << fmt(config.params.omega_c) << '\n'
       << "delta = " << fmt(config.params.delta) << '\n'
       << "gamma21 = " << fmt(config.params.gamma21) << '\n'
       << "gamma31 = " << fmt(config.params.gamma31) << '\n'
       << "gamma41 = " << fmt(config.params.gamma41) << '\n'
       << "alpha = " << fmt(config.params.alpha) << "\n\n";
    serialize_pulse(os, "probe", config.probe);
    serialize_pulse(os, "driving", config.driving);
    if (config.coupling) serialize_pulse(os, "coupling", *config.coupling);
    os << "[grid]\n"
       << "n_z = " << config.grid.n_z << '\n'
       << "dt = " << fmt(config.grid.dt) << '\n'
       << "t_max_us = " << fmt(config.grid.t_max_us) << "\n\n";
    if (config.sweep.present) {
        os << "[sweep]\n"
           << "parameter = " << config.sweep.parameter << '\n'
           << "from = " << fmt(config.sweep.from) << '\n'
           << "to = " << fmt(config.sweep.to) << '\n'
           << "count = " << config.sweep.count << "\n\n";
    }
    if (config.fit.present) {
        os << "[fit]\n"
           << "omega_d_min = " << fmt(config.fit.omega_d_min) << '\n'
           << "omega_d_max = " << fmt(config.fit.omega_d_max) << '\n'
           << "gamma21_min = " << fmt(config.fit.gamma21_min) << '\n'
           << "gamma21_max = " << fmt(config.fit.gamma21_max) << '\n'
           << "max_evals = " << config.fit.max_evals << '\n'
           << "trace_power_scale = " << fmt(config.fit.trace_power_scale) << "\n\n";
    }
    if (config.harris_hau.present) {
        os << "[harris_hau]\n"
           << "n_photons = " << fmt(config.harris_hau.n_photons) << '\n'
           << "sigma_ratio = " << fmt(config.harris_hau.sigma_ratio) << '\n'
           << "phi = " << fmt(config.harris_hau.phi) << '\n'
           << "probe_duration_us = " << fmt(config.harris_hau.probe_duration_us) << "\n\n";
    }
    os << "[output]\n"
       << "stride = " << config.output.stride << '\n';
    return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
    const std::string text = serialize(config);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PulseSpec to_pulse_spec(const PulseConfig& pulse, const PhysicalConstants& consts) {
    const double per_us = 1.0 / consts.us_per_gamma_time();
    PulseSpec spec;
    spec.shape = pulse_shape_from_string(pulse.shape);
    spec.peak_rabi = pulse.peak_rabi;
    spec.duration = pulse.duration_us * per_us;
    spec.edge_time = spec.shape == PulseShape::gaussian ? 0.0 : pulse.edge_us * per_us;
    spec.start_time = pulse.start_us * per_us;
    spec.validate();
    return spec;
}

PropagationGrid resolved_grid(const ExperimentConfig& config, double grid_scale,
                              const PhysicalConstants& consts) {
    if (!(grid_scale > 0.0) || !std::isfinite(grid_scale)) {
        throw std::domain_error("resolved_grid: grid scale must be positive and finite");
    }
    PropagationGrid grid;
    grid.n_z = std::max(2, static_cast<int>(std::ceil(config.grid.n_z * grid_scale)));
    grid.dt = config.grid.dt / grid_scale;
    const double us = consts.us_per_gamma_time();
    if (config.grid.t_max_us > 0.0) {
        grid.t_max = config.grid.t_max_us / us;
        return grid;
    }
    double latest_end = 0.0;
    auto consider = [&](const PulseConfig& pulse, bool always) {
        if (pulse.duration_us <= 0.0) return;
        if (!always && !(pulse.peak_rabi > 0.0)) return;
        latest_end = std::max(latest_end, to_pulse_spec(pulse, consts).end_time());
    };
    consider(config.probe, true);
    consider(config.driving, false);
    if (config.coupling) consider(*config.coupling, false);
    const double omega_c = config.coupling ? config.coupling->peak_rabi : config.params.omega_c;
    const double delay = (omega_c > 0.0 && config.params.alpha > 0.0)
                             ? eit_delay_gamma_units(config.params.alpha, config.params.gamma31, omega_c)
                             : 0.0;
    grid.t_max = latest_end + 2.0 * delay + 300.0;
    return grid;
}

void apply_sweep_value(ExperimentConfig& config, const std::string& parameter, double value) {
    if (parameter == "driving.peak_rabi") {
        config.driving.peak_rabi = value;
    } else if (parameter == "probe.peak_rabi") {
        config.probe.peak_rabi = value;
    } else if (parameter == "params.delta") {
        config.params.delta = value;
    } else if (parameter == "params.gamma21") {
        config.params.gamma21 = value;
    } else if (parameter == "params.omega_c") {
        config.params.omega_c = value;
    } else if (parameter == "params.alpha") {
        config.params.alpha = value;
    } else {
        throw config_error("apply_sweep_value: unknown parameter '" + parameter + "'");
    }
}

} // namespace fwm::cli

#ifndef FWM_TOOLS_CONFIG_HPP
#define FWM_TOOLS_CONFIG_HPP

// INI-style experiment description shared by all CLI subcommands. Rates and
// Rabi frequencies are in Gamma units; pulse times and t_max are in
// microseconds; the integrator step dt is in 1/Gamma. Parsing is strict:
// unknown sections or keys, duplicate keys and malformed numbers are
// config_error with the offending line number.

#include <iosfwd>
#include <optional>
#include <string>

#include "fwm/bloch.hpp"
#include "fwm/propagation.hpp"
#include "fwm/pulse.hpp"
#include "fwm/units.hpp"

namespace fwm::cli {

struct PulseConfig {
    std::string shape = "square";   // square | gaussian
    double peak_rabi = 0.0;         // Gamma units
    double duration_us = 0.0;
    double edge_us = 0.5;           // 10-90% edge time (square only)
    double start_us = 0.0;
};

struct GridConfig {
    int n_z = 200;
    double dt = 0.05;        // 1/Gamma
    double t_max_us = 0.0;   // <= 0: derived from the pulses plus twice the EIT delay
};

struct SweepConfig {
    bool present = false;
    std::string parameter;   // driving.peak_rabi | probe.peak_rabi | params.{delta,gamma21,omega_c,alpha}
    double from = 0.0;
    double to = 0.0;
    int count = 0;
};

struct FitRangeConfig {
    bool present = false;
    double omega_d_min = 0.0;
    double omega_d_max = 0.0;
    double gamma21_min = 1e-6;
    double gamma21_max = 1e-6;
    int max_evals = 200;
    double trace_power_scale = 1.0;
};

struct HarrisHauConfig {
    bool present = false;
    double n_photons = -1.0;          // < 0: derived from the driving pulse
    double sigma_ratio = 2.0 / 9.0;   // sigma_24 / A
    double phi = 4.5e-3;
    double probe_duration_us = -1.0;  // < 0: probe pulse duration
};

struct OutputConfig {
    int stride = 1;
};

struct ExperimentConfig {
    SystemParams params;
    PulseConfig probe;
    PulseConfig driving;
    std::optional<PulseConfig> coupling;   // absent: CW coupling at params.omega_c
    GridConfig grid;
    SweepConfig sweep;
    FitRangeConfig fit;
    HarrisHauConfig harris_hau;
    OutputConfig output;
};

ExperimentConfig load_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

// Canonical text form: fixed section and key order, %.17g numbers. Parsing
// the serialization reproduces the configuration exactly.
std::string serialize(const ExperimentConfig& config);

// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

// Microsecond fields converted to Gamma units. Throws std::domain_error via
// PulseSpec::validate on inconsistent pulse values.
PulseSpec to_pulse_spec(const PulseConfig& pulse, const PhysicalConstants& consts = {});

// Grid with grid_scale applied (dt / scale, n_z * scale) and t_max resolved:
// explicit t_max_us when positive, otherwise the latest pulse end plus twice
// the EIT delay plus a settle margin.
PropagationGrid resolved_grid(const ExperimentConfig& config, double grid_scale = 1.0,
                              const PhysicalConstants& consts = {});

// Overwrites the swept quantity on a copy of the configuration.
void apply_sweep_value(ExperimentConfig& config, const std::string& parameter, double value);

} // namespace fwm::cli

#endif

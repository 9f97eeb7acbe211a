#ifndef FWM_PROPAGATION_HPP
#define FWM_PROPAGATION_HPP

// Pulsed propagation of the probe and generated signal envelopes through the
// medium. In the retarded-time frame (the 1/c transport term is dropped; the
// transit time of a mm-scale cold cloud is four orders of magnitude below the
// pulse timescales) and with position normalized to the medium length, the
// field equations reduce to
//
//   d Omega_p / dz = i (alpha gamma31 / 2) rho31(z, t)
//   d Omega_s / dz = i (alpha gamma41 / 2) rho41(z, t)
//
// driven by the slice coherences of the Bloch system. The marching scheme is
// midpoint (second order) in z; at each slice the Bloch subsystem is advanced
// over the whole time grid by classical RK4 with fields interpolated linearly
// at the half steps. The signal enters the medium identically zero.

#include <complex>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "fwm/bloch.hpp"
#include "fwm/pulse.hpp"
#include "fwm/units.hpp"

namespace fwm {

struct PropagationGrid {
    int n_z = 200;        // position slices across the medium
    double dt = 0.05;     // time step, 1/Gamma
    double t_max = 0.0;   // simulated window [0, t_max], 1/Gamma

    void validate() const;  // throws std::domain_error
};

// One field envelope sampled on the uniform retarded-time grid t_k = k dt.
struct FieldEnvelope {
    std::vector<cplx> samples;
    double dt = 0.0;

    double energy() const;       // trapezoidal integral of |samples|^2
    double peak_power() const;   // max |samples|^2
    double centroid() const;     // energy-weighted mean time, 1/Gamma
};

struct PropagationResult {
    FieldEnvelope probe_out;
    FieldEnvelope signal_out;
    FieldEnvelope probe_in;
    double energy_transmission_probe = 0.0;
    double conversion_efficiency = 0.0;   // signal-out energy / probe-in energy
    double probe_delay = 0.0;             // output minus input centroid, 1/Gamma
    // Steady-window mean power ratios (probe, signal), present when the pulses
    // leave a usable flat window after transients and slow-light delay.
    std::optional<std::pair<double, double>> plateau_transmissions;

    // Run description, kept for exports.
    SystemParams params;
    PulseSpec probe_pulse;
    PulseSpec driving_pulse;
    std::optional<PulseSpec> coupling_pulse;
    PropagationGrid grid;
};

// Integrates the coupled Maxwell-Bloch system. The coupling field is constant
// at params.omega_c unless a coupling pulse is supplied. Throws config_error
// when the grid violates the documented stability bounds (dt from
// max_stable_dt; n_z >= alpha/2 for the z march) or fails to cover the
// driving pulse plus twice the EIT delay, and numeric_error if a field
// sample turns non-finite during the march.
PropagationResult propagate(const PulseSpec& probe, const PulseSpec& driving,
                            const SystemParams& params, const PropagationGrid& grid,
                            const std::optional<PulseSpec>& coupling = std::nullopt);

// Pulse-energy conversion efficiency of a completed run. Throws
// std::domain_error when the incident probe carries no energy.
double conversion_efficiency(const PropagationResult& result);

// Slow-light delay as the difference of energy-weighted centroids.
double probe_delay(const PropagationResult& result);

// CSV export: columns time_us, probe_in_norm, probe_out_norm, signal_out_norm
// with powers normalized to the incident probe peak. '#'-prefixed header
// lines carry the full parameter set as key = value pairs; extra_comments are
// appended verbatim to the header. stride > 1 decimates rows.
void write_envelope_csv(std::ostream& os, const PropagationResult& result, int stride = 1,
                        const PhysicalConstants& consts = {},
                        const std::vector<std::pair<std::string, std::string>>& extra_comments = {});
void write_envelope_csv(const std::string& path, const PropagationResult& result, int stride = 1,
                        const PhysicalConstants& consts = {},
                        const std::vector<std::pair<std::string, std::string>>& extra_comments = {});

} // namespace fwm

#endif

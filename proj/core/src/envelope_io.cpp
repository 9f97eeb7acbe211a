#include "fwm/propagation.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fwm/errors.hpp"
#include "fwm/version.hpp"

namespace fwm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_kv(std::ostream& os, const std::string& key, const std::string& value) {
    os << "# " << key << " = " << value << "\n";
}

void write_pulse(std::ostream& os, const std::string& prefix, const PulseSpec& pulse,
                 double us_per_time) {
    write_kv(os, prefix + ".shape", to_string(pulse.shape));
    write_kv(os, prefix + ".peak_rabi", fmt(pulse.peak_rabi));
    write_kv(os, prefix + ".duration_us", fmt(pulse.duration * us_per_time));
    write_kv(os, prefix + ".edge_us", fmt(pulse.edge_time * us_per_time));
    write_kv(os, prefix + ".start_us", fmt(pulse.start_time * us_per_time));
}

} // namespace

void write_envelope_csv(std::ostream& os, const PropagationResult& result, int stride,
                        const PhysicalConstants& consts,
                        const std::vector<std::pair<std::string, std::string>>& extra_comments) {
    if (stride < 1) throw std::domain_error("write_envelope_csv: stride must be at least 1");
    const std::size_t n = result.probe_in.samples.size();
    if (n == 0 || result.probe_out.samples.size() != n || result.signal_out.samples.size() != n) {
        throw std::domain_error("write_envelope_csv: result envelopes are empty or mismatched");
    }
    const double peak = result.probe_in.peak_power();
    if (!(peak > 0.0)) throw std::domain_error("write_envelope_csv: incident probe has no power to normalize by");

    const double us = consts.us_per_gamma_time();
    write_kv(os, "generator", std::string("fwm ") + kVersion);
    write_kv(os, "omega_c", fmt(result.params.omega_c));
    write_kv(os, "delta", fmt(result.params.delta));
    write_kv(os, "gamma21", fmt(result.params.gamma21));
    write_kv(os, "gamma31", fmt(result.params.gamma31));
    write_kv(os, "gamma41", fmt(result.params.gamma41));
    write_kv(os, "alpha", fmt(result.params.alpha));
    write_pulse(os, "probe", result.probe_pulse, us);
    write_pulse(os, "driving", result.driving_pulse, us);
    if (result.coupling_pulse) {
        write_pulse(os, "coupling", *result.coupling_pulse, us);
    }
    write_kv(os, "grid.n_z", std::to_string(result.grid.n_z));
    write_kv(os, "grid.dt", fmt(result.grid.dt));
    write_kv(os, "grid.t_max_us", fmt(result.grid.t_max * us));
    write_kv(os, "energy_transmission_probe", fmt(result.energy_transmission_probe));
    write_kv(os, "conversion_efficiency", fmt(result.conversion_efficiency));
    write_kv(os, "probe_delay_us", fmt(result.probe_delay * us));
    if (result.plateau_transmissions) {
        write_kv(os, "plateau_probe_transmission", fmt(result.plateau_transmissions->first));
        write_kv(os, "plateau_signal_efficiency", fmt(result.plateau_transmissions->second));
    }
    for (const auto& [key, value] : extra_comments) write_kv(os, key, value);

    os << "time_us,probe_in_norm,probe_out_norm,signal_out_norm\n";
    const double dt = result.probe_in.dt;
    for (std::size_t k = 0; k < n; k += static_cast<std::size_t>(stride)) {
        os << fmt(static_cast<double>(k) * dt * us) << ','
           << fmt(std::norm(result.probe_in.samples[k]) / peak) << ','
           << fmt(std::norm(result.probe_out.samples[k]) / peak) << ','
           << fmt(std::norm(result.signal_out.samples[k]) / peak) << '\n';
    }
    if (!os) throw io_error("write_envelope_csv: stream write failed");
}

void write_envelope_csv(const std::string& path, const PropagationResult& result, int stride,
                        const PhysicalConstants& consts,
                        const std::vector<std::pair<std::string, std::string>>& extra_comments) {
    std::ofstream out(path);
    if (!out) throw io_error("write_envelope_csv: cannot open '" + path + "' for writing");
    write_envelope_csv(out, result, stride, consts, extra_comments);
    if (!out) throw io_error("write_envelope_csv: write to '" + path + "' failed");
}

} // namespace fwm

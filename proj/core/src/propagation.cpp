#include "fwm/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "fwm/errors.hpp"

namespace fwm {

void PropagationGrid::validate() const {
    if (!(n_z >= 2)) throw std::domain_error("PropagationGrid: n_z must be at least 2");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::domain_error("PropagationGrid: dt must be positive and finite");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::domain_error("PropagationGrid: t_max must be positive and finite");
}

double FieldEnvelope::energy() const {
    if (samples.size() < 2) return 0.0;
    double sum = 0.0;
    for (const cplx& s : samples) sum += std::norm(s);
    sum -= 0.5 * (std::norm(samples.front()) + std::norm(samples.back()));
    return sum * dt;
}

double FieldEnvelope::peak_power() const {
    double peak = 0.0;
    for (const cplx& s : samples) peak = std::max(peak, std::norm(s));
    return peak;
}

double FieldEnvelope::centroid() const {
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        double w = std::norm(samples[k]);
        if (k == 0 || k + 1 == samples.size()) w *= 0.5;
        sum += w;
        weighted += w * static_cast<double>(k) * dt;
    }
    if (!(sum > 0.0)) throw std::domain_error("FieldEnvelope::centroid: envelope carries no energy");
    return weighted / sum;
}

namespace {

std::size_t n_time_samples(const PropagationGrid& grid) {
    return static_cast<std::size_t>(std::floor(grid.t_max / grid.dt + 1e-9)) + 1;
}

// Advance the slice coherences over the whole time grid from a dark initial
// state, recording rho31 and rho41 at every sample. Stage fields at half
// steps are linear interpolants, which keeps the update second order in the
// field history and fourth order for fields constant over a step.
void integrate_slice(const std::vector<cplx>& probe, const std::vector<cplx>& signal,
                     const std::vector<cplx>& coupling, const std::vector<cplx>& driving,
                     const SystemParams& p, double dt,
                     std::vector<cplx>& rho31, std::vector<cplx>& rho41) {
    const std::size_t n = probe.size();
    CoherenceState s{};
    rho31[0] = s.rho31;
    rho41[0] = s.rho41;
    DriveFields f0{probe[0], signal[0], coupling[0], driving[0]};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const DriveFields f1{probe[k + 1], signal[k + 1], coupling[k + 1], driving[k + 1]};
        const DriveFields fh{0.5 * (f0.probe + f1.probe), 0.5 * (f0.signal + f1.signal),
                             0.5 * (f0.coupling + f1.coupling), 0.5 * (f0.driving + f1.driving)};
        s = detail::rk4_step(s, f0, fh, f1, p, dt);
        rho31[k + 1] = s.rho31;
        rho41[k + 1] = s.rho41;
        f0 = f1;
    }
}

struct FlatWindow {
    double begin = 0.0;
    double end = 0.0;
};

// Flat interval of a pulse, or nullopt when the pulse has none (gaussian, or
// edges that consume the whole top).
std::optional<FlatWindow> flat_window(const PulseSpec& pulse) {
    if (pulse.shape != PulseShape::square_smooth) return std::nullopt;
    const double b = pulse.flat_begin();
    const double e = pulse.flat_end();
    if (!(e > b)) return std::nullopt;
    return FlatWindow{b, e};
}

std::optional<std::pair<double, double>> plateau_ratios(
    const std::vector<cplx>& probe_out, const std::vector<cplx>& signal_out,
    const PulseSpec& probe, const PulseSpec& driving,
    const std::optional<PulseSpec>& coupling, const SystemParams& params,
    const PropagationGrid& grid, double delay) {
    double begin = 0.0;
    double end = grid.t_max;

    const auto probe_flat = flat_window(probe);
    if (!probe_flat) return std::nullopt;
    begin = std::max(begin, probe_flat->begin);
    end = std::min(end, probe_flat->end);

    if (driving.peak_rabi > 0.0) {
        const auto driving_flat = flat_window(driving);
        if (!driving_flat) return std::nullopt;
        begin = std::max(begin, driving_flat->begin);
        end = std::min(end, driving_flat->end);
    }
    if (coupling) {
        const auto coupling_flat = flat_window(*coupling);
        if (!coupling_flat) return std::nullopt;
        begin = std::max(begin, coupling_flat->begin);
        end = std::min(end, coupling_flat->end);
    }

    // Let the slow-light transient clear: two delay times plus a fixed settle
    // margin after every input has reached its flat top.
    begin += 2.0 * delay + 200.0;
    if (!(end - begin >= 50.0)) return std::nullopt;

    const std::size_t k0 = static_cast<std::size_t>(std::ceil(begin / grid.dt));
    const std::size_t k1 = std::min(static_cast<std::size_t>(std::floor(end / grid.dt)),
                                    probe_out.size() - 1);
    if (k1 < k0 + 8) return std::nullopt;

    double probe_mean = 0.0;
    double signal_mean = 0.0;
    for (std::size_t k = k0; k <= k1; ++k) {
        probe_mean += std::norm(probe_out[k]);
        signal_mean += std::norm(signal_out[k]);
    }
    const double n = static_cast<double>(k1 - k0 + 1);
    const double peak = probe.peak_rabi * probe.peak_rabi;
    return std::make_pair(probe_mean / (n * peak), signal_mean / (n * peak));
}

} // namespace

PropagationResult propagate(const PulseSpec& probe, const PulseSpec& driving,
                            const SystemParams& params, const PropagationGrid& grid,
                            const std::optional<PulseSpec>& coupling) {
    params.validate();
    grid.validate();
    probe.validate();
    driving.validate();
    if (coupling) coupling->validate();
    if (!(probe.peak_rabi > 0.0)) throw std::domain_error("propagate: probe pulse must carry power");

    const double peak_coupling = coupling ? coupling->peak_rabi : params.omega_c;
    const double peak_driving = driving.peak_rabi;
    const double dt_bound = max_stable_dt(params, peak_coupling, peak_driving);
    if (grid.dt > dt_bound) {
        throw config_error("propagate: dt = " + std::to_string(grid.dt) +
                           " exceeds the stability bound " + std::to_string(dt_bound) +
                           " for these parameters; reduce dt");
    }
    const double min_nz = std::max(2.0, 0.5 * params.alpha);
    if (static_cast<double>(grid.n_z) < min_nz) {
        throw config_error("propagate: n_z = " + std::to_string(grid.n_z) +
                           " is too coarse for optical depth " + std::to_string(params.alpha) +
                           "; need n_z >= " + std::to_string(static_cast<int>(std::ceil(min_nz))));
    }

    const double delay = (peak_coupling > 0.0 && params.alpha > 0.0)
                             ? eit_delay_gamma_units(params.alpha, params.gamma31, peak_coupling)
                             : 0.0;
    const double latest_start =
        std::max({probe.start_time, driving.peak_rabi > 0.0 ? driving.start_time : 0.0,
                  coupling ? coupling->start_time : 0.0});
    if (grid.t_max < latest_start + delay + 100.0) {
        throw config_error("propagate: t_max = " + std::to_string(grid.t_max) +
                           " ends before the medium can respond; need at least " +
                           std::to_string(latest_start + delay + 100.0) +
                           " to cover the pulse starts plus one EIT delay");
    }

    const std::size_t n_t = n_time_samples(grid);
    if (n_t < 16) throw config_error("propagate: time grid has fewer than 16 samples");

    std::vector<cplx> probe_f(n_t), signal_f(n_t, cplx{}), coupling_f(n_t), driving_f(n_t);
    for (std::size_t k = 0; k < n_t; ++k) {
        const double t = static_cast<double>(k) * grid.dt;
        probe_f[k] = probe.amplitude(t);
        driving_f[k] = driving.amplitude(t);
        coupling_f[k] = coupling ? coupling->amplitude(t) : cplx(params.omega_c, 0.0);
    }
    const std::vector<cplx> probe_in = probe_f;

    std::vector<cplx> probe_h(n_t), signal_h(n_t);
    std::vector<cplx> rho31(n_t), rho41(n_t);

    const double dz = 1.0 / static_cast<double>(grid.n_z);
    const cplx cp(0.0, 0.5 * params.alpha * params.gamma31);
    const cplx cs(0.0, 0.5 * params.alpha * params.gamma41);
    const double blowup = 1e6 * probe.peak_rabi * probe.peak_rabi;

    for (int j = 0; j < grid.n_z; ++j) {
        integrate_slice(probe_f, signal_f, coupling_f, driving_f, params, grid.dt, rho31, rho41);
        for (std::size_t k = 0; k < n_t; ++k) {
            probe_h[k] = probe_f[k] + (0.5 * dz) * cp * rho31[k];
            signal_h[k] = signal_f[k] + (0.5 * dz) * cs * rho41[k];
        }
        integrate_slice(probe_h, signal_h, coupling_f, driving_f, params, grid.dt, rho31, rho41);
        double max_norm = 0.0;
        for (std::size_t k = 0; k < n_t; ++k) {
            probe_f[k] += dz * cp * rho31[k];
            signal_f[k] += dz * cs * rho41[k];
            max_norm = std::max(max_norm, std::norm(probe_f[k]) + std::norm(signal_f[k]));
        }
        if (!std::isfinite(max_norm) || max_norm > blowup) {
            throw numeric_error("propagate: field envelope diverged at slice " + std::to_string(j + 1) +
                                " of " + std::to_string(grid.n_z) + "; refine the grid");
        }
    }

    PropagationResult result;
    result.probe_in = FieldEnvelope{std::move(probe_in), grid.dt};
    result.probe_out = FieldEnvelope{std::move(probe_f), grid.dt};
    result.signal_out = FieldEnvelope{std::move(signal_f), grid.dt};
    result.params = params;
    result.probe_pulse = probe;
    result.driving_pulse = driving;
    result.coupling_pulse = coupling;
    result.grid = grid;

    const double e_in = result.probe_in.energy();
    result.energy_transmission_probe = result.probe_out.energy() / e_in;
    result.conversion_efficiency = result.signal_out.energy() / e_in;
    result.probe_delay = result.probe_out.centroid() - result.probe_in.centroid();
    result.plateau_transmissions =
        plateau_ratios(result.probe_out.samples, result.signal_out.samples, probe, driving,
                       coupling, params, grid, delay);
    return result;
}

double conversion_efficiency(const PropagationResult& result) {
    const double e_in = result.probe_in.energy();
    if (!(e_in > 0.0)) throw std::domain_error("conversion_efficiency: incident probe carries no energy");
    return result.signal_out.energy() / e_in;
}

double probe_delay(const PropagationResult& result) {
    return result.probe_out.centroid() - result.probe_in.centroid();
}

} // namespace fwm

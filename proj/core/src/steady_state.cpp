#include "fwm/steady_state.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

void SteadyStateInputs::validate() const {
    if (omega_c < 0.0 || omega_d < 0.0) {
        throw std::domain_error("SteadyStateInputs: Rabi frequencies must be non-negative");
    }
    if (omega_c == 0.0 && omega_d == 0.0) {
        throw std::domain_error("SteadyStateInputs: omega_c and omega_d must not both vanish");
    }
    if (!(gamma31 > 0.0)) {
        throw std::domain_error("SteadyStateInputs: gamma31 must be positive");
    }
    if (alpha < 0.0) {
        throw std::domain_error("SteadyStateInputs: alpha must be non-negative");
    }
    if (!std::isfinite(omega_c) || !std::isfinite(omega_d) || !std::isfinite(delta) ||
        !std::isfinite(gamma31) || !std::isfinite(alpha)) {
        throw std::domain_error("SteadyStateInputs: all fields must be finite");
    }
}

SteadyStateSolution steady_state(const SteadyStateInputs& in) {
    in.validate();
    const double oc2 = in.omega_c * in.omega_c;
    const double od2 = in.omega_d * in.omega_d;
    const double omega_sq = oc2 + od2;

    SteadyStateSolution out;
    out.omega_sq = omega_sq;
    out.xi = std::complex<double>(2.0 * oc2 * in.delta / (omega_sq * in.gamma31), 1.0);

    // exp(-i alpha / 2 xi); the exponent's real part is strictly negative for
    // alpha > 0, so |f| < 1 always.
    const std::complex<double> exponent =
        std::complex<double>(0.0, -in.alpha / 2.0) / out.xi;
    const std::complex<double> f = std::exp(exponent);

    out.probe_ratio = (oc2 + od2 * f) / omega_sq;
    out.signal_ratio = (in.omega_c * in.omega_d * (1.0 - f)) / omega_sq;
    out.probe_transmission = std::norm(out.probe_ratio);
    out.signal_efficiency = std::norm(out.signal_ratio);
    return out;
}

double total_transmission(const SteadyStateInputs& in) {
    in.validate();
    const double oc2 = in.omega_c * in.omega_c;
    const double od2 = in.omega_d * in.omega_d;
    const double omega_sq = oc2 + od2;
    const std::complex<double> xi(2.0 * oc2 * in.delta / (omega_sq * in.gamma31), 1.0);
    const double decay = (std::complex<double>(0.0, 1.0) / xi).real();
    return (oc2 + od2 * std::exp(-in.alpha * decay)) / omega_sq;
}

std::vector<DetuningSweepPoint> efficiency_vs_detuning(const SteadyStateInputs& base,
                                                       const std::vector<double>& deltas) {
    if (deltas.empty()) {
        throw std::domain_error("efficiency_vs_detuning: empty detuning grid");
    }
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        if (!(deltas[i] > deltas[i - 1])) {
            throw std::domain_error("efficiency_vs_detuning: detuning grid must be strictly increasing");
        }
    }
    std::vector<DetuningSweepPoint> out;
    out.reserve(deltas.size());
    SteadyStateInputs in = base;
    for (double d : deltas) {
        in.delta = d;
        const SteadyStateSolution sol = steady_state(in);
        out.push_back({d, sol.probe_transmission, sol.signal_efficiency});
    }
    return out;
}

} // namespace fwm

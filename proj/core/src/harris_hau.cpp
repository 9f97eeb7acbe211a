#include "fwm/harris_hau.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string("HarrisHauInputs: ") + what + " must be finite");
}

} // namespace

void HarrisHauInputs::validate() const {
    require_finite(delta, "delta");
    require_finite(gamma31, "gamma31");
    require_finite(alpha, "alpha");
    require_finite(omega_c, "omega_c");
    require_finite(probe_duration, "probe_duration");
    require_finite(n_photons, "n_photons");
    require_finite(sigma_ratio, "sigma_ratio");
    require_finite(phi, "phi");
    if (!(gamma31 > 0.0)) throw std::domain_error("HarrisHauInputs: gamma31 must be positive");
    if (alpha < 0.0) throw std::domain_error("HarrisHauInputs: alpha must be non-negative");
    if (!(omega_c > 0.0)) throw std::domain_error("HarrisHauInputs: omega_c must be positive");
    if (!(probe_duration > 0.0)) throw std::domain_error("HarrisHauInputs: probe_duration must be positive");
    if (n_photons < 0.0) throw std::domain_error("HarrisHauInputs: n_photons must be non-negative");
    if (!(sigma_ratio > 0.0)) throw std::domain_error("HarrisHauInputs: sigma_ratio must be positive");
    if (!(phi > 0.0)) throw std::domain_error("HarrisHauInputs: phi must be positive");
}

double delay_ratio(double alpha, double gamma31, double omega_c, double probe_duration) {
    if (!(probe_duration > 0.0)) throw std::domain_error("delay_ratio: probe_duration must be positive");
    return eit_delay_gamma_units(alpha, gamma31, omega_c) / probe_duration;
}

double loss_parameter(double delta, double gamma31, double alpha) {
    if (!(gamma31 > 0.0)) throw std::domain_error("loss_parameter: gamma31 must be positive");
    if (alpha < 0.0) throw std::domain_error("loss_parameter: alpha must be non-negative");
    return gamma31 * gamma31 * alpha / (8.0 * delta * delta + 2.0 * gamma31 * gamma31);
}

double zeta(double n_photons, double sigma_ratio, double phi) {
    if (n_photons < 0.0) throw std::domain_error("zeta: n_photons must be non-negative");
    if (!(sigma_ratio > 0.0)) throw std::domain_error("zeta: sigma_ratio must be positive");
    if (!(phi > 0.0)) throw std::domain_error("zeta: phi must be positive");
    return n_photons * sigma_ratio * phi;
}

HarrisHauReport evaluate_harris_hau(const HarrisHauInputs& in) {
    in.validate();
    return {delay_ratio(in.alpha, in.gamma31, in.omega_c, in.probe_duration),
            loss_parameter(in.delta, in.gamma31, in.alpha),
            zeta(in.n_photons, in.sigma_ratio, in.phi)};
}

} // namespace fwm

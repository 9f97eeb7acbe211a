#include "fwm/units.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm {

void PhysicalConstants::validate() const {
    if (!(gamma_rad_per_s > 0.0) || !(saturation_intensity > 0.0) ||
        !(cg_factor_sq > 0.0) || !(wavelength > 0.0) ||
        !(speed_of_light > 0.0) || !(planck_h > 0.0)) {
        throw std::domain_error("PhysicalConstants: all fields must be strictly positive");
    }
    if (cg_factor_sq > 1.0) {
        throw std::domain_error("PhysicalConstants: cg_factor_sq must not exceed 1");
    }
}

void MediumSpec::validate() const {
    if (!(number_density > 0.0) || !(path_length > 0.0) ||
        !(cross_section_probe > 0.0) || !(cross_section_signal > 0.0) ||
        !(cross_section_drive > 0.0)) {
        throw std::domain_error("MediumSpec: all fields must be strictly positive");
    }
}

double rabi_to_intensity(double omega_over_gamma, const PhysicalConstants& consts) {
    consts.validate();
    if (omega_over_gamma < 0.0 || !std::isfinite(omega_over_gamma)) {
        throw std::domain_error("rabi_to_intensity: Rabi frequency must be non-negative");
    }
    return 2.0 * omega_over_gamma * omega_over_gamma * consts.saturation_intensity /
           consts.cg_factor_sq;
}

double intensity_to_rabi(double intensity_mw_cm2, const PhysicalConstants& consts) {
    consts.validate();
    if (intensity_mw_cm2 < 0.0 || !std::isfinite(intensity_mw_cm2)) {
        throw std::domain_error("intensity_to_rabi: intensity must be non-negative");
    }
    return std::sqrt(intensity_mw_cm2 * consts.cg_factor_sq /
                     (2.0 * consts.saturation_intensity));
}

double photons_per_atomic_cross_section(double intensity_mw_cm2, double duration_s,
                                        const PhysicalConstants& consts) {
    consts.validate();
    if (intensity_mw_cm2 < 0.0 || !std::isfinite(intensity_mw_cm2)) {
        throw std::domain_error("photons_per_atomic_cross_section: intensity must be non-negative");
    }
    if (!(duration_s > 0.0)) {
        throw std::domain_error("photons_per_atomic_cross_section: duration must be positive");
    }
    // 1 mW/cm^2 = 10 W/m^2
    const double intensity_si = intensity_mw_cm2 * 10.0;
    const double sigma = 3.0 * consts.wavelength * consts.wavelength / (2.0 * std::numbers::pi);
    const double photon_energy = consts.planck_h * consts.speed_of_light / consts.wavelength;
    return intensity_si * duration_s * sigma / photon_energy;
}

double eit_delay_gamma_units(double alpha, double gamma31, double omega_c) {
    if (!(omega_c > 0.0)) {
        throw std::domain_error("eit_delay: omega_c must be positive (delay diverges)");
    }
    if (alpha < 0.0 || gamma31 < 0.0) {
        throw std::domain_error("eit_delay: alpha and gamma31 must be non-negative");
    }
    return alpha * gamma31 / (omega_c * omega_c);
}

double eit_delay_time(double alpha, double gamma31, double omega_c,
                      const PhysicalConstants& consts) {
    consts.validate();
    return eit_delay_gamma_units(alpha, gamma31, omega_c) / consts.gamma_rad_per_s;
}

double optical_depth(const MediumSpec& medium, Transition transition) {
    medium.validate();
    const double sigma = transition == Transition::probe ? medium.cross_section_probe
                                                         : medium.cross_section_signal;
    return medium.number_density * sigma * medium.path_length;
}

} // namespace fwm

#ifndef FWM_UNITS_HPP
#define FWM_UNITS_HPP

// Physical constants and the conversions between dimensionless simulation
// units and laboratory units. Everywhere else in the library, rates and Rabi
// frequencies are in units of Gamma and times in units of 1/Gamma; this is
// the only module that knows about seconds, meters and mW/cm^2.

#include <numbers>

namespace fwm {

struct PhysicalConstants {
    // Excited-state spontaneous decay rate Gamma, rad/s (2 pi x 6 MHz, Rb D2).
    double gamma_rad_per_s = 2.0 * std::numbers::pi * 6.0e6;
    // Saturation intensity I0, mW/cm^2.
    double saturation_intensity = 1.63;
    // Zeeman-averaged squared Clebsch-Gordan factor a_ij^2.
    double cg_factor_sq = 2.0 / 9.0;
    // Transition wavelength, m (Rb D2 line).
    double wavelength = 780.24e-9;
    double speed_of_light = 299792458.0;   // m/s
    double planck_h = 6.62607015e-34;      // J s

    // Throws std::domain_error on a non-physical value.
    void validate() const;

    // Microseconds per unit of 1/Gamma.
    double us_per_gamma_time() const { return 1.0e6 / gamma_rad_per_s; }
};

enum class Transition { probe, signal };

// Number density, absorption cross sections and path length of the sample.
struct MediumSpec {
    double number_density = 0.0;        // atoms / m^3
    double cross_section_probe = 0.0;   // sigma_13, m^2
    double cross_section_signal = 0.0;  // sigma_14, m^2
    double cross_section_drive = 0.0;   // sigma_24, m^2
    double path_length = 0.0;           // L, m

    void validate() const;
};

// Peak intensity of a field with Rabi frequency omega (in Gamma units):
// I = 2 (omega/Gamma)^2 I0 / a_ij^2, in mW/cm^2.
double rabi_to_intensity(double omega_over_gamma, const PhysicalConstants& consts = {});

// Exact inverse of rabi_to_intensity.
double intensity_to_rabi(double intensity_mw_cm2, const PhysicalConstants& consts = {});

// Photon number carried by a pulse of the given peak intensity (mW/cm^2) and
// duration (s) through one atomic cross section 3 lambda^2 / (2 pi).
double photons_per_atomic_cross_section(double intensity_mw_cm2, double duration_s,
                                        const PhysicalConstants& consts = {});

// EIT group delay T_d = alpha gamma31 / omega_c^2 in units of 1/Gamma.
double eit_delay_gamma_units(double alpha, double gamma31, double omega_c);

// Same delay converted to seconds.
double eit_delay_time(double alpha, double gamma31, double omega_c,
                      const PhysicalConstants& consts = {});

// n sigma L for the requested transition.
double optical_depth(const MediumSpec& medium, Transition transition);

} // namespace fwm

#endif

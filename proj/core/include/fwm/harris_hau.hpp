#ifndef FWM_HARRIS_HAU_HPP
#define FWM_HARRIS_HAU_HPP

// Figure-of-merit chain for pulsed four-wave mixing at low light levels,
// after the Harris-Hau analysis of nonlinear optics with single-photon-class
// pulses. Three dimensionless numbers summarize a pulsed experiment:
//
//   eta  = T_delay / T_probe   fraction of the probe pulse held in the medium,
//   r    = gamma31^2 alpha / (8 delta^2 + 2 gamma31^2)
//                              residual absorption parameter of the far-detuned
//                              driving transition,
//   zeta = N_photons (sigma/A) Phi
//                              accumulated nonlinear phase-equivalent of the
//                              driving pulse, with Phi the reference conversion
//                              constant for a unity-photon cross-section pulse.

#include "fwm/units.hpp"

namespace fwm {

inline constexpr double kPhiReference = 4.5e-3;

struct HarrisHauInputs {
    double delta = 0.0;              // driving-field detuning, Gamma units
    double gamma31 = 1.0;            // probe coherence decay, Gamma units
    double alpha = 0.0;              // optical depth
    double omega_c = 0.0;            // coupling Rabi frequency, Gamma units
    double probe_duration = 0.0;     // probe pulse length, 1/Gamma
    double n_photons = 0.0;          // driving photons through one atomic cross-section
    double sigma_ratio = 2.0 / 9.0;  // sigma_24 / A, transition-strength ratio
    double phi = kPhiReference;

    void validate() const;  // throws std::domain_error
};

struct HarrisHauReport {
    double eta = 0.0;
    double r = 0.0;
    double zeta = 0.0;
};

// eta: EIT group delay divided by the probe duration.
double delay_ratio(double alpha, double gamma31, double omega_c, double probe_duration);

// r: absorption-loss parameter of the detuned driving transition.
double loss_parameter(double delta, double gamma31, double alpha);

// zeta: photon number times transition-strength ratio times Phi.
double zeta(double n_photons, double sigma_ratio, double phi = kPhiReference);

HarrisHauReport evaluate_harris_hau(const HarrisHauInputs& in);

} // namespace fwm

#endif

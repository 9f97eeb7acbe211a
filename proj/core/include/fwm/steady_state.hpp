#ifndef FWM_STEADY_STATE_HPP
#define FWM_STEADY_STATE_HPP

// Closed-form steady state of the four-level FWM chain for a continuous weak
// probe: valid when the ground-state dephasing vanishes and the two excited
// states share one coherence decay rate. The probe and generated signal at
// optical depth alpha are
//
//   probe_ratio  = [Oc^2 + Od^2 e^(-i alpha / 2 xi)] / (Oc^2 + Od^2)
//   signal_ratio = [Oc Od (1 - e^(-i alpha / 2 xi))] / (Oc^2 + Od^2)
//
// with xi = i + 2 Oc^2 Delta / ((Oc^2 + Od^2) gamma31).

#include <complex>
#include <vector>

namespace fwm {

struct SteadyStateInputs {
    double omega_c = 0.0;   // coupling Rabi frequency, Gamma units
    double omega_d = 0.0;   // driving Rabi frequency, Gamma units
    double delta = 0.0;     // driving detuning (driving laser minus |2>-|4> transition)
    double gamma31 = 1.0;   // excited-state coherence decay rate, Gamma units
    double alpha = 0.0;     // optical depth

    void validate() const;  // throws std::domain_error
};

struct SteadyStateSolution {
    std::complex<double> probe_ratio;   // Omega_p(alpha) / Omega_p(0)
    std::complex<double> signal_ratio;  // Omega_s(alpha) / Omega_p(0)
    double omega_sq = 0.0;              // Omega_c^2 + Omega_d^2
    std::complex<double> xi;
    double probe_transmission = 0.0;    // |probe_ratio|^2
    double signal_efficiency = 0.0;     // |signal_ratio|^2
};

SteadyStateSolution steady_state(const SteadyStateInputs& in);

// (Oc^2 + Od^2 |e^(-i alpha / 2 xi)|^2) / (Oc^2 + Od^2); algebraically equal
// to probe_transmission + signal_efficiency.
double total_transmission(const SteadyStateInputs& in);

struct DetuningSweepPoint {
    double delta = 0.0;
    double probe_transmission = 0.0;
    double signal_efficiency = 0.0;
};

// Element-wise steady_state over a monotone detuning grid.
std::vector<DetuningSweepPoint> efficiency_vs_detuning(const SteadyStateInputs& base,
                                                       const std::vector<double>& deltas);

} // namespace fwm

#endif

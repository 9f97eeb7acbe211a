#ifndef FWM_PULSE_HPP
#define FWM_PULSE_HPP

// Pulse envelopes for the input fields. Times in 1/Gamma, amplitudes in Gamma
// units. The square shape carries raised-cosine rise and fall ramps whose
// 10-90% time is edge_time; a gaussian is available for smooth-pulse studies.

#include <string>

namespace fwm {

enum class PulseShape {
    square_smooth,  // flat top with raised-cosine edges inside [start, start+duration]
    gaussian,       // power-FWHM = duration, centered at start + duration
};

struct PulseSpec {
    PulseShape shape = PulseShape::square_smooth;
    double peak_rabi = 0.0;   // flat-top (or peak) Rabi amplitude; may be zero (field off)
    double duration = 0.0;    // total support (square) or power FWHM (gaussian)
    double edge_time = 0.0;   // 10-90% amplitude rise/fall time (square only)
    double start_time = 0.0;

    void validate() const;  // throws std::domain_error

    // Envelope amplitude at time t, in [0, peak_rabi].
    double amplitude(double t) const;

    // Full 0-to-peak ramp length of the raised-cosine edge.
    double ramp_length() const;

    // Flat-top window of a square pulse (empty for gaussian).
    double flat_begin() const { return start_time + ramp_length(); }
    double flat_end() const { return start_time + duration - ramp_length(); }

    // Time after which the envelope is negligible.
    double end_time() const;
};

std::string to_string(PulseShape shape);
PulseShape pulse_shape_from_string(const std::string& name);

} // namespace fwm

#endif

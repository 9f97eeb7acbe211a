#include "fwm/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwm {

namespace {

// Fraction of the full raised-cosine ramp spent between 10% and 90% amplitude:
// (acos(-0.8) - acos(0.8)) / pi.
constexpr double kTenNinetyFraction = 0.5903344706017332;

} // namespace

void PulseSpec::validate() const {
    if (!(duration > 0.0)) {
        throw std::domain_error("PulseSpec: duration must be positive");
    }
    if (edge_time < 0.0 || edge_time > duration / 4.0) {
        throw std::domain_error("PulseSpec: edge_time must lie in [0, duration/4]");
    }
    if (peak_rabi < 0.0) {
        throw std::domain_error("PulseSpec: peak_rabi must be non-negative");
    }
    if (!std::isfinite(peak_rabi) || !std::isfinite(duration) || !std::isfinite(edge_time) ||
        !std::isfinite(start_time)) {
        throw std::domain_error("PulseSpec: all fields must be finite");
    }
}

double PulseSpec::ramp_length() const {
    return shape == PulseShape::square_smooth ? edge_time / kTenNinetyFraction : 0.0;
}

double PulseSpec::amplitude(double t) const {
    if (shape == PulseShape::gaussian) {
        const double center = start_time + duration;
        const double u = (t - center) / duration;
        return peak_rabi * std::exp(-2.0 * std::numbers::ln2 * u * u);
    }
    const double u = t - start_time;
    if (u <= 0.0 || u >= duration) {
        return 0.0;
    }
    const double w = ramp_length();
    if (w > 0.0 && u < w) {
        return peak_rabi * 0.5 * (1.0 - std::cos(std::numbers::pi * u / w));
    }
    if (w > 0.0 && u > duration - w) {
        return peak_rabi * 0.5 * (1.0 - std::cos(std::numbers::pi * (duration - u) / w));
    }
    return peak_rabi;
}

double PulseSpec::end_time() const {
    if (shape == PulseShape::gaussian) {
        // amplitude down to exp(-8 ln 2) ~ 4e-3 of peak
        return start_time + 3.0 * duration;
    }
    return start_time + duration;
}

std::string to_string(PulseShape shape) {
    return shape == PulseShape::gaussian ? "gaussian" : "square";
}

PulseShape pulse_shape_from_string(const std::string& name) {
    if (name == "square" || name == "square_smooth" || name == "square-with-smooth-edges") {
        return PulseShape::square_smooth;
    }
    if (name == "gaussian") {
        return PulseShape::gaussian;
    }
    throw std::domain_error("unknown pulse shape '" + name + "' (expected square or gaussian)");
}

} // namespace fwm

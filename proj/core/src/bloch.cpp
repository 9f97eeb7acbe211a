#include "fwm/bloch.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fwm/errors.hpp"

namespace fwm {

void SystemParams::validate() const {
    if (!(gamma31 > 0.0) || !(gamma41 > 0.0)) {
        throw std::domain_error("SystemParams: gamma31 and gamma41 must be positive");
    }
    if (gamma21 < 0.0) {
        throw std::domain_error("SystemParams: gamma21 must be non-negative");
    }
    if (alpha < 0.0) {
        throw std::domain_error("SystemParams: alpha must be non-negative");
    }
    if (omega_c < 0.0) {
        throw std::domain_error("SystemParams: omega_c must be non-negative");
    }
    if (!std::isfinite(omega_c) || !std::isfinite(delta) || !std::isfinite(gamma21) ||
        !std::isfinite(gamma31) || !std::isfinite(gamma41) || !std::isfinite(alpha)) {
        throw std::domain_error("SystemParams: all fields must be finite");
    }
}

double max_stable_dt(const SystemParams& p, double peak_coupling, double peak_driving) {
    const double rate = std::max({0.5 * p.gamma31, 0.5 * p.gamma41, 0.5 * p.gamma21,
                                  std::abs(p.delta) +
                                      0.5 * (std::abs(peak_coupling) + std::abs(peak_driving)),
                                  1.0});
    return 2.5 / rate;
}

CoherenceState step(const CoherenceState& s, const DriveFields& fields_t,
                    const DriveFields& fields_t_dt, const SystemParams& p, double dt) {
    if (!(dt > 0.0)) {
        throw config_error("bloch step: dt must be positive");
    }
    const double peak_c = std::max(std::abs(fields_t.coupling), std::abs(fields_t_dt.coupling));
    const double peak_d = std::max(std::abs(fields_t.driving), std::abs(fields_t_dt.driving));
    const double dt_max = max_stable_dt(p, peak_c, peak_d);
    if (dt > dt_max) {
        std::ostringstream msg;
        msg << "bloch step: dt = " << dt << " exceeds the stability bound " << dt_max
            << " (see max_stable_dt)";
        throw config_error(msg.str());
    }
    return detail::rk4_step(s, fields_t, detail::midpoint(fields_t, fields_t_dt), fields_t_dt,
                            p, dt);
}

CoherenceState steady_coherences(const DriveFields& f, const SystemParams& p) {
    p.validate();
    constexpr cplx half_i{0.0, 0.5};

    // Unknowns ordered (rho31, rho41, rho21).
    Eigen::Matrix3cd m;
    m(0, 0) = cplx(-0.5 * p.gamma31, 0.0);
    m(0, 1) = cplx(0.0, 0.0);
    m(0, 2) = half_i * f.coupling;
    m(1, 0) = cplx(0.0, 0.0);
    m(1, 1) = cplx(-0.5 * p.gamma41, p.delta);
    m(1, 2) = half_i * f.driving;
    m(2, 0) = half_i * std::conj(f.coupling);
    m(2, 1) = half_i * std::conj(f.driving);
    m(2, 2) = cplx(-0.5 * p.gamma21, 0.0);

    Eigen::Vector3cd rhs;
    rhs << -half_i * f.probe, -half_i * f.signal, cplx(0.0, 0.0);

    Eigen::FullPivLU<Eigen::Matrix3cd> lu(m);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << "steady_coherences: singular system for omega_c = " << std::abs(f.coupling)
            << ", omega_d = " << std::abs(f.driving) << ", gamma21 = " << p.gamma21
            << ", delta = " << p.delta
            << " (the homogeneous Bloch system has a zero mode at this parameter combination)";
        throw numeric_error(msg.str());
    }
    const Eigen::Vector3cd x = lu.solve(rhs);
    return {x(0), x(1), x(2)};
}

CoherenceState steady_coherences(cplx omega_p, cplx omega_s, cplx omega_d,
                                 const SystemParams& p) {
    return steady_coherences(DriveFields{omega_p, omega_s, cplx(p.omega_c), omega_d}, p);
}

} // namespace fwm

#ifndef FWM_BLOCH_HPP
#define FWM_BLOCH_HPP

// Linearized optical Bloch equations for the three coherences of one position
// slice under the weak-probe assumption (ground-state population pinned to
// |1>). In Gamma units, with rho_ij the slowly varying coherence amplitudes:
//
//   d rho41 / dt = (i/2) Os + (i/2) Od rho21 + (i Delta - gamma41/2) rho41
//   d rho31 / dt = (i/2) Op + (i/2) Oc rho21 - (gamma31/2) rho31
//   d rho21 / dt = (i/2) Oc* rho31 + (i/2) Od* rho41 - (gamma21/2) rho21
//
// The system is linear in (rho, Op, Os); there are no population equations.
// Validity requires |Op| << Oc.

#include <cmath>
#include <complex>

namespace fwm {

using cplx = std::complex<double>;

// Atomic and coupling-field parameters, rates and Rabi frequencies in Gamma
// units. The driving Rabi frequency is a per-call field amplitude, not a
// system parameter, because it is pulsed.
struct SystemParams {
    double omega_c = 0.0;   // coupling Rabi frequency
    double delta = 0.0;     // driving detuning
    double gamma21 = 0.0;   // ground-state dephasing rate
    double gamma31 = 1.0;   // |3> coherence decay rate
    double gamma41 = 1.0;   // |4> coherence decay rate
    double alpha = 0.0;     // optical depth (shared by probe and signal)

    void validate() const;  // throws std::domain_error
};

struct CoherenceState {
    cplx rho31{};
    cplx rho41{};
    cplx rho21{};
};

// Instantaneous field amplitudes seen by a slice, Gamma units. Complex to
// admit pulse edges with phase.
struct DriveFields {
    cplx probe{};
    cplx signal{};
    cplx coupling{};
    cplx driving{};
};

inline CoherenceState coherence_derivatives(const CoherenceState& s, const DriveFields& f,
                                            const SystemParams& p) {
    constexpr cplx half_i{0.0, 0.5};
    CoherenceState d;
    d.rho31 = half_i * f.probe + half_i * f.coupling * s.rho21 - 0.5 * p.gamma31 * s.rho31;
    d.rho41 = half_i * f.signal + half_i * f.driving * s.rho21 +
              cplx(-0.5 * p.gamma41, p.delta) * s.rho41;
    d.rho21 = half_i * std::conj(f.coupling) * s.rho31 +
              half_i * std::conj(f.driving) * s.rho41 - 0.5 * p.gamma21 * s.rho21;
    return d;
}

// Convenience overload with the coupling amplitude taken from params.
inline CoherenceState coherence_derivatives(const CoherenceState& s, cplx omega_p, cplx omega_s,
                                            cplx omega_d, const SystemParams& p) {
    return coherence_derivatives(s, DriveFields{omega_p, omega_s, cplx(p.omega_c), omega_d}, p);
}

namespace detail {

inline CoherenceState advanced(const CoherenceState& s, const CoherenceState& k, double h) {
    return {s.rho31 + h * k.rho31, s.rho41 + h * k.rho41, s.rho21 + h * k.rho21};
}

// One classical RK4 step with explicit field samples at t, t + dt/2, t + dt.
// No stability check; callers validate dt once up front.
inline CoherenceState rk4_step(const CoherenceState& s, const DriveFields& f0,
                               const DriveFields& fh, const DriveFields& f1,
                               const SystemParams& p, double dt) {
    const CoherenceState k1 = coherence_derivatives(s, f0, p);
    const CoherenceState k2 = coherence_derivatives(advanced(s, k1, 0.5 * dt), fh, p);
    const CoherenceState k3 = coherence_derivatives(advanced(s, k2, 0.5 * dt), fh, p);
    const CoherenceState k4 = coherence_derivatives(advanced(s, k3, dt), f1, p);
    const double w = dt / 6.0;
    return {s.rho31 + w * (k1.rho31 + 2.0 * (k2.rho31 + k3.rho31) + k4.rho31),
            s.rho41 + w * (k1.rho41 + 2.0 * (k2.rho41 + k3.rho41) + k4.rho41),
            s.rho21 + w * (k1.rho21 + 2.0 * (k2.rho21 + k3.rho21) + k4.rho21)};
}

inline DriveFields midpoint(const DriveFields& a, const DriveFields& b) {
    return {0.5 * (a.probe + b.probe), 0.5 * (a.signal + b.signal),
            0.5 * (a.coupling + b.coupling), 0.5 * (a.driving + b.driving)};
}

} // namespace detail

// Largest time step accepted by step() and the propagator. The fastest
// eigenfrequency of the system matrix is bounded by
//   R = max(gamma31/2, gamma41/2, gamma21/2, |Delta| + (|Oc| + |Od|)/2),
// and the classical RK4 stability region contains |z| <= 2.5 on and near the
// imaginary axis, so dt_max = 2.5 / max(R, 1).
double max_stable_dt(const SystemParams& p, double peak_coupling, double peak_driving);

// Advance one step from t to t + dt given field samples at the two endpoints;
// stage fields at t + dt/2 are linearly interpolated. Local error O(dt^5) for
// fields varying at most linearly over the step. Throws config_error if dt
// exceeds max_stable_dt.
CoherenceState step(const CoherenceState& s, const DriveFields& fields_t,
                    const DriveFields& fields_t_dt, const SystemParams& p, double dt);

// Unique solution of the 3x3 linear system obtained by zeroing the time
// derivatives. Throws numeric_error if the system is singular (for example
// gamma21 = 0 with both coupling and driving off).
CoherenceState steady_coherences(const DriveFields& f, const SystemParams& p);
CoherenceState steady_coherences(cplx omega_p, cplx omega_s, cplx omega_d,
                                 const SystemParams& p);

} // namespace fwm

#endif

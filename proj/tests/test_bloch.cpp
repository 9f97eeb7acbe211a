#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fwm/bloch.hpp"
#include "fwm/errors.hpp"

using namespace fwm;

namespace {

SystemParams reference_params() {
    SystemParams p;
    p.omega_c = 0.32;
    p.delta = 13.0;
    p.gamma21 = 9e-4;
    p.gamma31 = 1.25;
    p.gamma41 = 1.25;
    p.alpha = 42.0;
    return p;
}

} // namespace

TEST_SUITE("bloch") {

TEST_CASE("coherence derivatives at a frozen state") {
    const SystemParams p = reference_params();
    CoherenceState s;
    s.rho31 = cplx(0.1, 0.2);
    s.rho41 = cplx(0.0, -0.05);
    s.rho21 = cplx(0.3, -0.1);
    DriveFields f;
    f.probe = cplx(0.01, 0.0);
    f.signal = cplx(0.0, 0.002);
    f.coupling = cplx(0.32, 0.0);
    f.driving = cplx(0.35, 0.0);

    const CoherenceState d = coherence_derivatives(s, f, p);
    CHECK(d.rho31.real() == doctest::Approx(-0.0465).epsilon(1e-12));
    CHECK(d.rho31.imag() == doctest::Approx(-0.072).epsilon(1e-12));
    CHECK(d.rho41.real() == doctest::Approx(0.6665).epsilon(1e-12));
    CHECK(d.rho41.imag() == doctest::Approx(0.08375).epsilon(1e-12));
    CHECK(d.rho21.real() == doctest::Approx(-0.023385).epsilon(1e-12));
    CHECK(d.rho21.imag() == doctest::Approx(0.016045).epsilon(1e-12));
}

TEST_CASE("derivatives are linear in state and drive together") {
    const SystemParams p = reference_params();
    CoherenceState s;
    s.rho31 = cplx(0.02, -0.01);
    s.rho41 = cplx(-0.005, 0.004);
    s.rho21 = cplx(0.1, 0.05);
    DriveFields f;
    f.probe = cplx(0.01, 0.003);
    f.signal = cplx(-0.002, 0.001);
    f.coupling = cplx(0.32, 0.0);
    f.driving = cplx(0.35, 0.0);

    // Scaling the weak fields and the state together scales the derivative:
    // the system is linear in (rho, probe, signal) at fixed strong fields.
    const double a = 3.7;
    CoherenceState sa;
    sa.rho31 = a * s.rho31;
    sa.rho41 = a * s.rho41;
    sa.rho21 = a * s.rho21;
    DriveFields fa = f;
    fa.probe *= a;
    fa.signal *= a;
    const CoherenceState d1 = coherence_derivatives(s, f, p);
    const CoherenceState d2 = coherence_derivatives(sa, fa, p);
    CHECK(std::abs(d2.rho31 - a * d1.rho31) < 1e-14);
    CHECK(std::abs(d2.rho41 - a * d1.rho41) < 1e-14);
    CHECK(std::abs(d2.rho21 - a * d1.rho21) < 1e-14);
}

TEST_CASE("rk4 step reproduces the quartic Taylor polynomial for pure decay") {
    SystemParams p;
    p.omega_c = 0.0;
    p.gamma31 = 1.25;
    p.gamma41 = 1.25;
    p.gamma21 = 0.0;
    CoherenceState s;
    s.rho31 = cplx(1.0, 0.0);
    const DriveFields off{};
    const double dt = 0.4;
    const CoherenceState next = detail::rk4_step(s, off, off, off, p, dt);
    const double z = -0.5 * 1.25 * dt;
    const double expected = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
    CHECK(next.rho31.real() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(std::abs(next.rho31.imag()) < 1e-16);
}

TEST_CASE("step is fourth-order accurate for constant fields") {
    const SystemParams p = reference_params();
    DriveFields f;
    f.probe = cplx(0.01, 0.0);
    f.coupling = cplx(0.32, 0.0);
    f.driving = cplx(0.35, 0.0);

    auto integrate = [&](double dt, double t_end) {
        CoherenceState s;
        const int n = static_cast<int>(std::round(t_end / dt));
        for (int k = 0; k < n; ++k) s = detail::rk4_step(s, f, f, f, p, dt);
        return s;
    };
    const CoherenceState ref = integrate(0.0125, 2.0);
    const CoherenceState coarse = integrate(0.1, 2.0);
    const CoherenceState fine = integrate(0.05, 2.0);
    const double e_coarse = std::abs(coarse.rho41 - ref.rho41);
    const double e_fine = std::abs(fine.rho41 - ref.rho41);
    CHECK(e_coarse / e_fine > 12.0);   // 4th order: ratio ~16 (reference not exact)
    CHECK(e_coarse / e_fine < 22.0);
}

TEST_CASE("step rejects a time step beyond the stability bound") {
    const SystemParams p = reference_params();
    const DriveFields f{};
    const CoherenceState s{};
    CHECK_NOTHROW(step(s, f, f, p, 0.18));
    CHECK_THROWS_AS(step(s, f, f, p, 0.5), config_error);
    CHECK_THROWS_AS(step(s, f, f, p, 0.0), config_error);
}

TEST_CASE("stability bound tracks detuning, Rabi frequencies and decay") {
    CHECK(max_stable_dt(reference_params(), 0.32, 0.35) ==
          doctest::Approx(0.1874765654293213).epsilon(1e-12));
    SystemParams quiet;
    quiet.omega_c = 0.32;
    quiet.gamma31 = 1.25;
    quiet.gamma41 = 1.25;
    CHECK(max_stable_dt(quiet, 0.32, 0.0) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("steady coherences: dark state with the driving off") {
    SystemParams p = reference_params();
    p.gamma21 = 0.0;
    const CoherenceState s = steady_coherences(cplx(0.001, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), p);
    CHECK(s.rho21.real() == doctest::Approx(-0.003125).epsilon(1e-12));
    CHECK(std::abs(s.rho21.imag()) < 1e-15);
    CHECK(std::abs(s.rho31) < 1e-15);
    CHECK(std::abs(s.rho41) < 1e-15);
}

TEST_CASE("steady coherences zero the derivatives") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        SystemParams p;
        p.omega_c = 0.1 + 0.6 * u(rng);
        p.delta = 20.0 * u(rng) - 10.0;
        p.gamma21 = 0.01 * u(rng);
        p.gamma31 = 0.8 + u(rng);
        p.gamma41 = 0.8 + u(rng);
        DriveFields f;
        f.probe = cplx(0.02 * u(rng), 0.02 * u(rng));
        f.signal = cplx(0.02 * u(rng), -0.02 * u(rng));
        f.coupling = cplx(p.omega_c, 0.0);
        f.driving = cplx(0.7 * u(rng), 0.0);
        const CoherenceState s = steady_coherences(f, p);
        const CoherenceState d = coherence_derivatives(s, f, p);
        CHECK(std::abs(d.rho31) < 1e-12);
        CHECK(std::abs(d.rho41) < 1e-12);
        CHECK(std::abs(d.rho21) < 1e-12);
    }
}

TEST_CASE("steady coherences reject the singular drive-free dephasing-free case") {
    SystemParams p;
    p.omega_c = 0.0;
    p.gamma21 = 0.0;
    p.gamma31 = 1.25;
    p.gamma41 = 1.25;
    DriveFields f;
    f.probe = cplx(0.01, 0.0);
    CHECK_THROWS_AS(steady_coherences(f, p), numeric_error);
}

TEST_CASE("parameter validation") {
    SystemParams p = reference_params();
    p.gamma31 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.gamma21 = -1e-4;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.omega_c = -0.1;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = reference_params();
    p.alpha = -5.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
}

} // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fwm/errors.hpp"
#include "fwm/fitting.hpp"
#include "fwm/propagation.hpp"
#include "fwm/steady_state.hpp"
#include "fwm/units.hpp"

using namespace fwm;

namespace {

PulseSpec square_pulse(double peak, double duration, double edge = 10.0, double start = 0.0) {
    PulseSpec p;
    p.shape = PulseShape::square_smooth;
    p.peak_rabi = peak;
    p.duration = duration;
    p.edge_time = edge;
    p.start_time = start;
    return p;
}

SystemParams params(double omega_c, double delta, double gamma21, double gamma31, double gamma41,
                    double alpha) {
    SystemParams p;
    p.omega_c = omega_c;
    p.delta = delta;
    p.gamma21 = gamma21;
    p.gamma31 = gamma31;
    p.gamma41 = gamma41;
    p.alpha = alpha;
    return p;
}

} // namespace

TEST_SUITE("propagation") {

TEST_CASE("field envelope energy, peak and centroid") {
    FieldEnvelope e;
    e.dt = 0.5;
    // |samples|^2 = 1, 4, 9, 4; trapezoid = 0.5 * (1/2 + 4 + 9 + 4/2) = 7.75
    e.samples = {cplx(1, 0), cplx(0, 2), cplx(3, 0), cplx(2, 0)};
    CHECK(e.energy() == doctest::Approx(7.75).epsilon(1e-15));
    CHECK(e.peak_power() == doctest::Approx(9.0).epsilon(1e-15));
    // centroid weights: 0.5, 4, 9, 2 at times 0, 0.5, 1.0, 1.5
    const double expect = (0.5 * 0.0 + 4.0 * 0.5 + 9.0 * 1.0 + 2.0 * 1.5) / 15.5;
    CHECK(e.centroid() == doctest::Approx(expect).epsilon(1e-15));

    FieldEnvelope empty;
    empty.dt = 0.1;
    empty.samples = {cplx(0, 0), cplx(0, 0)};
    CHECK(empty.energy() == 0.0);
    CHECK_THROWS_AS(empty.centroid(), std::domain_error);
}

TEST_CASE("bare absorption: no coupling, no driving") {
    // With both strong fields off the probe sees plain two-level absorption.
    const SystemParams p = params(0.0, 0.0, 0.0, 1.0, 1.0, 4.0);
    PropagationGrid grid;
    grid.n_z = 32;
    grid.dt = 0.1;
    grid.t_max = 700.0;
    const auto r = propagate(square_pulse(0.01, 650.0), square_pulse(0.0, 650.0), p, grid);
    REQUIRE(r.plateau_transmissions.has_value());
    CHECK(r.plateau_transmissions->first ==
          doctest::Approx(std::exp(-4.0)).epsilon(5e-3));
    CHECK(r.plateau_transmissions->second < 1e-12);
    CHECK(r.conversion_efficiency < 1e-12);
}

TEST_CASE("EIT transparency: coupling on, driving off, no dephasing") {
    const SystemParams p = params(0.32, 0.0, 0.0, 1.25, 1.25, 42.0);
    PropagationGrid grid;
    grid.n_z = 64;
    grid.dt = 0.1;
    // t_max leaves room for the delayed trailing edge, else the centroid is
    // biased early by truncation
    grid.t_max = 2500.0;
    const auto r = propagate(square_pulse(0.01, 1500.0), square_pulse(0.0, 1500.0), p, grid);
    REQUIRE(r.plateau_transmissions.has_value());
    CHECK(r.plateau_transmissions->first == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.plateau_transmissions->second < 1e-12);
    // group delay close to alpha gamma31 / omega_c^2
    const double expected_delay = eit_delay_gamma_units(42.0, 1.25, 0.32);
    CHECK(probe_delay(r) == doctest::Approx(expected_delay).epsilon(0.1));
}

TEST_CASE("plateau matches the closed-form steady state") {
    const SystemParams p = params(0.32, 13.0, 0.0, 1.25, 1.25, 42.0);
    PropagationGrid grid;
    grid.n_z = 64;
    grid.dt = 0.1;
    grid.t_max = 2800.0;
    const auto r =
        propagate(square_pulse(0.01, 2600.0, 18.85), square_pulse(0.32, 2600.0, 18.85), p, grid);
    SteadyStateInputs in;
    in.omega_c = 0.32;
    in.omega_d = 0.32;
    in.delta = 13.0;
    in.gamma31 = 1.25;
    in.alpha = 42.0;
    const auto sol = steady_state(in);
    REQUIRE(r.plateau_transmissions.has_value());
    CHECK(std::abs(r.plateau_transmissions->first - sol.probe_transmission) < 5e-4);
    CHECK(std::abs(r.plateau_transmissions->second - sol.signal_efficiency) < 5e-4);
}

TEST_CASE("output scales linearly with the probe amplitude") {
    const SystemParams p = params(0.5, 5.0, 1e-3, 1.25, 1.25, 20.0);
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.1;
    grid.t_max = 700.0;
    const auto weak = propagate(square_pulse(0.005, 400.0), square_pulse(0.4, 500.0), p, grid);
    const auto strong = propagate(square_pulse(0.05, 400.0), square_pulse(0.4, 500.0), p, grid);
    CHECK(std::abs(weak.conversion_efficiency - strong.conversion_efficiency) < 1e-10);
    CHECK(std::abs(weak.energy_transmission_probe - strong.energy_transmission_probe) < 1e-10);
    double worst = 0.0;
    for (std::size_t k = 0; k < weak.signal_out.samples.size(); ++k) {
        worst = std::max(worst, std::abs(10.0 * weak.signal_out.samples[k] -
                                         strong.signal_out.samples[k]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("energy is never created") {
    const SystemParams p = params(0.5, 3.0, 2e-3, 1.25, 1.25, 25.0);
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.1;
    grid.t_max = 800.0;
    const auto r = propagate(square_pulse(0.02, 400.0), square_pulse(0.45, 500.0), p, grid);
    const double in = r.probe_in.energy();
    CHECK(r.probe_out.energy() + r.signal_out.energy() <= in * (1.0 + 1e-3));
    CHECK(conversion_efficiency(r) == doctest::Approx(r.conversion_efficiency).epsilon(1e-15));
}

TEST_CASE("a gaussian probe reports no plateau") {
    const SystemParams p = params(0.5, 0.0, 0.0, 1.25, 1.25, 10.0);
    PulseSpec probe;
    probe.shape = PulseShape::gaussian;
    probe.peak_rabi = 0.01;
    probe.duration = 150.0;
    probe.start_time = 0.0;
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.1;
    grid.t_max = 700.0;
    const auto r = propagate(probe, square_pulse(0.0, 450.0), p, grid);
    CHECK_FALSE(r.plateau_transmissions.has_value());
    CHECK(r.probe_delay > 0.0);
}

TEST_CASE("grid validation") {
    const SystemParams p = params(0.32, 13.0, 0.0, 1.25, 1.25, 42.0);
    const PulseSpec probe = square_pulse(0.01, 600.0);
    const PulseSpec driving = square_pulse(0.32, 600.0);

    PropagationGrid grid;
    grid.n_z = 64;
    grid.dt = 0.5;   // beyond the stability bound at delta = 13
    grid.t_max = 1500.0;
    CHECK_THROWS_AS(propagate(probe, driving, p, grid), config_error);

    grid.dt = 0.1;
    grid.n_z = 10;   // below alpha / 2
    CHECK_THROWS_AS(propagate(probe, driving, p, grid), config_error);

    grid.n_z = 64;
    grid.t_max = 200.0;   // shorter than the EIT delay after the pulse starts
    CHECK_THROWS_AS(propagate(probe, driving, p, grid), config_error);

    grid.t_max = 1500.0;
    CHECK_THROWS_AS(propagate(square_pulse(0.0, 600.0), driving, p, grid), std::domain_error);
    CHECK_NOTHROW(propagate(probe, driving, p, grid));

    PropagationGrid bad;
    bad.n_z = 1;
    bad.dt = 0.1;
    bad.t_max = 100.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("envelope CSV round-trips through the trace reader") {
    const SystemParams p = params(0.5, 2.0, 1e-3, 1.25, 1.25, 12.0);
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.1;
    grid.t_max = 600.0;
    const auto r = propagate(square_pulse(0.02, 350.0), square_pulse(0.3, 450.0), p, grid);

    std::stringstream buffer;
    write_envelope_csv(buffer, r, 3, {}, {{"run_label", "roundtrip"}});
    const Trace trace = load_trace(buffer);

    const Trace direct = trace_from_result(r, 3);
    REQUIRE(trace.time_us.size() == direct.time_us.size());
    for (std::size_t k = 0; k < trace.time_us.size(); ++k) {
        CHECK(trace.time_us[k] == doctest::Approx(direct.time_us[k]).epsilon(1e-8));
        CHECK(trace.probe_power[k] == doctest::Approx(direct.probe_power[k]).epsilon(1e-6));
        CHECK(trace.signal_power[k] == doctest::Approx(direct.signal_power[k]).epsilon(1e-6));
    }
    bool found_label = false;
    bool found_alpha = false;
    for (const auto& [k, v] : trace.metadata) {
        if (k == "run_label" && v == "roundtrip") found_label = true;
        if (k == "alpha" && v == "12") found_alpha = true;
    }
    CHECK(found_label);
    CHECK(found_alpha);
}

TEST_CASE("time grid sample count covers t_max inclusively") {
    const SystemParams p = params(0.5, 0.0, 0.0, 1.25, 1.25, 8.0);
    PropagationGrid grid;
    grid.n_z = 16;
    grid.dt = 0.05;
    grid.t_max = 400.0;
    const auto r = propagate(square_pulse(0.01, 300.0), square_pulse(0.0, 300.0), p, grid);
    CHECK(r.probe_out.samples.size() == 8001);
    CHECK(r.probe_in.samples.size() == 8001);
}

} // TEST_SUITE

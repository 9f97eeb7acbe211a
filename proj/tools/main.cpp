#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Four-level EIT four-wave mixing: pulsed propagation, steady-state conversion and trace fitting"};
    app.require_subcommand(1);

    fwm::cli::CommandOptions opts;
    double rabi = 0.0;
    double intensity = 0.0;
    double duration_us = 0.0;

    auto* steady = app.add_subcommand("steady", "Closed-form steady-state transmission and conversion");
    auto* propagate = app.add_subcommand("propagate", "Integrate the pulsed propagation equations");
    auto* sweep = app.add_subcommand("sweep", "Scan one parameter and tabulate conversion results");
    auto* fit = app.add_subcommand("fit", "Estimate omega_d and gamma21 from a recorded trace");
    auto* hh = app.add_subcommand("harris-hau", "Figures of merit for pulsed low-light conversion");
    auto* figure = app.add_subcommand("reproduce-figure", "Write a preset result bundle");
    auto* convert = app.add_subcommand("convert-units", "Convert between Rabi frequency, intensity and photons");

    for (CLI::App* sub : {steady, propagate, sweep, fit, hh, figure}) {
        sub->add_option("--config", opts.config_path, "Experiment configuration file (INI)");
        sub->add_option("--out", opts.out_path, "Output file (output directory for reproduce-figure)");
    }
    for (CLI::App* sub : {propagate, sweep, fit, figure}) {
        sub->add_option("--grid-scale", opts.grid_scale, "Resolution multiplier: dt / s, n_z * s")
            ->check(CLI::PositiveNumber);
    }
    for (CLI::App* sub : {sweep, figure}) {
        sub->add_flag("--serial", opts.serial, "Evaluate sweep points on a single thread");
    }
    sweep->add_flag("--analytic", opts.analytic, "Use the closed-form steady state instead of the solver");
    fit->add_option("--trace", opts.trace_path, "Recorded envelope CSV to fit against");
    figure->add_option("--figure", opts.figure, "fig2 | fig3a | fig3b | fig4 | fig5");
    auto* rabi_opt = convert->add_option("--rabi", rabi, "Rabi frequency, Gamma units");
    auto* intensity_opt = convert->add_option("--intensity", intensity, "Intensity, mW/cm^2");
    auto* duration_opt = convert->add_option("--duration-us", duration_us, "Pulse duration for photon counting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::function<int()> body;
    if (steady->parsed()) {
        body = [&] { return fwm::cli::cmd_steady(opts, std::cout); };
    } else if (propagate->parsed()) {
        body = [&] { return fwm::cli::cmd_propagate(opts, std::cout); };
    } else if (sweep->parsed()) {
        body = [&] { return fwm::cli::cmd_sweep(opts, std::cout); };
    } else if (fit->parsed()) {
        body = [&] { return fwm::cli::cmd_fit(opts, std::cout); };
    } else if (hh->parsed()) {
        body = [&] { return fwm::cli::cmd_harris_hau(opts, std::cout); };
    } else if (figure->parsed()) {
        body = [&] { return fwm::cli::cmd_reproduce_figure(opts, std::cout); };
    } else {
        body = [&] {
            fwm::cli::ConvertOptions conv;
            if (rabi_opt->count() > 0) conv.rabi = rabi;
            if (intensity_opt->count() > 0) conv.intensity = intensity;
            if (duration_opt->count() > 0) conv.duration_us = duration_us;
            return fwm::cli::cmd_convert_units(conv, std::cout);
        };
    }
    return fwm::cli::run_guarded(body, std::cerr);
}

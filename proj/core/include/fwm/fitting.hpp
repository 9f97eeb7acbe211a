#ifndef FWM_FITTING_HPP
#define FWM_FITTING_HPP

// Estimation of the driving Rabi frequency and the ground-state dephasing
// rate from a recorded pair of output pulse traces. The forward model is the
// pulsed propagation solver; the loss is the summed squared difference of
// normalized probe and signal powers at the trace sample times. The search
// runs a coarse log/linear grid scan followed by a bounded Nelder-Mead
// refinement over (omega_d, log gamma21).

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwm/propagation.hpp"
#include "fwm/units.hpp"

namespace fwm {

// A measured (or synthesized) pair of output power traces. Powers are
// normalized to the incident probe peak, as written by write_envelope_csv.
struct Trace {
    std::vector<double> time_us;
    std::vector<double> probe_power;
    std::vector<double> signal_power;
    std::vector<std::pair<std::string, std::string>> metadata;  // header key/value pairs

    void validate() const;  // throws std::domain_error with the offending row
};

// Reads the CSV produced by write_envelope_csv: '#' header lines become
// metadata, probe_out_norm / signal_out_norm become the trace powers. Throws
// io_error on malformed rows (with line numbers) or unreadable files.
Trace load_trace(std::istream& is);
Trace load_trace(const std::string& path);

// Converts a finished propagation into the equivalent trace, bypassing the
// CSV round trip. stride decimates samples.
Trace trace_from_result(const PropagationResult& result, int stride = 1,
                        const PhysicalConstants& consts = {});

struct ParameterBox {
    double omega_d_min = 0.0;
    double omega_d_max = 0.0;
    double gamma21_min = 1e-6;   // strictly positive; searched in log space
    double gamma21_max = 1e-6;

    void validate() const;  // throws std::domain_error
};

struct FitSetup {
    SystemParams params;              // gamma21 is replaced by each candidate
    PulseSpec probe;
    PulseSpec driving;                // peak_rabi is replaced by each candidate
    std::optional<PulseSpec> coupling;
    PropagationGrid grid;
    ParameterBox box;
    int max_evals = 200;              // total forward-model budget (scan + refinement)
    double trace_power_scale = 1.0;   // applied to the trace powers before comparison
    PhysicalConstants consts{};       // time-axis conversion for the trace
};

struct FitResult {
    double omega_d_hat = 0.0;
    double gamma21_hat = 0.0;
    double sse = 0.0;
    int n_evals = 0;                  // forward models run, diagnostics included
    bool converged = false;
    // Second derivatives of the loss at the optimum, finite-difference;
    // zero when the corresponding box dimension is degenerate.
    double curvature_omega_d = 0.0;
    double curvature_log_gamma21 = 0.0;
};

// Throws config_error when the grid cannot integrate the most demanding
// candidate in the box, or when max_evals cannot cover the initial scan.
FitResult fit_pulse_trace(const Trace& trace, const FitSetup& setup);

// key = value lines, one per FitResult field.
void fit_result_kv(std::ostream& os, const FitResult& result);
std::string fit_result_csv_header();
std::string fit_result_csv_row(const FitResult& result);

} // namespace fwm

#endif

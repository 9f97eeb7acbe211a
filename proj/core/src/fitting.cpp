#include "fwm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fwm/errors.hpp"
#include "fwm/nelder_mead.hpp"

namespace fwm {

void ParameterBox::validate() const {
    if (!std::isfinite(omega_d_min) || !std::isfinite(omega_d_max) ||
        !std::isfinite(gamma21_min) || !std::isfinite(gamma21_max)) {
        throw std::domain_error("ParameterBox: bounds must be finite");
    }
    if (omega_d_min < 0.0) throw std::domain_error("ParameterBox: omega_d_min must be non-negative");
    if (omega_d_max < omega_d_min) throw std::domain_error("ParameterBox: omega_d_max below omega_d_min");
    if (!(gamma21_min > 0.0)) throw std::domain_error("ParameterBox: gamma21_min must be positive (log-space search)");
    if (gamma21_max < gamma21_min) throw std::domain_error("ParameterBox: gamma21_max below gamma21_min");
}

namespace {

struct ForwardModel {
    const FitSetup& setup;
    const Trace& trace;
    int n_evals = 0;

    double operator()(double omega_d, double gamma21) {
        SystemParams p = setup.params;
        p.gamma21 = gamma21;
        PulseSpec driving = setup.driving;
        driving.peak_rabi = omega_d;
        const PropagationResult r = propagate(setup.probe, driving, p, setup.grid, setup.coupling);
        ++n_evals;

        const double us = setup.consts.us_per_gamma_time();
        const double dt = r.probe_out.dt;
        const double peak = r.probe_in.peak_power();
        const std::size_t n = r.probe_out.samples.size();
        double sse = 0.0;
        for (std::size_t k = 0; k < trace.time_us.size(); ++k) {
            const double x = trace.time_us[k] / us / dt;
            const std::size_t i0 = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(x))), n - 2);
            const double frac = std::clamp(x - static_cast<double>(i0), 0.0, 1.0);
            const double mp = ((1.0 - frac) * std::norm(r.probe_out.samples[i0]) +
                               frac * std::norm(r.probe_out.samples[i0 + 1])) / peak;
            const double ms = ((1.0 - frac) * std::norm(r.signal_out.samples[i0]) +
                               frac * std::norm(r.signal_out.samples[i0 + 1])) / peak;
            const double dp = mp - setup.trace_power_scale * trace.probe_power[k];
            const double ds = ms - setup.trace_power_scale * trace.signal_power[k];
            sse += dp * dp + ds * ds;
        }
        return sse;
    }
};

// Second difference with the stencil shifted to stay inside [lo, hi].
double second_derivative(const std::function<double(double)>& f, double x, double lo, double hi,
                         double h) {
    const double c = std::clamp(x, lo + h, hi - h);
    const double f0 = f(c - h);
    const double f1 = f(c);
    const double f2 = f(c + h);
    return (f0 - 2.0 * f1 + f2) / (h * h);
}

} // namespace

FitResult fit_pulse_trace(const Trace& trace, const FitSetup& setup) {
    trace.validate();
    setup.box.validate();
    setup.grid.validate();
    setup.params.validate();
    setup.probe.validate();
    setup.driving.validate();
    if (setup.coupling) setup.coupling->validate();
    setup.consts.validate();
    if (!(setup.trace_power_scale > 0.0) || !std::isfinite(setup.trace_power_scale)) {
        throw std::domain_error("fit_pulse_trace: trace_power_scale must be positive and finite");
    }

    const ParameterBox& box = setup.box;
    const bool degen_w = !(box.omega_d_max > box.omega_d_min);
    const bool degen_g = !(box.gamma21_max > box.gamma21_min);

    // The stiffest candidate in the box must be integrable on this grid.
    {
        SystemParams worst = setup.params;
        worst.gamma21 = box.gamma21_max;
        const double peak_c = setup.coupling ? setup.coupling->peak_rabi : setup.params.omega_c;
        const double bound = max_stable_dt(worst, peak_c, box.omega_d_max);
        if (setup.grid.dt > bound) {
            throw config_error("fit_pulse_trace: dt = " + std::to_string(setup.grid.dt) +
                               " unstable at the box corner omega_d = " + std::to_string(box.omega_d_max) +
                               "; need dt <= " + std::to_string(bound));
        }
    }
    {
        const double us = setup.consts.us_per_gamma_time();
        if (trace.time_us.front() < -1e-9) {
            throw config_error("fit_pulse_trace: trace starts before t = 0");
        }
        if (trace.time_us.back() / us > setup.grid.t_max + 0.5 * setup.grid.dt) {
            throw config_error("fit_pulse_trace: trace extends past t_max = " +
                               std::to_string(setup.grid.t_max) + " (in Gamma units: " +
                               std::to_string(trace.time_us.back() / us) + "); raise grid.t_max");
        }
    }

    ForwardModel model{setup, trace};
    FitResult result;

    if (degen_w && degen_g) {
        result.omega_d_hat = box.omega_d_min;
        result.gamma21_hat = box.gamma21_min;
        result.sse = model(box.omega_d_min, box.gamma21_min);
        result.n_evals = model.n_evals;
        result.converged = true;
        return result;
    }

    const int n_w = degen_w ? 1 : 5;
    const int n_g = degen_g ? 1 : 5;
    if (setup.max_evals < n_w * n_g + 15) {
        throw config_error("fit_pulse_trace: max_evals = " + std::to_string(setup.max_evals) +
                           " cannot cover the " + std::to_string(n_w * n_g) +
                           "-point scan plus refinement; need at least " + std::to_string(n_w * n_g + 15));
    }

    const double lg_min = std::log(box.gamma21_min);
    const double lg_max = std::log(box.gamma21_max);
    auto omega_at = [&](double u) { return box.omega_d_min + u * (box.omega_d_max - box.omega_d_min); };
    auto gamma_at = [&](double u) { return std::exp(lg_min + u * (lg_max - lg_min)); };

    double best_uw = 0.0, best_ug = 0.0;
    double best_val = 0.0;
    bool have_best = false;
    for (int i = 0; i < n_w; ++i) {
        const double uw = n_w == 1 ? 0.0 : static_cast<double>(i) / (n_w - 1);
        for (int j = 0; j < n_g; ++j) {
            const double ug = n_g == 1 ? 0.0 : static_cast<double>(j) / (n_g - 1);
            const double v = model(omega_at(uw), gamma_at(ug));
            if (!have_best || v < best_val) {
                best_val = v;
                best_uw = uw;
                best_ug = ug;
                have_best = true;
            }
        }
    }

    NelderMeadOptions nm_opts;
    nm_opts.max_evals = setup.max_evals - model.n_evals;
    nm_opts.diameter_tol = 1e-4;
    nm_opts.initial_step = 0.12;
    const NelderMeadResult nm = nelder_mead_box(
        [&](const std::vector<double>& u) { return model(omega_at(u[0]), gamma_at(u[1])); },
        {best_uw, best_ug}, nm_opts);

    result.omega_d_hat = omega_at(nm.best[0]);
    result.gamma21_hat = gamma_at(nm.best[1]);
    result.sse = nm.best_value;
    result.converged = nm.converged;

    if (!degen_w) {
        const double h = 0.05 * (box.omega_d_max - box.omega_d_min);
        result.curvature_omega_d = second_derivative(
            [&](double w) { return model(w, result.gamma21_hat); }, result.omega_d_hat,
            box.omega_d_min, box.omega_d_max, h);
    }
    if (!degen_g) {
        const double h = 0.05 * (lg_max - lg_min);
        result.curvature_log_gamma21 = second_derivative(
            [&](double lg) { return model(result.omega_d_hat, std::exp(lg)); },
            std::log(result.gamma21_hat), lg_min, lg_max, h);
    }
    result.n_evals = model.n_evals;
    return result;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

void fit_result_kv(std::ostream& os, const FitResult& result) {
    os << "omega_d_hat = " << fmt(result.omega_d_hat) << "\n"
       << "gamma21_hat = " << fmt(result.gamma21_hat) << "\n"
       << "sse = " << fmt(result.sse) << "\n"
       << "n_evals = " << result.n_evals << "\n"
       << "converged = " << (result.converged ? "true" : "false") << "\n"
       << "curvature_omega_d = " << fmt(result.curvature_omega_d) << "\n"
       << "curvature_log_gamma21 = " << fmt(result.curvature_log_gamma21) << "\n";
}

std::string fit_result_csv_header() {
    return "omega_d_hat,gamma21_hat,sse,n_evals,converged,curvature_omega_d,curvature_log_gamma21";
}

std::string fit_result_csv_row(const FitResult& result) {
    return fmt(result.omega_d_hat) + ',' + fmt(result.gamma21_hat) + ',' + fmt(result.sse) + ',' +
           std::to_string(result.n_evals) + ',' + (result.converged ? "true" : "false") + ',' +
           fmt(result.curvature_omega_d) + ',' + fmt(result.curvature_log_gamma21);
}

} // namespace fwm

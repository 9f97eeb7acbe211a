#ifndef FWM_NELDER_MEAD_HPP
#define FWM_NELDER_MEAD_HPP

// Derivative-free simplex minimizer on the unit box [0,1]^d. Candidate
// vertices are clipped to the box before evaluation, which keeps every
// objective call inside bounds without penalty terms. Deterministic for a
// deterministic objective.

#include <functional>
#include <vector>

namespace fwm {

struct NelderMeadOptions {
    int max_evals = 200;
    double diameter_tol = 1e-4;   // stop when the simplex fits in this ball
    double initial_step = 0.15;   // edge length of the starting simplex
};

struct NelderMeadResult {
    std::vector<double> best;
    double best_value = 0.0;
    int n_evals = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& objective,
                                 const std::vector<double>& start,
                                 const NelderMeadOptions& options = {});

} // namespace fwm

#endif

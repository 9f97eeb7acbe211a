#include "fwm/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fwm {

namespace {

void clip(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
}

double diameter(const std::vector<std::vector<double>>& verts) {
    double d = 0.0;
    for (std::size_t a = 0; a < verts.size(); ++a) {
        for (std::size_t b = a + 1; b < verts.size(); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < verts[a].size(); ++i) {
                const double diff = verts[a][i] - verts[b][i];
                s += diff * diff;
            }
            d = std::max(d, s);
        }
    }
    return std::sqrt(d);
}

} // namespace

NelderMeadResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& objective,
                                 const std::vector<double>& start,
                                 const NelderMeadOptions& options) {
    const std::size_t d = start.size();
    if (d == 0) throw std::domain_error("nelder_mead_box: empty start point");
    if (!(options.max_evals >= 1)) throw std::domain_error("nelder_mead_box: max_evals must be at least 1");
    if (!(options.diameter_tol > 0.0)) throw std::domain_error("nelder_mead_box: diameter_tol must be positive");
    if (!(options.initial_step > 0.0) || options.initial_step > 1.0) {
        throw std::domain_error("nelder_mead_box: initial_step must lie in (0, 1]");
    }
    for (double v : start) {
        if (!std::isfinite(v)) throw std::domain_error("nelder_mead_box: start point must be finite");
    }

    NelderMeadResult result;
    auto eval = [&](std::vector<double> x) {
        clip(x);
        const double v = objective(x);
        ++result.n_evals;
        if (result.best.empty() || v < result.best_value) {
            result.best = x;
            result.best_value = v;
        }
        return std::make_pair(std::move(x), v);
    };

    std::vector<std::vector<double>> verts;
    std::vector<double> vals;
    {
        auto [x, v] = eval(start);
        verts.push_back(std::move(x));
        vals.push_back(v);
    }
    for (std::size_t i = 0; i < d && result.n_evals < options.max_evals; ++i) {
        std::vector<double> x = verts[0];
        // Step away from the nearest bound so clipping cannot collapse the vertex.
        x[i] += (x[i] + options.initial_step <= 1.0) ? options.initial_step : -options.initial_step;
        auto [y, v] = eval(std::move(x));
        verts.push_back(std::move(y));
        vals.push_back(v);
    }
    if (verts.size() < d + 1) return result;  // budget exhausted mid-setup

    std::vector<std::size_t> order(d + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> nv(d + 1);
        std::vector<double> nf(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            nv[i] = std::move(verts[order[i]]);
            nf[i] = vals[order[i]];
        }
        verts = std::move(nv);
        vals = std::move(nf);
    };
    sort_simplex();

    while (result.n_evals < options.max_evals) {
        if (diameter(verts) < options.diameter_tol) {
            result.converged = true;
            break;
        }
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) centroid[k] += verts[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto along = [&](double coeff) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) x[k] = centroid[k] + coeff * (centroid[k] - verts[d][k]);
            return x;
        };

        auto [xr, fr] = eval(along(1.0));  // reflect
        if (fr < vals[0]) {
            if (result.n_evals < options.max_evals) {
                auto [xe, fe] = eval(along(2.0));  // expand
                if (fe < fr) {
                    verts[d] = std::move(xe);
                    vals[d] = fe;
                } else {
                    verts[d] = std::move(xr);
                    vals[d] = fr;
                }
            } else {
                verts[d] = std::move(xr);
                vals[d] = fr;
            }
        } else if (fr < vals[d - 1]) {
            verts[d] = std::move(xr);
            vals[d] = fr;
        } else if (result.n_evals < options.max_evals) {
            const bool outside = fr < vals[d];
            auto [xc, fc] = eval(along(outside ? 0.5 : -0.5));  // contract
            if (fc < std::min(fr, vals[d])) {
                verts[d] = std::move(xc);
                vals[d] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 1; i <= d && result.n_evals < options.max_evals; ++i) {
                    std::vector<double> x(d);
                    for (std::size_t k = 0; k < d; ++k) x[k] = 0.5 * (verts[0][k] + verts[i][k]);
                    auto [y, v] = eval(std::move(x));
                    verts[i] = std::move(y);
                    vals[i] = v;
                }
            }
        }
        sort_simplex();
    }
    return result;
}

} // namespace fwm

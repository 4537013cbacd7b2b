#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace speckit::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0;
    long evals = 0;
};

/// Deterministic Nelder-Mead with best-so-far tracking and a hard cap on
/// objective evaluations. Stops early when the simplex collapses in both
/// coordinates and values.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double step, long max_evals,
                                    double xtol = 1e-10, double ftol = 1e-12) {
    const size_t n = x0.size();
    NelderMeadResult best;
    best.x = x0;
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        if (evals == 1 || v < best.value) {
            best.value = v;
            best.x = x;
        }
        return v;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> vals(n + 1);
    vals[0] = eval(simplex[0]);
    for (size_t i = 0; i < n && evals < max_evals; ++i) {
        simplex[i + 1][i] += step;
        vals[i + 1] = eval(simplex[i + 1]);
    }

    while (evals < max_evals) {
        std::vector<size_t> order(n + 1);
        for (size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        const size_t lo = order[0], hi = order[n], second_hi = order[n - 1];

        double spread_x = 0, spread_f = std::abs(vals[hi] - vals[lo]);
        for (size_t i = 0; i < n; ++i)
            spread_x = std::max(spread_x, std::abs(simplex[hi][i] - simplex[lo][i]));
        if (spread_x < xtol && spread_f < ftol) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i)
            if (i != hi)
                for (size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;

        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
            return p;
        };

        std::vector<double> refl = blend(-1.0);
        const double fr = eval(refl);
        if (fr < vals[lo]) {
            std::vector<double> exp_pt = blend(-2.0);
            const double fe = eval(exp_pt);
            if (fe < fr) {
                simplex[hi] = exp_pt;
                vals[hi] = fe;
            } else {
                simplex[hi] = refl;
                vals[hi] = fr;
            }
        } else if (fr < vals[second_hi]) {
            simplex[hi] = refl;
            vals[hi] = fr;
        } else {
            std::vector<double> con = blend(fr < vals[hi] ? -0.5 : 0.5);
            const double fc = eval(con);
            if (fc < std::min(vals[hi], fr)) {
                simplex[hi] = con;
                vals[hi] = fc;
            } else {
                for (size_t i = 0; i <= n; ++i) {
                    if (i == lo) continue;
                    for (size_t d = 0; d < n; ++d)
                        simplex[i][d] = simplex[lo][d] + 0.5 * (simplex[i][d] - simplex[lo][d]);
                    vals[i] = eval(simplex[i]);
                    if (evals >= max_evals) break;
                }
            }
        }
    }
    best.evals = evals;
    return best;
}

} // namespace speckit::detail

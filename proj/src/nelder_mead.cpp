#include "imdd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace imdd {

namespace {

double guarded(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

} // namespace

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> start, const NmOptions& opts) {
    const std::size_t n = start.size();
    NmResult result;
    if (n == 0) {
        result.x = std::move(start);
        result.fx = guarded(f(result.x));
        result.evals = 1;
        return result;
    }

    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += opts.init_step;
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = guarded(f(pts[i]));
        ++evals;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    while (evals < opts.max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second = order[n - 1];

        // converged once the simplex values have collapsed
        const double denom = std::max(std::abs(fv[best]), 1e-300);
        if (std::isfinite(fv[worst]) && (fv[worst] - fv[best]) / denom < opts.rel_tol)
            break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst)
                continue;
            for (std::size_t d = 0; d < n; ++d)
                centroid[d] += pts[k][d];
        }
        for (double& v : centroid)
            v /= static_cast<double>(n);

        for (std::size_t d = 0; d < n; ++d)
            xr[d] = centroid[d] + (centroid[d] - pts[worst][d]);
        const double fr = guarded(f(xr));
        ++evals;

        if (fr < fv[best]) {
            for (std::size_t d = 0; d < n; ++d)
                xe[d] = centroid[d] + 2.0 * (centroid[d] - pts[worst][d]);
            const double fe = guarded(f(xe));
            ++evals;
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // contraction: outside if the reflection helped at all, else inside
        if (fr < fv[worst]) {
            for (std::size_t d = 0; d < n; ++d)
                xc[d] = centroid[d] + 0.5 * (xr[d] - centroid[d]);
            const double fc = guarded(f(xc));
            ++evals;
            if (fc <= fr) {
                pts[worst] = xc;
                fv[worst] = fc;
                continue;
            }
        } else {
            for (std::size_t d = 0; d < n; ++d)
                xc[d] = centroid[d] - 0.5 * (centroid[d] - pts[worst][d]);
            const double fc = guarded(f(xc));
            ++evals;
            if (fc < fv[worst]) {
                pts[worst] = xc;
                fv[worst] = fc;
                continue;
            }
        }
        // shrink toward the best vertex
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == best)
                continue;
            for (std::size_t d = 0; d < n; ++d)
                pts[k][d] = pts[best][d] + 0.5 * (pts[k][d] - pts[best][d]);
            fv[k] = guarded(f(pts[k]));
            ++evals;
            if (evals >= opts.max_evals)
                break;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best])
            best = i;
    result.x = pts[best];
    result.fx = fv[best];
    result.evals = evals;
    return result;
}

} // namespace imdd

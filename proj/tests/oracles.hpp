#ifndef IMDD_TESTS_ORACLES_HPP
#define IMDD_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. These must not
// share code paths with the library routines they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "imdd/link_model.hpp"
#include "imdd/rng.hpp"

namespace oracles {

// Log of prior-weighted conditional density, up to the common normalization.
inline double weighted_log_density(double r, double x, double sigma, double p) {
    const double z = (r - x) / sigma;
    return std::log(p) - std::log(sigma) - 0.5 * z * z;
}

// Root of P_i p(r|x_i) = P_j p(r|x_j) by bisection, for sigma_j > sigma_i.
// The log-density difference is a concave parabola with vertex at -b/a; the
// crossing right of the vertex is the one the detector uses.
inline double bisect_threshold(double x_i, double x_j, double sigma_i, double sigma_j,
                               double p_i, double p_j) {
    const auto g = [&](double r) {
        return weighted_log_density(r, x_i, sigma_i, p_i) -
               weighted_log_density(r, x_j, sigma_j, p_j);
    };
    const double vi = sigma_i * sigma_i;
    const double vj = sigma_j * sigma_j;
    const double vertex = (x_i * vj - x_j * vi) / (vj - vi);
    if (!(g(vertex) > 0.0))
        throw std::domain_error("densities never cross: no threshold");
    double step = std::max(1.0, std::abs(x_j - x_i));
    double hi = vertex + step;
    while (g(hi) > 0.0) {
        step *= 2.0;
        hi = vertex + step;
        if (step > 1e12)
            throw std::domain_error("no sign change found");
    }
    double lo = vertex;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Monte Carlo mutual-information estimator: sample average of the information
// density log2[p(y|x) / sum_k P_k p(y|x_k)] over channel draws.
inline double mc_mutual_information(const imdd::ChannelModel& m, std::uint64_t n,
                                    std::uint64_t seed) {
    const auto& c = m.constellation();
    const std::size_t sym_count = c.size();
    std::vector<double> cum(sym_count);
    double acc = 0.0;
    for (std::size_t i = 0; i < sym_count; ++i) {
        acc += c.prob(i);
        cum[i] = acc;
    }
    cum.back() = std::numeric_limits<double>::infinity();

    auto gen = imdd::substream(seed, 0);
    double total = 0.0;
    std::vector<double> score(sym_count);
    for (std::uint64_t k = 0; k < n; ++k) {
        const double u = imdd::uniform_unit(gen);
        std::size_t sym = 0;
        while (cum[sym] <= u)
            ++sym;
        const double y = c.point(sym) + imdd::standard_normal(gen) * m.cond_sigma(sym);
        double max_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sym_count; ++i) {
            score[i] = c.prob(i) > 0.0
                           ? weighted_log_density(y, c.point(i), m.cond_sigma(i), c.prob(i))
                           : -std::numeric_limits<double>::infinity();
            max_score = std::max(max_score, score[i]);
        }
        double denom = 0.0;
        for (double s : score)
            denom += std::exp(s - max_score);
        const double log_mix = max_score + std::log(denom);
        const double log_cond =
            weighted_log_density(y, c.point(sym), m.cond_sigma(sym), 1.0);
        total += (log_cond - log_mix) / std::log(2.0);
    }
    return total / static_cast<double>(n);
}

// Exhaustive search over the 4-symbol probability simplex at a fixed
// resolution, keeping the best feasible objective value.
inline double simplex_grid_min(int steps, double h_min,
                               const std::function<double(const std::vector<double>&)>& objective) {
    const double unit = 1.0 / steps;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> p(4);
    for (int a = 1; a < steps; ++a)
        for (int b = 1; b < steps - a; ++b)
            for (int c = 1; c < steps - a - b; ++c) {
                const int d = steps - a - b - c;
                if (d < 1)
                    continue;
                p = {a * unit, b * unit, c * unit, d * unit};
                double h = 0.0;
                for (double v : p)
                    h -= v * std::log2(v);
                if (h < h_min)
                    continue;
                best = std::min(best, objective(p));
            }
    return best;
}

// 1-D golden-section maximizer on [lo, hi].
inline double golden_section_max(double lo, double hi,
                                 const std::function<double(double)>& f) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace oracles

#endif

#include "imdd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imdd/gauss_hermite.hpp"

namespace imdd {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kLn2 = 0.69314718055994530942;

// Smallest sigma the quadrature can carry; below this the conditional density
// behaves as a point mass and the integrand limit is -log2 P_X(x_i).
constexpr double kSigmaFloor = 1e-154;

double clamp_tiny(double v, bool& flagged) {
    if (v > 0.0 && v < kSerClampFloor) {
        flagged = true;
        return 0.0;
    }
    return v;
}

} // namespace

double q_function(double x) {
    return 0.5 * std::erfc(x / kSqrt2);
}

SerBreakdown analytic_ser(const ChannelModel& m, const ThresholdSet& t) {
    const auto& c = m.constellation();
    const auto& r = t.thresholds();
    const double inf = std::numeric_limits<double>::infinity();
    SerBreakdown out;
    out.per_symbol.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double lo = (i == 0) ? -inf : r[i - 1];
        const double hi = (i + 1 == c.size()) ? inf : r[i];
        const double x = c.point(i);
        const double s = m.cond_sigma(i);
        double pe;
        if (s == 0.0) {
            pe = (x >= lo && x < hi) ? 0.0 : 1.0; // boundary decides rightward
        } else {
            pe = q_function((x - lo) / s) + q_function((hi - x) / s);
        }
        out.per_symbol[i] = clamp_tiny(pe, out.underflow_clamped);
        out.average += c.prob(i) * out.per_symbol[i];
    }
    out.average = clamp_tiny(out.average, out.underflow_clamped);
    return out;
}

double mutual_information(const ChannelModel& m, int quad_order) {
    const auto& c = m.constellation();
    const std::size_t n = c.size();

    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i)
        if (m.cond_sigma(i) > 0.0)
            all_zero = false;
    const double h = entropy(c);
    if (all_zero)
        return h;

    std::vector<double> sigma(n), log_sigma(n), log_prob(n);
    for (std::size_t i = 0; i < n; ++i) {
        sigma[i] = std::max(m.cond_sigma(i), kSigmaFloor);
        log_sigma[i] = std::log(sigma[i]);
        log_prob[i] = c.prob(i) > 0.0 ? std::log(c.prob(i))
                                      : -std::numeric_limits<double>::infinity();
    }

    const GhTable& gh = gauss_hermite(quad_order);
    double mi = 0.0;
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double pi = c.prob(i);
        if (pi <= 0.0)
            continue;
        double acc = 0.0;
        for (std::size_t q = 0; q < gh.nodes.size(); ++q) {
            const double y = c.point(i) + kSqrt2 * sigma[i] * gh.nodes[q];
            double max_score = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < n; ++k) {
                const double z = (y - c.point(k)) / sigma[k];
                score[k] = log_prob[k] - log_sigma[k] - 0.5 * z * z;
                max_score = std::max(max_score, score[k]);
            }
            double denom = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                denom += std::exp(score[k] - max_score);
            const double log_mix = max_score + std::log(denom);
            const double zi = (y - c.point(i)) / sigma[i];
            const double log_cond = -log_sigma[i] - 0.5 * zi * zi;
            acc += gh.weights[q] * (log_cond - log_mix);
        }
        mi += pi * kInvSqrtPi * acc / kLn2;
    }
    return std::clamp(mi, 0.0, h);
}

} // namespace imdd

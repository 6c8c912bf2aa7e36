#include "imdd/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "imdd/errors.hpp"

namespace imdd {

namespace {
constexpr double kVarEps = 1e-12; // relative variance gap below which pairs count as AWGN
}

std::string_view rule_token(ThresholdRule rule) {
    switch (rule) {
    case ThresholdRule::OptimalExact: return "optimal";
    case ThresholdRule::UniformExact: return "uniform-exact";
    case ThresholdRule::UniformApprox: return "approx";
    case ThresholdRule::AwgnExact: return "awgn";
    }
    return "?";
}

std::optional<ThresholdRule> rule_from_token(std::string_view token) {
    if (token == "optimal") return ThresholdRule::OptimalExact;
    if (token == "uniform-exact") return ThresholdRule::UniformExact;
    if (token == "approx") return ThresholdRule::UniformApprox;
    if (token == "awgn") return ThresholdRule::AwgnExact;
    return std::nullopt;
}

ThresholdSet::ThresholdSet(std::vector<double> thresholds, ThresholdRule rule)
    : thresholds_(std::move(thresholds)), rule_(rule) {
    for (std::size_t i = 1; i < thresholds_.size(); ++i)
        if (!(thresholds_[i] > thresholds_[i - 1]))
            throw NonMonotoneThresholds("thresholds must be strictly increasing");
}

double optimal_threshold(double x_i, double x_j, double sigma_i, double sigma_j,
                         double p_i, double p_j) {
    if (p_i <= 0.0 || p_j <= 0.0)
        throw ZeroProbability("optimal threshold needs both priors > 0");
    const double vi = sigma_i * sigma_i;
    const double vj = sigma_j * sigma_j;
    const double a = vj - vi;
    if (std::abs(a) < kVarEps * std::max(vi, vj))
        throw EqualVariances("variance gap below epsilon; use awgn_threshold");
    const double log_term = std::log((p_i / p_j) * (sigma_j / sigma_i));
    const double gap = x_j - x_i;
    const double disc = gap * gap + 2.0 * a * log_term;
    if (disc < 0.0)
        throw NegativeDiscriminant("scaled densities never cross; MAP region is empty");
    // a r^2 + 2 b r + (c - d) = 0 with the "+" branch root. The direct form
    // cancels when b > 0, so take the root-product form there instead.
    const double b = vi * x_j - vj * x_i;
    const double root = sigma_i * sigma_j * std::sqrt(disc);
    if (b <= 0.0)
        return (-b + root) / a;
    const double c_minus_d = vj * x_i * x_i - vi * x_j * x_j - 2.0 * vi * vj * log_term;
    return c_minus_d / (-b - root);
}

double uniform_exact_threshold(double x_i, double x_j, double sigma_i, double sigma_j) {
    return optimal_threshold(x_i, x_j, sigma_i, sigma_j, 0.5, 0.5);
}

double approx_threshold(double x_i, double x_j, double sigma_i, double sigma_j) {
    return (x_i * sigma_j + x_j * sigma_i) / (sigma_i + sigma_j);
}

double awgn_threshold(double x_i, double x_j, double sigma2, double p_i, double p_j) {
    if (p_i <= 0.0 || p_j <= 0.0)
        throw ZeroProbability("awgn threshold needs both priors > 0");
    return sigma2 / (x_j - x_i) * std::log(p_i / p_j) + 0.5 * (x_i + x_j);
}

ThresholdSet build_thresholds(const ChannelModel& m, ThresholdRule rule) {
    const auto& c = m.constellation();
    std::vector<double> r(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const std::size_t j = i + 1;
        const double xi = c.point(i);
        const double xj = c.point(j);
        const double si = m.cond_sigma(i);
        const double sj = m.cond_sigma(j);
        const double vi = si * si;
        const double vj = sj * sj;
        const bool equal_var = std::abs(vj - vi) < kVarEps * std::max(vi, vj);
        switch (rule) {
        case ThresholdRule::OptimalExact:
            r[i] = equal_var ? awgn_threshold(xi, xj, vi, c.prob(i), c.prob(j))
                             : optimal_threshold(xi, xj, si, sj, c.prob(i), c.prob(j));
            break;
        case ThresholdRule::UniformExact:
            r[i] = equal_var ? 0.5 * (xi + xj) : uniform_exact_threshold(xi, xj, si, sj);
            break;
        case ThresholdRule::UniformApprox:
            r[i] = approx_threshold(xi, xj, si, sj);
            break;
        case ThresholdRule::AwgnExact:
            // thermal-only channel view: RIN contribution ignored
            r[i] = awgn_threshold(xi, xj, m.sigma_ele2(), c.prob(i), c.prob(j));
            break;
        }
    }
    return ThresholdSet(std::move(r), rule);
}

std::size_t detect_threshold(double y, const ThresholdSet& t) {
    const auto& r = t.thresholds();
    return static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), y) - r.begin());
}

std::size_t detect_map(double y, const ChannelModel& m) {
    const auto& c = m.constellation();
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double p = c.prob(i);
        if (p <= 0.0)
            continue;
        const double s = m.cond_sigma(i);
        double score;
        if (s == 0.0) {
            score = (y == c.point(i)) ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
        } else {
            const double z = (y - c.point(i)) / s;
            score = std::log(p) - std::log(s) - 0.5 * z * z;
        }
        if (!found || score > best_score) {
            best = i;
            best_score = score;
            found = true;
        }
    }
    return best;
}

} // namespace imdd

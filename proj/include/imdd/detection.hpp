#ifndef IMDD_DETECTION_HPP
#define IMDD_DETECTION_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "imdd/link_model.hpp"

namespace imdd {

enum class ThresholdRule {
    OptimalExact,  // prior-aware quadratic solution
    UniformExact,  // equal priors, exact
    UniformApprox, // (x_i sigma_j + x_j sigma_i)/(sigma_i + sigma_j)
    AwgnExact,     // equal variances, prior-aware
};

std::string_view rule_token(ThresholdRule rule);
std::optional<ThresholdRule> rule_from_token(std::string_view token);

/// Ordered slicer thresholds r_0 < ... < r_{M-2} plus the rule that built them.
class ThresholdSet {
public:
    // Throws NonMonotoneThresholds unless strictly increasing.
    ThresholdSet(std::vector<double> thresholds, ThresholdRule rule);

    const std::vector<double>& thresholds() const { return thresholds_; }
    ThresholdRule rule() const { return rule_; }

private:
    std::vector<double> thresholds_;
    ThresholdRule rule_;
};

// The "+" root of the MAP density-equality quadratic between adjacent symbols
// (x_i, sigma_i, p_i) and (x_j, sigma_j, p_j) with x_j > x_i.
// Throws EqualVariances when |sigma_j^2 - sigma_i^2| < 1e-12 sigma_j^2 (use
// awgn_threshold), NegativeDiscriminant when the densities never cross, and
// ZeroProbability for p_i or p_j = 0.
double optimal_threshold(double x_i, double x_j, double sigma_i, double sigma_j,
                         double p_i, double p_j);

// Equal-prior specialization of optimal_threshold.
double uniform_exact_threshold(double x_i, double x_j, double sigma_i, double sigma_j);

// Sigma-weighted midpoint approximation; ignores priors by construction.
double approx_threshold(double x_i, double x_j, double sigma_i, double sigma_j);

// Equal-variance (AWGN) prior-aware threshold.
double awgn_threshold(double x_i, double x_j, double sigma2, double p_i, double p_j);

// Thresholds over all adjacent pairs under the given rule. AwgnExact uses the
// thermal-only variance sigma_ele^2. Near-equal pair variances dispatch to the
// AWGN form. Throws NonMonotoneThresholds if the assembled list is not
// strictly increasing (callers should fall back to detect_map).
ThresholdSet build_thresholds(const ChannelModel& m, ThresholdRule rule);

// Slicer: index i with y in [r_{i-1}, r_i); boundary values go rightward.
std::size_t detect_threshold(double y, const ThresholdSet& t);

// Full MAP argmax over log P_X(x_i) - log sigma_i - (y - x_i)^2 / (2 sigma_i^2).
// Zero-probability symbols never win; ties break toward the lower index.
std::size_t detect_map(double y, const ChannelModel& m);

} // namespace imdd

#endif

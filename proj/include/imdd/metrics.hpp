#ifndef IMDD_METRICS_HPP
#define IMDD_METRICS_HPP

#include <vector>

#include "imdd/detection.hpp"
#include "imdd/link_model.hpp"

namespace imdd {

// 128 nodes leave ~1e-8 quadrature residue on shaped PAM-8; 256 holds the
// doubling test under 1e-9 across every supported regime.
inline constexpr int kDefaultGhOrder = 256;

// Values below this are not meaningfully representable; clamp and flag.
inline constexpr double kSerClampFloor = 1e-320;

/// Per-symbol and average symbol error probabilities.
struct SerBreakdown {
    std::vector<double> per_symbol;
    double average = 0.0;
    bool underflow_clamped = false;
};

// Gaussian tail Q(x) = P(N(0,1) > x), via erfc in the scaled domain.
double q_function(double x);

// Closed-form SER for a monotone threshold set:
// per_symbol[i] = Q((x_i - r_{i-1})/sigma_i) + Q((r_i - x_i)/sigma_i).
SerBreakdown analytic_ser(const ChannelModel& m, const ThresholdSet& t);

// Mutual information I(X;Y) in bits by per-symbol Gauss-Hermite quadrature
// (change of variable y = x_i + sqrt(2) sigma_i u). Clamped to [0, H(X)].
double mutual_information(const ChannelModel& m, int quad_order = kDefaultGhOrder);

} // namespace imdd

#endif

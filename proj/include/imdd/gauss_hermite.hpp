#ifndef IMDD_GAUSS_HERMITE_HPP
#define IMDD_GAUSS_HERMITE_HPP

#include <vector>

namespace imdd {

/// Gauss-Hermite rule for integrals against exp(-u^2) on the real line.
struct GhTable {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights for the n-point rule, computed once per order and cached.
const GhTable& gauss_hermite(int n);

} // namespace imdd

#endif

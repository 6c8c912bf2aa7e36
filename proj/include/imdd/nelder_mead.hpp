#ifndef IMDD_NELDER_MEAD_HPP
#define IMDD_NELDER_MEAD_HPP

#include <functional>
#include <vector>

namespace imdd {

struct NmOptions {
    int max_evals = 2000;
    double rel_tol = 1e-12; // relative best-value improvement per cycle
    double init_step = 0.5; // initial simplex edge along each axis
};

struct NmResult {
    std::vector<double> x;
    double fx = 0.0;
    int evals = 0;
};

// Derivative-free simplex minimizer (standard reflection/expansion/
// contraction/shrink coefficients 1, 2, 0.5, 0.5). The objective may return
// +inf to mark infeasible points.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> start, const NmOptions& opts = {});

} // namespace imdd

#endif

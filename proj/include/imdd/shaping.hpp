#ifndef IMDD_SHAPING_HPP
#define IMDD_SHAPING_HPP

#include <optional>

#include <json.hpp>

#include "imdd/detection.hpp"
#include "imdd/link_model.hpp"

namespace imdd {

/// Geometric shaping: minimize SER over interior point locations with the
/// outermost points pinned at -(M-1), +(M-1) and a minimum interior gap.
struct GsProblem {
    Constellation base;        // uniform probabilities
    double oma_dbm = 0.0;
    ThresholdRule rule = ThresholdRule::OptimalExact;
    double min_gap = 1e-3;     // symbol units
};

enum class PsObjective { MinSer, MaxMi };

/// Probabilistic shaping on a fixed grid: minimize SER under an entropy floor,
/// or maximize mutual information (entropy floor optional there).
struct PsProblem {
    Constellation base;        // fixed, equally spaced grid
    double oma_dbm = 0.0;
    ThresholdRule rule = ThresholdRule::OptimalExact;
    PsObjective objective = PsObjective::MinSer;
    std::optional<double> h_min; // bits; required for MinSer
};

/// Optimization result with full provenance for serialization.
struct ShapingOutcome {
    Constellation shaped;
    ThresholdRule rule;
    double oma_dbm = 0.0;
    double start_objective = 0.0;  // SER or MI at the canonical start
    double final_objective = 0.0;  // same metric at the returned solution
    int evaluations = 0;           // total objective evaluations
    int best_restart = 0;          // restart index that produced the winner
    double entropy_bits = 0.0;
    double entropy_residual = 0.0; // max(0, h_min - H), bits
    double prob_sum_residual = 0.0;

    nlohmann::json to_json() const;
};

ShapingOutcome optimize_gs(const GsProblem& p, const LinkParams& params);
ShapingOutcome optimize_ps_ser(const PsProblem& p, const LinkParams& params);
ShapingOutcome optimize_ps_mi(const PsProblem& p, const LinkParams& params);

} // namespace imdd

#endif

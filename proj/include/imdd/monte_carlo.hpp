#ifndef IMDD_MONTE_CARLO_HPP
#define IMDD_MONTE_CARLO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "imdd/detection.hpp"
#include "imdd/link_model.hpp"

namespace imdd {

struct McConfig {
    std::uint64_t seed = 1;
    std::uint64_t min_errors = 100;          // stop once accumulated
    std::uint64_t max_symbols = 1000000000;  // hard cap
    std::uint64_t batch = 65536;             // symbols per substream chunk

    void validate() const; // throws std::invalid_argument
};

struct ArgmaxMap {};
using Detector = std::variant<ThresholdSet, ArgmaxMap>;

struct McResult {
    std::uint64_t symbols = 0;
    std::uint64_t errors = 0;
    double ser = 0.0;
    double ci95_half_width = 0.0; // 1.96 sqrt(ser (1-ser) / symbols)
    std::string detector;
    // conditional tallies indexed by transmitted symbol
    std::vector<std::uint64_t> per_symbol_sent;
    std::vector<std::uint64_t> per_symbol_errors;
};

// Draw X ~ P_X, Z ~ N(0,1), form Y = x + z sigma(x), detect, tally. Runs whole
// batches (substream = batch index) until min_errors or max_symbols, so the
// result is bit-identical for a given (seed, batch) regardless of thread count.
McResult simulate(const ChannelModel& m, const Detector& detector, const McConfig& cfg);

struct RuleOutcome {
    ThresholdRule rule;
    std::optional<double> analytic_ser;
    std::optional<McResult> mc;
    std::string error; // empty = ok, else the threshold failure message
};

/// One OMA grid point: analytic + Monte Carlo SER per rule, MI, entropy.
struct SweepResult {
    double oma_dbm = 0.0;
    std::vector<RuleOutcome> rules;
    double mi_bits = 0.0;
    double entropy_bits = 0.0;
    std::string status = "ok"; // "ok" | "threshold_error"
};

// Rebuild the channel at every OMA point and evaluate all requested rules.
// Per-point threshold failures are recorded in the outcome, not thrown.
std::vector<SweepResult> sweep(const LinkParams& params, const Constellation& c,
                               const std::vector<double>& oma_grid_dbm,
                               const std::vector<ThresholdRule>& rules,
                               const McConfig& cfg);

} // namespace imdd

#endif

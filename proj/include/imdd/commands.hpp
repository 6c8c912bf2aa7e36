#ifndef IMDD_COMMANDS_HPP
#define IMDD_COMMANDS_HPP

#include <optional>
#include <ostream>
#include <string>

#include "imdd/config.hpp"

namespace imdd {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAllPointsFailed = 3;
inline constexpr int kExitSolverFailure = 4;

// OMA sweep: CSV (stable column order) to cfg.outputs.csv_path or `out`,
// optional JSON mirror with config echo and seed provenance.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Print all four threshold variants side by side at one OMA point, with
// per-pair MAP-equality residuals for the exact rule. Per-variant errors are
// reported inline.
int cmd_thresholds(const RunConfig& cfg, double oma_dbm, std::ostream& out, std::ostream& err);

enum class OptimizeMode { Gs, PsSer, PsMi };

// Run the requested shaping optimization for every rule in cfg.rules and
// write the shaped constellation plus before/after SER/MI report (JSON).
int cmd_optimize(const RunConfig& cfg, OptimizeMode mode, double oma_dbm,
                 std::optional<double> h_min, std::ostream& out, std::ostream& err);

} // namespace imdd

#endif

#include "imdd/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "imdd/errors.hpp"
#include "imdd/metrics.hpp"
#include "imdd/monte_carlo.hpp"
#include "imdd/shaping.hpp"

namespace imdd {

namespace {

constexpr const char* kVersion = "rinpam 0.1.0";

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string column_token(ThresholdRule rule) {
    std::string t(rule_token(rule));
    for (char& ch : t)
        if (ch == '-')
            ch = '_';
    return t;
}

std::string sweep_csv(const std::vector<SweepResult>& results,
                      const std::vector<ThresholdRule>& rules) {
    std::ostringstream csv;
    csv << "oma_dbm";
    for (ThresholdRule r : rules)
        csv << ",analytic_ser_" << column_token(r);
    for (ThresholdRule r : rules)
        csv << ",mc_ser_" << column_token(r);
    for (ThresholdRule r : rules)
        csv << ",mc_ci95_" << column_token(r);
    csv << ",mi_bits,entropy_bits,status\n";
    for (const auto& point : results) {
        csv << fmt9(point.oma_dbm);
        for (const auto& rule : point.rules)
            csv << ',' << (rule.analytic_ser ? fmt9(*rule.analytic_ser) : "nan");
        for (const auto& rule : point.rules)
            csv << ',' << (rule.mc ? fmt9(rule.mc->ser) : "nan");
        for (const auto& rule : point.rules)
            csv << ',' << (rule.mc ? fmt9(rule.mc->ci95_half_width) : "nan");
        csv << ',' << fmt9(point.mi_bits) << ',' << fmt9(point.entropy_bits) << ','
            << point.status << '\n';
    }
    return csv.str();
}

nlohmann::json mc_to_json(const McResult& mc) {
    return nlohmann::json{{"symbols", mc.symbols},
                          {"errors", mc.errors},
                          {"ser", mc.ser},
                          {"ci95_half_width", mc.ci95_half_width},
                          {"detector", mc.detector}};
}

nlohmann::json sweep_json(const RunConfig& cfg, const std::vector<SweepResult>& results) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& point : results) {
        nlohmann::json row{{"oma_dbm", point.oma_dbm},
                           {"mi_bits", point.mi_bits},
                           {"entropy_bits", point.entropy_bits},
                           {"status", point.status}};
        nlohmann::json rules = nlohmann::json::array();
        for (const auto& rule : point.rules) {
            nlohmann::json r{{"rule", std::string(rule_token(rule.rule))}};
            if (rule.analytic_ser)
                r["analytic_ser"] = *rule.analytic_ser;
            if (rule.mc)
                r["mc"] = mc_to_json(*rule.mc);
            if (!rule.error.empty())
                r["error"] = rule.error;
            rules.push_back(std::move(r));
        }
        row["rules"] = std::move(rules);
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"generator", kVersion},
                          {"seed", cfg.mc.seed},
                          {"config", cfg.to_json()},
                          {"results", std::move(rows)}};
}

bool write_file(const std::string& path, const std::string& body, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "cannot open output file: " << path << "\n";
        return false;
    }
    f << body;
    return true;
}

// max-relative density mismatch at a threshold, in log domain to survive tails
double map_residual(const ChannelModel& m, double r, std::size_t i) {
    const auto& c = m.constellation();
    const auto score = [&](std::size_t k) {
        const double z = (r - c.point(k)) / m.cond_sigma(k);
        return std::log(c.prob(k)) - std::log(m.cond_sigma(k)) - 0.5 * z * z;
    };
    return -std::expm1(-std::abs(score(i) - score(i + 1)));
}

} // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<SweepResult> results;
    try {
        results = sweep(cfg.link, cfg.constellation, cfg.grid.points(), cfg.rules, cfg.mc);
    } catch (const std::exception& e) {
        err << "sweep failed: " << e.what() << "\n";
        return kExitConfig;
    }

    if (!cfg.rules.empty()) {
        bool all_failed = true;
        for (const auto& point : results)
            for (const auto& rule : point.rules)
                if (rule.error.empty())
                    all_failed = false;
        if (all_failed) {
            err << "every sweep point failed threshold construction\n";
            return kExitAllPointsFailed;
        }
    }

    const std::string csv = sweep_csv(results, cfg.rules);
    if (cfg.outputs.csv_path.empty())
        out << csv;
    else if (!write_file(cfg.outputs.csv_path, csv, err))
        return kExitConfig;
    if (!cfg.outputs.json_path.empty()) {
        if (!write_file(cfg.outputs.json_path, sweep_json(cfg, results).dump(2) + "\n", err))
            return kExitConfig;
    }
    return kExitOk;
}

int cmd_thresholds(const RunConfig& cfg, double oma_dbm, std::ostream& out, std::ostream& err) {
    std::optional<ChannelModel> model;
    try {
        model.emplace(build_channel(cfg.link, cfg.constellation, oma_dbm));
    } catch (const std::exception& e) {
        err << "cannot build channel: " << e.what() << "\n";
        return kExitConfig;
    }

    out << "thresholds at OMA = " << fmt9(oma_dbm) << " dBm\n";
    const ThresholdRule variants[] = {ThresholdRule::OptimalExact, ThresholdRule::UniformExact,
                                      ThresholdRule::UniformApprox, ThresholdRule::AwgnExact};
    for (ThresholdRule rule : variants) {
        out << rule_token(rule) << ": ";
        try {
            const ThresholdSet t = build_thresholds(*model, rule);
            for (std::size_t i = 0; i < t.thresholds().size(); ++i)
                out << (i ? " " : "") << fmt9(t.thresholds()[i]);
            out << "\n";
            if (rule == ThresholdRule::OptimalExact) {
                out << "  map-equality residuals:";
                for (std::size_t i = 0; i < t.thresholds().size(); ++i)
                    out << ' ' << fmt9(map_residual(*model, t.thresholds()[i], i));
                out << "\n";
            }
        } catch (const Error& e) {
            out << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

namespace {

nlohmann::json evaluate_point(const LinkParams& link, const Constellation& c, double oma_dbm) {
    nlohmann::json doc{{"constellation", c.to_json()}, {"entropy_bits", entropy(c)}};
    const ChannelModel model = build_channel(link, c, oma_dbm);
    doc["mi_bits"] = mutual_information(model);
    for (ThresholdRule rule : {ThresholdRule::OptimalExact, ThresholdRule::UniformApprox}) {
        const std::string key = "ser_" + column_token(rule);
        try {
            doc[key] = analytic_ser(model, build_thresholds(model, rule)).average;
        } catch (const Error& e) {
            doc[key] = nullptr;
            doc[key + "_error"] = e.what();
        }
    }
    return doc;
}

} // namespace

int cmd_optimize(const RunConfig& cfg, OptimizeMode mode, double oma_dbm,
                 std::optional<double> h_min, std::ostream& out, std::ostream& err) {
    if (mode == OptimizeMode::PsSer && !h_min) {
        err << "config error: field 'h_min': required for mode ps-ser\n";
        return kExitConfig;
    }
    const char* mode_name = mode == OptimizeMode::Gs      ? "gs"
                            : mode == OptimizeMode::PsSer ? "ps-ser"
                                                          : "ps-mi";
    nlohmann::json doc{{"generator", kVersion}, {"mode", mode_name}, {"oma_dbm", oma_dbm}};
    if (h_min)
        doc["h_min"] = *h_min;
    doc["start"] = evaluate_point(cfg.link, cfg.constellation, oma_dbm);
    nlohmann::json runs = nlohmann::json::array();

    for (ThresholdRule rule : cfg.rules) {
        nlohmann::json run{{"objective_rule", std::string(rule_token(rule))}};
        try {
            ShapingOutcome outcome = [&] {
                switch (mode) {
                case OptimizeMode::Gs:
                    return optimize_gs(GsProblem{cfg.constellation, oma_dbm, rule}, cfg.link);
                case OptimizeMode::PsSer:
                    return optimize_ps_ser(
                        PsProblem{cfg.constellation, oma_dbm, rule, PsObjective::MinSer, h_min},
                        cfg.link);
                default:
                    return optimize_ps_mi(
                        PsProblem{cfg.constellation, oma_dbm, rule, PsObjective::MaxMi, h_min},
                        cfg.link);
                }
            }();
            run["optimized"] = evaluate_point(cfg.link, outcome.shaped, oma_dbm);
            run["provenance"] = outcome.to_json();
        } catch (const SolverFailure& e) {
            err << "solver failure under rule " << rule_token(rule) << ": " << e.what() << "\n";
            run["error"] = e.what();
            runs.push_back(std::move(run));
            doc["runs"] = std::move(runs);
            doc["config"] = cfg.to_json();
            const std::string body = doc.dump(2) + "\n";
            if (cfg.outputs.json_path.empty())
                out << body;
            else
                write_file(cfg.outputs.json_path, body, err);
            return kExitSolverFailure;
        }
        runs.push_back(std::move(run));
    }
    doc["runs"] = std::move(runs);
    doc["config"] = cfg.to_json();
    const std::string body = doc.dump(2) + "\n";
    if (cfg.outputs.json_path.empty())
        out << body;
    else if (!write_file(cfg.outputs.json_path, body, err))
        return kExitConfig;
    return kExitOk;
}

} // namespace imdd

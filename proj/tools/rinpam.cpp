#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imdd/commands.hpp"
#include "imdd/errors.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::optional<double> oma_start, oma_stop, oma_step;
    std::string rules_csv;
    std::optional<std::uint64_t> seed, min_errors, max_symbols;
    std::string out_csv, out_json;
    bool rin_off = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--preset", f.preset, "pam4 | pam6 | pam8");
    cmd->add_option("--oma-start", f.oma_start, "grid start / operating OMA [dBm]");
    cmd->add_option("--oma-stop", f.oma_stop, "grid stop [dBm]");
    cmd->add_option("--oma-step", f.oma_step, "grid step [dBm]");
    cmd->add_option("--rules", f.rules_csv,
                    "comma list of optimal,uniform-exact,approx,awgn");
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_option("--min-errors", f.min_errors, "Monte Carlo stop: accumulated errors");
    cmd->add_option("--max-symbols", f.max_symbols, "Monte Carlo stop: symbol cap");
    cmd->add_option("--out-csv", f.out_csv, "CSV output path (default stdout)");
    cmd->add_option("--out-json", f.out_json, "JSON output path");
    cmd->add_flag("--rin-off", f.rin_off, "disable RIN (sigma_rin^2 = 0)");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find(',', pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

// file config first, then flag overrides on top
imdd::RunConfig assemble(const CommonFlags& f) {
    nlohmann::json doc = nlohmann::json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in)
            throw imdd::ConfigError("config", "cannot open file: " + f.config_path);
        try {
            in >> doc;
        } catch (const nlohmann::json::parse_error& e) {
            throw imdd::ConfigError("config", std::string("JSON parse error: ") + e.what());
        }
    }
    if (!f.preset.empty())
        doc["preset"] = f.preset; // expansion happens before field overrides
    if (f.oma_start) doc["oma_grid_dbm"]["start"] = *f.oma_start;
    if (f.oma_stop)
        doc["oma_grid_dbm"]["stop"] = *f.oma_stop;
    else if (f.oma_start && !doc["oma_grid_dbm"].contains("stop"))
        doc["oma_grid_dbm"]["stop"] = *f.oma_start; // single-point grid
    if (f.oma_step) doc["oma_grid_dbm"]["step"] = *f.oma_step;
    if (!f.rules_csv.empty()) {
        nlohmann::json rules = nlohmann::json::array();
        for (const auto& token : split_csv(f.rules_csv))
            rules.push_back(token);
        doc["rules"] = std::move(rules);
    }
    if (f.seed) doc["mc"]["seed"] = *f.seed;
    if (f.min_errors) doc["mc"]["min_errors"] = *f.min_errors;
    if (f.max_symbols) doc["mc"]["max_symbols"] = *f.max_symbols;
    if (!f.out_csv.empty()) doc["outputs"]["csv"] = f.out_csv;
    if (!f.out_json.empty()) doc["outputs"]["json"] = f.out_json;
    if (f.rin_off) doc["link"]["rin_db_hz"] = nullptr;
    return imdd::RunConfig::from_json(doc);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IM-DD PAM link toolkit: RIN-aware thresholds, SER, shaping"};
    app.require_subcommand(1);

    CommonFlags sweep_flags, thr_flags, opt_flags;
    std::string mode;
    std::optional<double> h_min;

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "OMA sweep: analytic + Monte Carlo SER, MI");
    add_common(sweep_cmd, sweep_flags);

    CLI::App* thr_cmd =
        app.add_subcommand("thresholds", "print all threshold variants at --oma-start");
    add_common(thr_cmd, thr_flags);

    CLI::App* opt_cmd = app.add_subcommand("optimize", "constellation shaping at --oma-start");
    add_common(opt_cmd, opt_flags);
    opt_cmd->add_option("--mode", mode, "gs | ps-ser | ps-mi")->required();
    opt_cmd->add_option("--h-min", h_min, "entropy floor [bits] (required for ps-ser)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sweep_cmd->parsed()) {
            const imdd::RunConfig cfg = assemble(sweep_flags);
            return imdd::cmd_sweep(cfg, std::cout, std::cerr);
        }
        if (thr_cmd->parsed()) {
            const imdd::RunConfig cfg = assemble(thr_flags);
            return imdd::cmd_thresholds(cfg, cfg.grid.start_dbm, std::cout, std::cerr);
        }
        const imdd::RunConfig cfg = assemble(opt_flags);
        imdd::OptimizeMode m;
        if (mode == "gs")
            m = imdd::OptimizeMode::Gs;
        else if (mode == "ps-ser")
            m = imdd::OptimizeMode::PsSer;
        else if (mode == "ps-mi")
            m = imdd::OptimizeMode::PsMi;
        else {
            std::cerr << "config error: field 'mode': expected gs, ps-ser, or ps-mi\n";
            return imdd::kExitConfig;
        }
        return imdd::cmd_optimize(cfg, m, cfg.grid.start_dbm, h_min, std::cout, std::cerr);
    } catch (const imdd::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return imdd::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

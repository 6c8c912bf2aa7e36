#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "imdd/commands.hpp"
#include "imdd/config.hpp"
#include "imdd/errors.hpp"
#include "imdd/presets.hpp"

using imdd::ConfigError;
using imdd::RunConfig;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

nlohmann::json base_doc() {
    return nlohmann::json{
        {"preset", "pam4"},
        {"oma_grid_dbm", {{"start", -2.0}, {"stop", 2.0}, {"step", 2.0}}},
        {"rules", {"optimal", "approx"}},
        {"mc", {{"seed", 42}, {"min_errors", 50}, {"max_symbols", 400000}, {"batch", 8192}}}};
}

} // namespace

TEST_SUITE_BEGIN("config_cli");

TEST_CASE("preset fidelity for pam6") {
    const auto preset = imdd::table_preset("pam6");
    CHECK(preset.link.bandwidth_hz == 52e9);
    CHECK(preset.link.rin_db_hz.value() == -140.0);
    CHECK(preset.link.er_db == 5.0);
    CHECK(preset.link.length_km == 2.0);
    CHECK(preset.link.alpha_db_km == 0.35);
    CHECK(preset.link.responsivity_a_w == 0.5);
    CHECK(preset.link.thermal_asd == 18e-12);
    CHECK(preset.constellation.points() == std::vector<double>{-5, -3, -1, 1, 3, 5});
    for (double p : preset.constellation.probs())
        CHECK(p == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(imdd::solve_bias(5.0, preset.constellation) == doctest::Approx(9.625).epsilon(1e-4));
}

TEST_CASE("config parsing errors carry the field path") {
    auto doc = base_doc();
    doc["oma_grid_dbm"]["step"] = 0.0;
    try {
        RunConfig::from_json(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "oma_grid_dbm.step");
    }

    doc = base_doc();
    doc["rules"] = {"optimal", "bogus"};
    CHECK_THROWS_AS(RunConfig::from_json(doc), ConfigError);

    doc = base_doc();
    doc["mc"]["seed"] = -5;
    CHECK_THROWS_AS(RunConfig::from_json(doc), ConfigError);

    doc = base_doc();
    doc["typo_field"] = 1;
    CHECK_THROWS_AS(RunConfig::from_json(doc), ConfigError);

    doc = base_doc();
    doc["preset"] = "pam5";
    CHECK_THROWS_AS(RunConfig::from_json(doc), ConfigError);
}

TEST_CASE("preset expansion with explicit overrides") {
    auto doc = base_doc();
    doc["link"]["bandwidth_hz"] = 40e9;
    doc["constellation"] = {{"points", {-3.0, -1.0, 1.0, 3.0}},
                            {"probs", {0.4, 0.3, 0.2, 0.1}}};
    const RunConfig cfg = RunConfig::from_json(doc);
    CHECK(cfg.link.bandwidth_hz == 40e9);       // explicit beats preset
    CHECK(cfg.link.rin_db_hz.value() == -140.0); // preset survives elsewhere
    CHECK(cfg.constellation.probs()[0] == doctest::Approx(0.4).epsilon(1e-12));

    // explicit null switches RIN off
    doc["link"]["rin_db_hz"] = nullptr;
    CHECK_FALSE(RunConfig::from_json(doc).link.rin_db_hz.has_value());
}

TEST_CASE("grid expansion is endpoint-inclusive") {
    imdd::OmaGrid grid{-2.0, 14.0, 1.0};
    CHECK(grid.points().size() == 17);
    CHECK(grid.points().front() == -2.0);
    CHECK(grid.points().back() == 14.0);
    imdd::OmaGrid single{3.0, 3.0, 1.0};
    CHECK(single.points() == std::vector<double>{3.0});
}

TEST_CASE("sweep CSV schema is pinned") {
    auto doc = base_doc();
    doc["outputs"] = {{"csv", "test_sweep_schema.csv"}};
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    REQUIRE(imdd::cmd_sweep(cfg, out, err) == 0);
    const std::string csv = slurp("test_sweep_schema.csv");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "oma_dbm,analytic_ser_optimal,analytic_ser_approx,mc_ser_optimal,mc_ser_approx,"
          "mc_ci95_optimal,mc_ci95_approx,mi_bits,entropy_bits,status");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 3);
    std::remove("test_sweep_schema.csv");
}

TEST_CASE("sweep with no rules emits MI-only columns") {
    auto doc = base_doc();
    doc["rules"] = nlohmann::json::array();
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    REQUIRE(imdd::cmd_sweep(cfg, out, err) == 0);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "oma_dbm,mi_bits,entropy_bits,status");
}

TEST_CASE("sweep outputs reproduce byte-for-byte from the config echo") {
    auto doc = base_doc();
    doc["outputs"] = {{"csv", "test_roundtrip.csv"}, {"json", "test_roundtrip.json"}};
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    REQUIRE(imdd::cmd_sweep(cfg, out, err) == 0);
    const std::string csv_first = slurp("test_roundtrip.csv");
    const std::string json_first = slurp("test_roundtrip.json");

    const auto echoed = nlohmann::json::parse(json_first).at("config");
    const RunConfig cfg2 = RunConfig::from_json(echoed);
    std::ostringstream out2, err2;
    REQUIRE(imdd::cmd_sweep(cfg2, out2, err2) == 0);
    CHECK(slurp("test_roundtrip.csv") == csv_first);
    CHECK(slurp("test_roundtrip.json") == json_first);
    std::remove("test_roundtrip.csv");
    std::remove("test_roundtrip.json");
}

TEST_CASE("thresholds command: AWGN collapse and zero-probability reporting") {
    auto doc = base_doc();
    doc["link"]["rin_db_hz"] = nullptr;
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    REQUIRE(imdd::cmd_thresholds(cfg, 0.0, out, err) == 0);
    const std::string text = out.str();
    CHECK(text.find("optimal: -2 ") != std::string::npos);
    CHECK(text.find("awgn: -2 ") != std::string::npos);
    CHECK(text.find("approx: -2 ") != std::string::npos);
    CHECK(text.find("uniform-exact: -2 ") != std::string::npos);

    auto doc2 = base_doc();
    doc2["constellation"] = {{"points", {-3.0, -1.0, 1.0, 3.0}},
                             {"probs", {0.5, 0.0, 0.25, 0.25}}};
    const RunConfig cfg2 = RunConfig::from_json(doc2);
    std::ostringstream out2, err2;
    REQUIRE(imdd::cmd_thresholds(cfg2, 0.0, out2, err2) == 0);
    CHECK(out2.str().find("error:") != std::string::npos);  // optimal + awgn report it
    CHECK(out2.str().find("approx:") != std::string::npos); // approx still printed
}

TEST_CASE("optimize command: gs endpoints stay pinned") {
    auto doc = base_doc();
    doc["preset"] = "pam6";
    doc["rules"] = {"optimal"};
    doc["outputs"] = {{"json", "test_optimize_gs.json"}};
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    REQUIRE(imdd::cmd_optimize(cfg, imdd::OptimizeMode::Gs, 0.0, std::nullopt, out, err) == 0);
    const auto report = nlohmann::json::parse(slurp("test_optimize_gs.json"));
    const auto points =
        report.at("runs")[0].at("optimized").at("constellation").at("points").get<std::vector<double>>();
    CHECK(points.front() == -5.0);
    CHECK(points.back() == 5.0);
    CHECK(report.at("runs")[0].at("provenance").contains("evaluations"));
    std::remove("test_optimize_gs.json");
}

TEST_CASE("sweep exits 3 when every point fails") {
    auto doc = base_doc();
    // loud receiver + a vanishing prior: prior-aware thresholds collapse
    doc["link"] = {{"thermal_asd", 3e-10}};
    doc["constellation"] = {{"points", {-3.0, -1.0, 1.0, 3.0}},
                            {"probs", {0.49999999, 1e-8, 0.3, 0.2}}};
    doc["rules"] = {"awgn"};
    const RunConfig cfg = RunConfig::from_json(doc);
    std::ostringstream out, err;
    CHECK(imdd::cmd_sweep(cfg, out, err) == imdd::kExitAllPointsFailed);
}

TEST_CASE("optimize command: ps-ser requires the entropy floor") {
    const RunConfig cfg = RunConfig::from_json(base_doc());
    std::ostringstream out, err;
    CHECK(imdd::cmd_optimize(cfg, imdd::OptimizeMode::PsSer, 0.0, std::nullopt, out, err) ==
          imdd::kExitConfig);
    CHECK(err.str().find("h_min") != std::string::npos);
}

TEST_SUITE_END();

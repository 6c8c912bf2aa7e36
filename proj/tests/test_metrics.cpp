#include <doctest.h>

#include <cmath>
#include <limits>

#include "imdd/metrics.hpp"
#include "imdd/presets.hpp"
#include "imdd/rng.hpp"
#include "oracles.hpp"

using imdd::ChannelModel;
using imdd::Constellation;
using imdd::ThresholdRule;
using imdd::ThresholdSet;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("q_function values and limits") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(imdd::q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(imdd::q_function(inf) == 0.0);
    CHECK(imdd::q_function(-inf) == 1.0);
    CHECK(imdd::q_function(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
    // deep tail stays representable
    CHECK(imdd::q_function(38.0) > 0.0);
    CHECK(imdd::q_function(38.0) < 1e-300);
    // symmetry scan against erfc in the direct domain
    for (double x = -8.0; x <= 8.0; x += 0.25) {
        const double ref = 0.5 * std::erfc(x / std::sqrt(2.0));
        CHECK(imdd::q_function(x) == doctest::Approx(ref).epsilon(1e-14));
        CHECK(imdd::q_function(x) + imdd::q_function(-x) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("analytic SER: binary channel equals Q(1)") {
    const ChannelModel m(Constellation::uniform({-1.0, 1.0}), 1.0, 0.0, 1.0);
    const ThresholdSet t({0.0}, ThresholdRule::AwgnExact);
    const auto ser = imdd::analytic_ser(m, t);
    CHECK(ser.average == doctest::Approx(0.15865525393145705).epsilon(1e-14));
    CHECK(ser.per_symbol[0] == doctest::Approx(ser.per_symbol[1]).epsilon(1e-14));
}

TEST_CASE("analytic SER: noiseless channel is exact") {
    const ChannelModel m(Constellation::equally_spaced(4), 0.0, 0.0, 3.0);
    const ThresholdSet t({-2.0, 0.0, 2.0}, ThresholdRule::AwgnExact);
    const auto ser = imdd::analytic_ser(m, t);
    CHECK(ser.average == 0.0);
    for (double p : ser.per_symbol)
        CHECK(p == 0.0);
}

TEST_CASE("analytic SER: average is the prior-weighted sum") {
    const auto preset = imdd::table_preset("pam6");
    const Constellation shaped({-5, -3, -1, 1, 3, 5}, {0.3, 0.25, 0.2, 0.12, 0.08, 0.05});
    const ChannelModel m = imdd::build_channel(preset.link, shaped, 2.0);
    const auto t = imdd::build_thresholds(m, ThresholdRule::OptimalExact);
    const auto ser = imdd::analytic_ser(m, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < ser.per_symbol.size(); ++i) {
        CHECK(ser.per_symbol[i] >= 0.0);
        CHECK(ser.per_symbol[i] <= 1.0);
        acc += shaped.prob(i) * ser.per_symbol[i];
    }
    CHECK(std::abs(ser.average - acc) <= 1e-14);
}

TEST_CASE("analytic SER: deep-tail underflow clamps to zero with a flag") {
    // symbol 0: Q(38) ~ 3e-316 with prior 1e-6 -> average ~ 3e-322, below the
    // representable-floor policy; symbol 1 sits 162 sigmas clear of the slicer
    const ChannelModel m(Constellation({-1.0, 1.0}, {1e-6, 1.0 - 1e-6}), 1e-4, 0.0, 1.0);
    const ThresholdSet t({-0.62}, ThresholdRule::AwgnExact);
    const auto ser = imdd::analytic_ser(m, t);
    CHECK(ser.per_symbol[0] > 0.0); // itself representable, not clamped
    CHECK(ser.per_symbol[1] == 0.0);
    CHECK(ser.average == 0.0);
    CHECK(ser.underflow_clamped);
}

TEST_CASE("optimal thresholds beat perturbed and approx thresholds") {
    const auto preset = imdd::table_preset("pam6");
    const Constellation shaped({-5, -3, -1, 1, 3, 5}, {0.3, 0.25, 0.2, 0.12, 0.08, 0.05});
    const ChannelModel m = imdd::build_channel(preset.link, shaped, 2.0);
    const auto opt = imdd::build_thresholds(m, ThresholdRule::OptimalExact);
    const double ser_opt = imdd::analytic_ser(m, opt).average;
    const double ser_approx =
        imdd::analytic_ser(m, imdd::build_thresholds(m, ThresholdRule::UniformApprox)).average;
    CHECK(ser_opt <= ser_approx + 1e-12);
    auto gen = imdd::substream(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        auto r = opt.thresholds();
        for (double& v : r)
            v += 0.3 * (imdd::uniform_unit(gen) - 0.5);
        bool monotone = true;
        for (std::size_t i = 1; i < r.size(); ++i)
            monotone = monotone && r[i] > r[i - 1];
        if (!monotone)
            continue;
        const double ser_pert =
            imdd::analytic_ser(m, ThresholdSet(r, ThresholdRule::OptimalExact)).average;
        CHECK(ser_opt <= ser_pert + 1e-12);
    }
}

TEST_CASE("mutual information limits") {
    const Constellation c = Constellation::equally_spaced(4);
    // overwhelming noise: the channel carries nothing
    const ChannelModel loud(c, 1e6 * 36.0, 0.0, 3.0);
    CHECK(imdd::mutual_information(loud) < 1e-3);
    // vanishing noise: the channel carries the full source entropy
    const ChannelModel quiet(c, 1e-12, 0.0, 3.0);
    CHECK(imdd::mutual_information(quiet) == doctest::Approx(2.0).epsilon(1e-6));
    // exactly zero noise short-circuits to H(X)
    const ChannelModel silent(c, 0.0, 0.0, 3.0);
    CHECK(imdd::mutual_information(silent) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("mutual information bounds and quadrature convergence") {
    const auto preset = imdd::table_preset("pam8");
    const Constellation shaped({-7, -5, -3, -1, 1, 3, 5, 7},
                               {0.25, 0.2, 0.15, 0.12, 0.1, 0.08, 0.06, 0.04});
    for (double oma : {-2.0, 2.0, 8.0}) {
        const ChannelModel m = imdd::build_channel(preset.link, shaped, oma);
        const double mi = imdd::mutual_information(m);
        CHECK(mi >= 0.0);
        CHECK(mi <= imdd::entropy(shaped));
        CHECK(std::abs(imdd::mutual_information(m, 2 * imdd::kDefaultGhOrder) - mi) < 1e-9);
    }
}

TEST_CASE("mutual information against the Monte Carlo estimator") {
    const auto preset = imdd::table_preset("pam4");
    const ChannelModel m = imdd::build_channel(preset.link, preset.constellation, 4.0);
    const double mi = imdd::mutual_information(m);
    const double mc = oracles::mc_mutual_information(m, 2000000, 11);
    CHECK(std::abs(mi - mc) < 2e-3);
}

TEST_CASE("mutual information decreases as both noises scale up") {
    const auto preset = imdd::table_preset("pam6");
    const ChannelModel base = imdd::build_channel(preset.link, preset.constellation, 2.0);
    double last = imdd::entropy(preset.constellation);
    for (double lambda : {1.0, 2.0, 4.0, 8.0}) {
        const ChannelModel scaled(preset.constellation, lambda * base.sigma_ele2(),
                                  lambda * base.sigma_rin2(), base.beta());
        const double mi = imdd::mutual_information(scaled);
        CHECK(mi <= last + 1e-12);
        last = mi;
    }
}

TEST_CASE("SER saturates along the OMA sweep") {
    const auto preset = imdd::table_preset("pam6");
    double prev_ser = 1.0;
    double prev_ratio = 0.0;
    for (double oma = 2.0; oma <= 14.0; oma += 2.0) {
        const ChannelModel m = imdd::build_channel(preset.link, preset.constellation, oma);
        const double ser =
            imdd::analytic_ser(m, imdd::build_thresholds(m, ThresholdRule::OptimalExact)).average;
        if (oma > 2.0) {
            const double ratio = ser / prev_ser;
            CHECK(ratio > prev_ratio); // differences shrink toward the floor
            prev_ratio = ratio;
        }
        prev_ser = ser;
    }
    CHECK(prev_ratio > 0.95);
}

TEST_SUITE_END();

#include "imdd/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "imdd/errors.hpp"
#include "imdd/metrics.hpp"
#include "imdd/rng.hpp"

namespace imdd {

namespace {

// Batches are grouped into fixed-size rounds; the stop rule is evaluated at
// round boundaries only, so results do not depend on the thread count.
constexpr std::uint64_t kRoundBatches = 16;

struct Tally {
    std::uint64_t symbols = 0;
    std::uint64_t errors = 0;
    std::vector<std::uint64_t> sent;
    std::vector<std::uint64_t> errs;

    explicit Tally(std::size_t m) : sent(m, 0), errs(m, 0) {}

    void merge(const Tally& other) {
        symbols += other.symbols;
        errors += other.errors;
        for (std::size_t i = 0; i < sent.size(); ++i) {
            sent[i] += other.sent[i];
            errs[i] += other.errs[i];
        }
    }
};

struct BatchContext {
    const ChannelModel* model;
    const ThresholdSet* thresholds; // null = argmax MAP detection
    std::vector<double> cum_prob;   // last entry +inf
    std::uint64_t seed;
};

Tally run_batch(const BatchContext& ctx, std::uint64_t batch_index, std::uint64_t count) {
    const auto& c = ctx.model->constellation();
    const std::size_t m = c.size();
    Tally tally(m);
    tally.symbols = count;
    auto gen = substream(ctx.seed, batch_index);
    const auto cum_begin = ctx.cum_prob.begin();
    const auto cum_end = ctx.cum_prob.end();
    for (std::uint64_t k = 0; k < count; ++k) {
        const double u = uniform_unit(gen);
        const std::size_t sym =
            static_cast<std::size_t>(std::upper_bound(cum_begin, cum_end, u) - cum_begin);
        const double z = standard_normal(gen);
        const double y = c.point(sym) + z * ctx.model->cond_sigma(sym);
        const std::size_t decided = ctx.thresholds ? detect_threshold(y, *ctx.thresholds)
                                                   : detect_map(y, *ctx.model);
        ++tally.sent[sym];
        if (decided != sym) {
            ++tally.errs[sym];
            ++tally.errors;
        }
    }
    return tally;
}

} // namespace

void McConfig::validate() const {
    if (min_errors < 1)
        throw std::invalid_argument("min_errors must be >= 1");
    if (batch < 1)
        throw std::invalid_argument("batch must be >= 1");
    if (max_symbols < batch)
        throw std::invalid_argument("max_symbols must be >= batch");
}

McResult simulate(const ChannelModel& m, const Detector& detector, const McConfig& cfg) {
    cfg.validate();
    const auto& c = m.constellation();

    BatchContext ctx;
    ctx.model = &m;
    ctx.thresholds = std::holds_alternative<ThresholdSet>(detector)
                         ? &std::get<ThresholdSet>(detector)
                         : nullptr;
    ctx.seed = cfg.seed;
    ctx.cum_prob.resize(c.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        acc += c.prob(i);
        ctx.cum_prob[i] = acc;
    }
    ctx.cum_prob.back() = std::numeric_limits<double>::infinity();

    const std::uint64_t total_batches = (cfg.max_symbols + cfg.batch - 1) / cfg.batch;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    Tally total(c.size());
    for (std::uint64_t round_start = 0;
         round_start < total_batches && total.errors < cfg.min_errors;
         round_start += kRoundBatches) {
        const std::uint64_t round_end = std::min(round_start + kRoundBatches, total_batches);
        const std::uint64_t in_round = round_end - round_start;
        const std::uint64_t stripes = std::min<std::uint64_t>(workers, in_round);
        std::vector<std::future<Tally>> futures;
        futures.reserve(stripes);
        for (std::uint64_t s = 0; s < stripes; ++s) {
            futures.push_back(std::async(std::launch::async, [&, s]() {
                Tally local(c.size());
                for (std::uint64_t b = round_start + s; b < round_end; b += stripes) {
                    const std::uint64_t offset = b * cfg.batch;
                    const std::uint64_t count = std::min(cfg.batch, cfg.max_symbols - offset);
                    local.merge(run_batch(ctx, b, count));
                }
                return local;
            }));
        }
        for (auto& f : futures)
            total.merge(f.get());
    }

    McResult out;
    out.symbols = total.symbols;
    out.errors = total.errors;
    out.ser = total.symbols ? static_cast<double>(total.errors) / static_cast<double>(total.symbols)
                            : 0.0;
    out.ci95_half_width =
        total.symbols ? 1.96 * std::sqrt(out.ser * (1.0 - out.ser) / static_cast<double>(total.symbols))
                      : 0.0;
    out.detector = ctx.thresholds
                       ? "thresholds:" + std::string(rule_token(ctx.thresholds->rule()))
                       : "map";
    out.per_symbol_sent = std::move(total.sent);
    out.per_symbol_errors = std::move(total.errs);
    return out;
}

std::vector<SweepResult> sweep(const LinkParams& params, const Constellation& c,
                               const std::vector<double>& oma_grid_dbm,
                               const std::vector<ThresholdRule>& rules, const McConfig& cfg) {
    if (oma_grid_dbm.empty())
        throw std::invalid_argument("OMA grid must be non-empty");
    std::vector<SweepResult> results;
    results.reserve(oma_grid_dbm.size());
    for (double oma : oma_grid_dbm) {
        SweepResult point;
        point.oma_dbm = oma;
        const ChannelModel model = build_channel(params, c, oma);
        point.mi_bits = mutual_information(model);
        point.entropy_bits = entropy(c);
        for (ThresholdRule rule : rules) {
            RuleOutcome outcome;
            outcome.rule = rule;
            try {
                const ThresholdSet t = build_thresholds(model, rule);
                outcome.analytic_ser = analytic_ser(model, t).average;
                outcome.mc = simulate(model, Detector(t), cfg);
            } catch (const Error& e) {
                outcome.error = e.what();
                point.status = "threshold_error";
            }
            point.rules.push_back(std::move(outcome));
        }
        results.push_back(std::move(point));
    }
    return results;
}

} // namespace imdd

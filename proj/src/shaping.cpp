#include "imdd/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "imdd/errors.hpp"
#include "imdd/metrics.hpp"
#include "imdd/nelder_mead.hpp"
#include "imdd/rng.hpp"

namespace imdd {

namespace {

constexpr int kRestarts = 8;
constexpr double kJitterScale = 0.5;
constexpr double kEntropyPenaltyWeight = 1e8;
constexpr double kEntropySlack = 1e-9;
constexpr std::uint64_t kRestartSeed = 0x5348415045ULL; // fixed; restarts must be reproducible

double inf() { return std::numeric_limits<double>::infinity(); }

std::vector<double> softmax(const std::vector<double>& theta) {
    double m = -inf();
    for (double t : theta)
        m = std::max(m, t);
    std::vector<double> out(theta.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        out[i] = std::exp(theta[i] - m);
        sum += out[i];
    }
    for (double& v : out)
        v /= sum;
    return out;
}

double entropy_of(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0)
            h -= v * std::log2(v);
    return h;
}

// probs -> full simplex parameter vector with theta_0 pinned at 0
std::vector<double> full_theta(const std::vector<double>& free_part) {
    std::vector<double> theta(free_part.size() + 1, 0.0);
    std::copy(free_part.begin(), free_part.end(), theta.begin() + 1);
    return theta;
}

// Interior points from gap shares: gaps = min_gap + available * softmax(theta).
std::vector<double> gs_points(const std::vector<double>& free_part, const Constellation& base,
                              double min_gap) {
    const std::size_t m = base.size();
    const double lo = base.min_point();
    const double span = base.span();
    const double available = span - static_cast<double>(m - 1) * min_gap;
    const std::vector<double> shares = softmax(full_theta(free_part));
    std::vector<double> points(m);
    points[0] = lo;
    for (std::size_t i = 1; i < m; ++i)
        points[i] = points[i - 1] + min_gap + available * shares[i - 1];
    points[m - 1] = base.max_point(); // pin exactly despite rounding
    return points;
}

// Smallest blend toward uniform reaching the entropy floor (entropy is
// continuous and reaches log2 M at the uniform end, so bisection suffices).
std::vector<double> project_entropy(std::vector<double> p, double h_min) {
    if (entropy_of(p) >= h_min)
        return p;
    const double u = 1.0 / static_cast<double>(p.size());
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> blend(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            blend[i] = (1.0 - mid) * p[i] + mid * u;
        if (entropy_of(blend) >= h_min)
            hi = mid;
        else
            lo = mid;
    }
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = (1.0 - hi) * p[i] + hi * u;
    return p;
}

struct Candidate {
    Constellation constellation;
    double objective = 0.0; // problem metric: SER (min) or MI (max)
    bool feasible = false;
    int restart = -1;
};

// Common multi-start driver. decode() maps a free parameter vector to a
// candidate constellation; metric() evaluates the problem objective (+inf on
// threshold failure); sign = +1 minimizes, -1 maximizes.
struct MultiStart {
    std::function<Constellation(const std::vector<double>&)> decode;
    std::function<double(const Constellation&)> metric;
    double sign = 1.0;
    std::optional<double> h_min; // entropy penalty + repair when present
    std::size_t dim = 0;

    double penalized(const std::vector<double>& free_part) const {
        const Constellation cand = decode(free_part);
        const double value = metric(cand);
        if (!std::isfinite(value))
            return inf();
        double obj = sign * value;
        if (h_min) {
            const double viol = std::max(0.0, *h_min - entropy(cand));
            obj += kEntropyPenaltyWeight * viol * viol;
        }
        return obj;
    }

    Candidate finish(const std::vector<double>& free_part, int restart) const {
        Constellation cand = decode(free_part);
        if (h_min) {
            // exact feasibility repair; the quadratic penalty alone cannot
            // certify the 1e-9 entropy slack
            std::vector<double> probs = project_entropy(cand.probs(), *h_min);
            cand = Constellation(cand.points(), std::move(probs));
        }
        Candidate out{cand, metric(cand), false, restart};
        out.feasible = std::isfinite(out.objective) &&
                       (!h_min || entropy(cand) >= *h_min - kEntropySlack);
        return out;
    }
};

ShapingOutcome run_multistart(const MultiStart& ms, const Constellation& canonical_start,
                              ThresholdRule rule, double oma_dbm, std::optional<double> h_min) {
    NmOptions opts;
    Candidate best = ms.finish(std::vector<double>(ms.dim, 0.0), 0);
    const double start_objective = ms.metric(canonical_start);
    int total_evals = 1;

    std::vector<std::future<std::pair<NmResult, int>>> futures;
    futures.reserve(kRestarts);
    for (int r = 0; r < kRestarts; ++r) {
        futures.push_back(std::async(std::launch::async, [&, r]() {
            std::vector<double> start(ms.dim, 0.0);
            if (r > 0) {
                auto gen = substream(kRestartSeed, static_cast<std::uint64_t>(r));
                for (double& v : start)
                    v = kJitterScale * standard_normal(gen);
            }
            NmResult nm = nelder_mead([&](const std::vector<double>& x) { return ms.penalized(x); },
                                      std::move(start), opts);
            return std::make_pair(std::move(nm), r);
        }));
    }
    for (auto& f : futures) {
        auto [nm, r] = f.get();
        total_evals += nm.evals;
        Candidate cand = ms.finish(nm.x, r);
        if (!cand.feasible)
            continue;
        const bool better = ms.sign * cand.objective < ms.sign * best.objective ||
                            (cand.objective == best.objective && cand.restart < best.restart);
        if (!best.feasible || better)
            best = std::move(cand);
    }

    if (!best.feasible)
        throw SolverFailure("no feasible iterate found");

    // never return worse than the canonical start
    if (std::isfinite(start_objective) && ms.sign * start_objective < ms.sign * best.objective) {
        best.constellation = canonical_start;
        best.objective = start_objective;
        best.restart = -1;
    }

    ShapingOutcome out{best.constellation, rule, oma_dbm, start_objective, best.objective,
                       total_evals, best.restart, entropy(best.constellation), 0.0, 0.0};
    if (h_min)
        out.entropy_residual = std::max(0.0, *h_min - out.entropy_bits);
    double sum = 0.0;
    for (double p : best.constellation.probs())
        sum += p;
    out.prob_sum_residual = std::abs(sum - 1.0);
    return out;
}

double ser_metric(const LinkParams& params, const Constellation& cand, double oma_dbm,
                  ThresholdRule rule) {
    try {
        const ChannelModel model = build_channel(params, cand, oma_dbm);
        return analytic_ser(model, build_thresholds(model, rule)).average;
    } catch (const Error&) {
        return inf();
    }
}

} // namespace

nlohmann::json ShapingOutcome::to_json() const {
    return nlohmann::json{{"constellation", shaped.to_json()},
                          {"rule", std::string(rule_token(rule))},
                          {"oma_dbm", oma_dbm},
                          {"start_objective", start_objective},
                          {"final_objective", final_objective},
                          {"evaluations", evaluations},
                          {"best_restart", best_restart},
                          {"entropy_bits", entropy_bits},
                          {"entropy_residual", entropy_residual},
                          {"prob_sum_residual", prob_sum_residual}};
}

ShapingOutcome optimize_gs(const GsProblem& p, const LinkParams& params) {
    const Constellation start = Constellation::uniform(p.base.points());
    if (p.base.size() == 2) {
        const double ser = ser_metric(params, start, p.oma_dbm, p.rule);
        return ShapingOutcome{start, p.rule, p.oma_dbm, ser, ser, 1, -1, entropy(start), 0.0, 0.0};
    }
    MultiStart ms;
    ms.dim = p.base.size() - 2;
    ms.sign = 1.0;
    ms.decode = [base = p.base, min_gap = p.min_gap](const std::vector<double>& x) {
        return Constellation::uniform(gs_points(x, base, min_gap));
    };
    ms.metric = [params, oma = p.oma_dbm, rule = p.rule](const Constellation& cand) {
        return ser_metric(params, cand, oma, rule);
    };
    return run_multistart(ms, start, p.rule, p.oma_dbm, std::nullopt);
}

ShapingOutcome optimize_ps_ser(const PsProblem& p, const LinkParams& params) {
    if (!p.h_min)
        throw std::invalid_argument("ps-ser requires an entropy floor");
    const std::size_t m = p.base.size();
    const double log2m = std::log2(static_cast<double>(m));
    if (!(*p.h_min > 0.0) || *p.h_min > log2m + 1e-12)
        throw std::invalid_argument("h_min must lie in (0, log2 M]");
    const Constellation start = Constellation::uniform(p.base.points());
    if (*p.h_min >= log2m - 1e-12) {
        // the entropy floor admits only the uniform distribution
        const double ser = ser_metric(params, start, p.oma_dbm, p.rule);
        return ShapingOutcome{start, p.rule, p.oma_dbm, ser, ser, 1, -1, entropy(start), 0.0, 0.0};
    }
    MultiStart ms;
    ms.dim = m - 1;
    ms.sign = 1.0;
    ms.h_min = p.h_min;
    ms.decode = [base = p.base](const std::vector<double>& x) {
        return Constellation(base.points(), softmax(full_theta(x)));
    };
    ms.metric = [params, oma = p.oma_dbm, rule = p.rule](const Constellation& cand) {
        return ser_metric(params, cand, oma, rule);
    };
    return run_multistart(ms, start, p.rule, p.oma_dbm, p.h_min);
}

ShapingOutcome optimize_ps_mi(const PsProblem& p, const LinkParams& params) {
    const Constellation start = Constellation::uniform(p.base.points());
    MultiStart ms;
    ms.dim = p.base.size() - 1;
    ms.sign = -1.0; // maximize
    ms.h_min = p.h_min;
    ms.decode = [base = p.base](const std::vector<double>& x) {
        return Constellation(base.points(), softmax(full_theta(x)));
    };
    ms.metric = [params, oma = p.oma_dbm](const Constellation& cand) {
        return mutual_information(build_channel(params, cand, oma));
    };
    return run_multistart(ms, start, p.rule, p.oma_dbm, p.h_min);
}

} // namespace imdd

#include "imdd/constellation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "imdd/errors.hpp"

namespace imdd {

namespace {
constexpr double kProbSumTol = 1e-9;
}

Constellation::Constellation(std::vector<double> points, std::vector<double> probs)
    : points_(std::move(points)), probs_(std::move(probs)) {
    if (points_.size() < 2)
        throw std::invalid_argument("constellation needs at least 2 points");
    if (probs_.size() != points_.size())
        throw std::invalid_argument("points/probs size mismatch");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw std::invalid_argument("constellation points must be strictly increasing");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw std::invalid_argument("probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbSumTol)
        throw std::invalid_argument("probabilities must sum to 1 within 1e-9");
    if (sum != 1.0) {
        for (double& p : probs_)
            p /= sum;
        // absorb the rounding residual into the largest mass so that
        // construction is idempotent and the sum is exactly 1
        double resum = 0.0;
        std::size_t largest = 0;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            resum += probs_[i];
            if (probs_[i] > probs_[largest])
                largest = i;
        }
        probs_[largest] += 1.0 - resum;
    }
}

Constellation Constellation::uniform(std::vector<double> points) {
    std::vector<double> probs(points.size(), 1.0 / static_cast<double>(points.size()));
    return Constellation(std::move(points), std::move(probs));
}

Constellation Constellation::equally_spaced(std::size_t m) {
    std::vector<double> points(m);
    for (std::size_t i = 0; i < m; ++i)
        points[i] = -static_cast<double>(m - 1) + 2.0 * static_cast<double>(i);
    return uniform(std::move(points));
}

nlohmann::json Constellation::to_json() const {
    return nlohmann::json{{"points", points_}, {"probs", probs_}};
}

Constellation Constellation::from_json(const nlohmann::json& doc) {
    if (!doc.contains("points") || !doc.contains("probs"))
        throw std::invalid_argument("constellation document needs 'points' and 'probs'");
    return Constellation(doc.at("points").get<std::vector<double>>(),
                         doc.at("probs").get<std::vector<double>>());
}

double entropy(const Constellation& c) {
    double h = 0.0;
    for (double p : c.probs())
        if (p > 0.0)
            h -= p * std::log2(p);
    return h;
}

double solve_bias(double er_db, const Constellation& c) {
    if (!(er_db > 0.0))
        throw NonPositiveER("extinction ratio must be > 0 dB");
    const double er = std::pow(10.0, er_db / 10.0);
    return (c.max_point() - er * c.min_point()) / (er - 1.0);
}

double solve_eta(double oma_w, const Constellation& c) {
    return oma_w / c.span();
}

double oma_dbm_to_watts(double oma_dbm) {
    return 1e-3 * std::pow(10.0, oma_dbm / 10.0);
}

ImBias solve_im_bias(double er_db, double oma_w, const Constellation& c) {
    ImBias out{solve_bias(er_db, c), solve_eta(oma_w, c)};
    if (out.beta < std::abs(c.min_point()))
        throw std::invalid_argument("bias violates the nonnegativity constraint");
    if (!(out.eta > 0.0))
        throw std::invalid_argument("eta must be > 0");
    return out;
}

} // namespace imdd

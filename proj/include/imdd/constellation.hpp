#ifndef IMDD_CONSTELLATION_HPP
#define IMDD_CONSTELLATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace imdd {

/// Ordered PAM-M constellation: bipolar amplitude levels plus a probability
/// mass function. Immutable after construction; shaping builds new instances.
class Constellation {
public:
    // Points must be strictly increasing with M >= 2. Probabilities must be
    // nonnegative and sum to 1 within 1e-9; the sum is renormalized away.
    Constellation(std::vector<double> points, std::vector<double> probs);

    static Constellation uniform(std::vector<double> points);
    // {-(m-1), ..., -1, +1, ..., +(m-1)} in steps of 2, equiprobable
    static Constellation equally_spaced(std::size_t m);

    std::size_t size() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& probs() const { return probs_; }
    double point(std::size_t i) const { return points_[i]; }
    double prob(std::size_t i) const { return probs_[i]; }
    double min_point() const { return points_.front(); }
    double max_point() const { return points_.back(); }
    double span() const { return points_.back() - points_.front(); }

    nlohmann::json to_json() const;
    static Constellation from_json(const nlohmann::json& doc);

private:
    std::vector<double> points_;
    std::vector<double> probs_;
};

// Source entropy -sum p log2 p in bits, with 0 log 0 = 0.
double entropy(const Constellation& c);

// IM bias beta solving er = (max X + beta)/(min X + beta), er = 10^(er_db/10).
// Throws NonPositiveER for er_db <= 0.
double solve_bias(double er_db, const Constellation& c);

// Electro-optical conversion factor eta = OMA / (max X - min X), in W per unit.
double solve_eta(double oma_w, const Constellation& c);

double oma_dbm_to_watts(double oma_dbm);

// Bias/conversion pair derived from (er_db, OMA) for a given constellation.
struct ImBias {
    double beta = 0.0; // >= |min X|
    double eta = 0.0;  // > 0, W per unit amplitude
};

// Solve both intensity-modulation parameters at once and enforce the
// nonnegativity constraint beta >= |min X|.
ImBias solve_im_bias(double er_db, double oma_w, const Constellation& c);

} // namespace imdd

#endif

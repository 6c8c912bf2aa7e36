#ifndef IMDD_LINK_MODEL_HPP
#define IMDD_LINK_MODEL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "imdd/constellation.hpp"

namespace imdd {

/// Physical parameters of the unamplified IM-DD link.
struct LinkParams {
    std::optional<double> rin_db_hz; // laser RIN in dB/Hz; absent = RIN off
    double er_db = 5.0;              // modulator extinction ratio, dB
    double length_km = 2.0;          // fiber length
    double alpha_db_km = 0.35;       // attenuation
    double responsivity_a_w = 0.5;   // photodiode responsivity
    double thermal_asd = 18e-12;     // PD-TIA thermal noise, A/sqrt(Hz)
    double bandwidth_hz = 68e9;      // electrical bandwidth

    // Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

// Linear fiber power loss 10^(-alpha L / 10), in (0, 1].
double fiber_loss(const LinkParams& params);

// TIA gain G = 1 / (responsivity * fiber_loss * eta), in Ohm.
double tia_gain(const LinkParams& params, double eta);

/// Equivalent signal-dependent Gaussian channel Y = X + Z * sigma(X) with
/// sigma(X)^2 = sigma_ele^2 + (X + beta)^2 sigma_rin^2, normalized to symbol
/// units. Immutable; safe to share across workers.
class ChannelModel {
public:
    ChannelModel(Constellation c, double sigma_ele2, double sigma_rin2, double beta);

    const Constellation& constellation() const { return constellation_; }
    std::size_t size() const { return constellation_.size(); }
    double sigma_ele2() const { return sigma_ele2_; }
    double sigma_rin2() const { return sigma_rin2_; }
    double beta() const { return beta_; }

    // Conditional noise variance sigma_i^2; throws IndexOutOfRange.
    double cond_variance(std::size_t i) const;
    double cond_sigma(std::size_t i) const;
    const std::vector<double>& cond_sigmas() const { return cond_sigma_; }

private:
    Constellation constellation_;
    double sigma_ele2_;
    double sigma_rin2_;
    double beta_;
    std::vector<double> cond_sigma_;
};

// Assemble the equivalent channel at a given OMA operating point:
// eta from the OMA, beta from the extinction ratio, G from the TIA gain rule,
// sigma_ele^2 = G^2 (N0/2) B and sigma_rin^2 = 10^(RIN/10) B.
ChannelModel build_channel(const LinkParams& params, const Constellation& c, double oma_dbm);

} // namespace imdd

#endif

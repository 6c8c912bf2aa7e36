#include "imdd/link_model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "imdd/errors.hpp"

namespace imdd {

void LinkParams::validate() const {
    if (!(er_db > 0.0))
        throw NonPositiveER("er_db must be > 0");
    if (!(responsivity_a_w > 0.0))
        throw std::invalid_argument("responsivity_a_w must be > 0");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("bandwidth_hz must be > 0");
    if (!(length_km >= 0.0))
        throw std::invalid_argument("length_km must be >= 0");
    if (!(alpha_db_km >= 0.0))
        throw std::invalid_argument("alpha_db_km must be >= 0");
    if (!(thermal_asd >= 0.0))
        throw std::invalid_argument("thermal_asd must be >= 0");
}

double fiber_loss(const LinkParams& params) {
    return std::pow(10.0, -params.alpha_db_km * params.length_km / 10.0);
}

double tia_gain(const LinkParams& params, double eta) {
    return 1.0 / (params.responsivity_a_w * fiber_loss(params) * eta);
}

ChannelModel::ChannelModel(Constellation c, double sigma_ele2, double sigma_rin2, double beta)
    : constellation_(std::move(c)), sigma_ele2_(sigma_ele2), sigma_rin2_(sigma_rin2), beta_(beta) {
    if (!(sigma_ele2_ >= 0.0) || !(sigma_rin2_ >= 0.0))
        throw std::invalid_argument("noise variances must be >= 0");
    if (beta_ < std::abs(constellation_.min_point()))
        throw std::invalid_argument("beta must be >= |min point| (nonnegative intensity)");
    cond_sigma_.resize(constellation_.size());
    for (std::size_t i = 0; i < cond_sigma_.size(); ++i) {
        const double amp = constellation_.point(i) + beta_;
        cond_sigma_[i] = std::sqrt(sigma_ele2_ + amp * amp * sigma_rin2_);
    }
}

double ChannelModel::cond_variance(std::size_t i) const {
    if (i >= cond_sigma_.size())
        throw IndexOutOfRange("symbol index out of range");
    return cond_sigma_[i] * cond_sigma_[i];
}

double ChannelModel::cond_sigma(std::size_t i) const {
    if (i >= cond_sigma_.size())
        throw IndexOutOfRange("symbol index out of range");
    return cond_sigma_[i];
}

ChannelModel build_channel(const LinkParams& params, const Constellation& c, double oma_dbm) {
    params.validate();
    const ImBias bias = solve_im_bias(params.er_db, oma_dbm_to_watts(oma_dbm), c);
    const double gain = tia_gain(params, bias.eta);
    const double sigma_ele2 =
        gain * gain * params.thermal_asd * params.thermal_asd * params.bandwidth_hz;
    const double sigma_rin2 =
        params.rin_db_hz ? std::pow(10.0, *params.rin_db_hz / 10.0) * params.bandwidth_hz : 0.0;
    return ChannelModel(c, sigma_ele2, sigma_rin2, bias.beta);
}

} // namespace imdd

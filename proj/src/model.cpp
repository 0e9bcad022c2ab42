#include "rabi/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rabi {

ModelParams validate_params(const ModelParams& p) {
    if (!(p.omega > 0.0) || !std::isfinite(p.omega))
        throw NonPositiveOmega("omega must be positive and finite, got " +
                               std::to_string(p.omega));
    if (!(p.Omega_r >= 0.0) || !std::isfinite(p.Omega_r))
        throw NegativeResonance("Omega_r must be nonnegative and finite, got " +
                                std::to_string(p.Omega_r));
    if (!(p.g >= 0.0) || !std::isfinite(p.g))
        throw NegativeCoupling("g must be nonnegative and finite, got " +
                               std::to_string(p.g));
    return p;
}

JCReference jc_energies(const ModelParams& p, int n_levels) {
    validate_params(p);
    JCReference ref;
    ref.ground_energy = -0.5 * p.Omega_r;
    ref.doublets.reserve(static_cast<std::size_t>(std::max(n_levels, 0)));
    const double detuning = p.Omega_r - p.omega;
    for (int n = 0; n < n_levels; ++n) {
        const double center = (n + 0.5) * p.omega;
        const double half_split =
            0.5 * std::sqrt(detuning * detuning + 4.0 * p.g * p.g * (n + 1.0));
        ref.doublets.emplace_back(center - half_split, center + half_split);
    }
    return ref;
}

std::vector<double> JCReference::sorted_energies(std::size_t count) const {
    std::vector<double> all;
    all.reserve(1 + 2 * doublets.size());
    all.push_back(ground_energy);
    for (const auto& [lo, hi] : doublets) {
        all.push_back(lo);
        all.push_back(hi);
    }
    std::sort(all.begin(), all.end());
    if (all.size() > count) all.resize(count);
    return all;
}

}  // namespace rabi

#pragma once

#include "hawkes/model.hpp"

#include <cstdint>

namespace hawkes {

struct SimulationConfig {
    HawkesModel model;
    double horizon{1.0};
    std::uint64_t seed{0};
    /// Guard against explosive (branching ratio >= 1) models.
    std::size_t max_events{10'000'000};
    /// Recompute the exact intensity at every candidate and throw
    /// std::logic_error if it exceeds the dominating rate. Test aid; slow.
    bool check_dominating_rate{false};
};

/// Exact draw on [0, horizon] by Ogata thinning. The dominating rate after
/// each candidate is mu + sum_i sup_tail(kernel, t - t_i), with older events
/// grouped into blocks bounded by their newest member, so non-monotone
/// kernels (RAY, GSS) are handled exactly. Uses std::mt19937_64 seeded with
/// `seed`; uniforms are the top 53 bits of each draw.
[[nodiscard]] EventSequence simulate_ogata(const SimulationConfig& config);

/// SplitMix64 finalizer applied to base + (index + 1) * 0x9E3779B97F4A7C15.
/// A bijection in `index` for fixed `base`, so distinct indices never collide.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

} // namespace hawkes

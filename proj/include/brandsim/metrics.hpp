#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "brandsim/errors.hpp"
#include "brandsim/model.hpp"

namespace brandsim {

struct TimeSeriesRecord {
    std::int64_t t = 0;
    double fluctuation = 0.0;
    std::vector<double> shares;
    std::size_t dominant = 0;

    bool operator==(const TimeSeriesRecord&) const = default;
};

/// Mean wish distance over all K(K-1)/2 customer pairs.
///
/// Uses the identity sum_{a<b} (x_a - x_b)^2 = K * sum_a (x_a - mean)^2 per
/// slot, so the cost is O(K S) instead of O(K^2 S). Slots on which every
/// customer holds the same value contribute exactly zero, which keeps the
/// result at exactly 0 when all wishes are bitwise equal.
inline double fluctuation(const Population& pop) {
    const std::size_t K = pop.size();
    if (K < 2) throw ConfigError("K", "fluctuation needs at least two customers");
    const std::size_t S = pop.schema.slots();
    if (S == 0) return 0.0;

    const auto& first = pop.customers.front().wish.entries;
    std::vector<double> mean(S, 0.0);
    std::vector<char> varies(S, 0);
    for (const auto& c : pop.customers) {
        const auto& w = c.wish.entries;
        if (w.size() != S) throw InvariantError("fluctuation: wish does not match schema");
        for (std::size_t s = 0; s < S; ++s) {
            mean[s] += w[s];
            varies[s] |= static_cast<char>(w[s] != first[s]);
        }
    }
    for (auto& m : mean) m /= static_cast<double>(K);

    std::vector<double> spread(S, 0.0);
    for (const auto& c : pop.customers) {
        const auto& w = c.wish.entries;
        for (std::size_t s = 0; s < S; ++s) {
            const double d = w[s] - mean[s];
            spread[s] += d * d;
        }
    }
    double total = 0.0;
    for (std::size_t s = 0; s < S; ++s)
        if (varies[s]) total += spread[s];
    return 2.0 * total / (static_cast<double>(S) * static_cast<double>(K - 1));
}

inline std::vector<double> brand_shares(const Population& pop) {
    std::vector<std::size_t> counts(pop.brands.size(), 0);
    for (const auto& c : pop.customers) ++counts.at(c.affiliation);
    std::vector<double> shares(counts.size());
    const auto K = static_cast<double>(pop.size());
    for (std::size_t b = 0; b < counts.size(); ++b) shares[b] = static_cast<double>(counts[b]) / K;
    return shares;
}

/// argmax; ties go to the smallest index.
inline std::size_t dominant_brand(std::span<const double> shares) {
    if (shares.empty()) throw ConfigError("N", "dominant_brand needs a non-empty share vector");
    std::size_t best = 0;
    for (std::size_t b = 1; b < shares.size(); ++b)
        if (shares[b] > shares[best]) best = b;
    return best;
}

inline bool is_consensus(double fluct, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
    return fluct < epsilon;
}

inline bool consensus_reached(const Population& pop, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
    return fluctuation(pop) < epsilon;
}

/// Snapshot with a precomputed fluctuation value.
inline TimeSeriesRecord make_record(const Population& pop, double fluct) {
    TimeSeriesRecord rec;
    rec.t = pop.t;
    rec.fluctuation = fluct;
    rec.shares = brand_shares(pop);
    rec.dominant = dominant_brand(rec.shares);
    return rec;
}

inline TimeSeriesRecord make_record(const Population& pop) { return make_record(pop, fluctuation(pop)); }

}  // namespace brandsim

#pragma once

// Domain types of the brand-adoption model, population initialization, the
// wish-to-assortment distance and brand assignment.
//
// A wish profile is a ragged matrix: need i has jmax[i] subentries. Profiles
// are stored flat in need-major order; NeedSchema maps (need, slot) to the
// flat index. An entry of exactly 0 marks an unknown need, known entries lie
// in (0, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "brandsim/config.hpp"
#include "brandsim/errors.hpp"
#include "brandsim/rng.hpp"

namespace brandsim {

inline constexpr int kMaxSubentries = 5;

class NeedSchema {
public:
    NeedSchema() = default;

    explicit NeedSchema(std::vector<int> jmax) : jmax_(std::move(jmax)) {
        if (jmax_.empty()) throw ConfigError("M", "schema needs at least one need");
        offsets_.reserve(jmax_.size() + 1);
        offsets_.push_back(0);
        for (int count : jmax_) {
            if (count < 1 || count > kMaxSubentries)
                throw ConfigError("jmax", "subentry counts must lie in [1, 5]");
            offsets_.push_back(offsets_.back() + static_cast<std::size_t>(count));
        }
    }

    std::size_t needs() const noexcept { return jmax_.size(); }
    int jmax(std::size_t need) const { return jmax_.at(need); }
    const std::vector<int>& jmax() const noexcept { return jmax_; }

    /// Total number of active slots, S = sum of jmax.
    std::size_t slots() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

    std::size_t index(std::size_t need, std::size_t slot) const { return offsets_[need] + slot; }

    bool operator==(const NeedSchema& other) const { return jmax_ == other.jmax_; }

private:
    std::vector<int> jmax_;
    std::vector<std::size_t> offsets_;
};

/// A customer's needs matrix, or a brand's assortment (same shape).
struct WishProfile {
    std::vector<double> entries;

    WishProfile() = default;
    explicit WishProfile(std::vector<double> values) : entries(std::move(values)) {}
    explicit WishProfile(const NeedSchema& schema) : entries(schema.slots(), 0.0) {}

    double& at(const NeedSchema& schema, std::size_t need, std::size_t slot) {
        return entries[schema.index(need, slot)];
    }
    double at(const NeedSchema& schema, std::size_t need, std::size_t slot) const {
        return entries[schema.index(need, slot)];
    }

    std::size_t size() const noexcept { return entries.size(); }
    bool conforms_to(const NeedSchema& schema) const { return entries.size() == schema.slots(); }

    bool operator==(const WishProfile&) const = default;
};

struct Customer {
    std::size_t id = 0;
    WishProfile wish;
    double rank = 0.0;
    std::size_t affiliation = 0;

    bool is_leader() const noexcept { return rank == 1.0; }
};

struct BrandProfile {
    std::size_t id = 0;
    WishProfile assortment;
    std::int64_t shop_count = 1;
};

struct Population {
    NeedSchema schema;
    std::vector<Customer> customers;
    std::vector<BrandProfile> brands;
    std::int64_t t = 0;

    std::size_t size() const noexcept { return customers.size(); }

    /// Indices of rank-1 customers in ascending order.
    std::vector<std::size_t> leaders() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < customers.size(); ++k)
            if (customers[k].is_leader()) out.push_back(k);
        return out;
    }
};

/// Mean squared difference over the S active slots. Unknown entries take
/// part as the literal value 0.
inline double distance(std::span<const double> w, std::span<const double> a) {
    if (w.size() != a.size()) throw InvariantError("distance: profile shapes differ");
    if (w.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t s = 0; s < w.size(); ++s) {
        const double d = w[s] - a[s];
        sum += d * d;
    }
    return sum / static_cast<double>(w.size());
}

inline double distance(const WishProfile& w, const WishProfile& a) {
    return distance(std::span<const double>(w.entries), std::span<const double>(a.entries));
}

/// Index of the nearest brand; ties go to the smallest index.
inline std::size_t assign_brand(const WishProfile& wish, std::span<const BrandProfile> brands) {
    if (brands.empty()) throw ConfigError("N", "assign_brand needs at least one brand");
    std::size_t best = 0;
    double best_distance = distance(wish, brands[0].assortment);
    for (std::size_t b = 1; b < brands.size(); ++b) {
        const double d = distance(wish, brands[b].assortment);
        if (d < best_distance) {
            best = b;
            best_distance = d;
        }
    }
    return best;
}

inline std::size_t assign_brand(const Customer& customer, std::span<const BrandProfile> brands) {
    return assign_brand(customer.wish, brands);
}

inline void refresh_affiliations(Population& pop) {
    for (auto& c : pop.customers) c.affiliation = assign_brand(c, pop.brands);
}

/// Draws jmax[i] uniformly from {1..5}, one draw per need in order.
inline NeedSchema init_schema(std::int64_t M, Rng& rng) {
    if (M < 1) throw ConfigError("M", "must be >= 1");
    std::vector<int> jmax(static_cast<std::size_t>(M));
    for (auto& count : jmax) count = 1 + static_cast<int>(rng.below(kMaxSubentries));
    return NeedSchema(std::move(jmax));
}

/// Builds the t = 0 population. Draw order on the stream:
///   1. the schema (init_schema);
///   2. brand assortments, brand by brand, each slot uniform on (0, 1];
///   3. customers one at a time: per slot a uniform01 coin (unknown when
///      below p_unknown), followed by a uniform (0, 1] value only for known
///      slots; then the customer's rank, uniform on [0, 1).
/// The leader_count highest ranks (ties to the lower index) are promoted to
/// rank 1; with aligned_leader_brand set, leaders adopt that assortment.
inline Population init_population(const SimConfig& cfg, Rng& rng) {
    validate(cfg);
    Population pop;
    pop.schema = init_schema(cfg.M, rng);
    const std::size_t slots = pop.schema.slots();

    pop.brands.resize(static_cast<std::size_t>(cfg.N));
    for (std::size_t b = 0; b < pop.brands.size(); ++b) {
        auto& brand = pop.brands[b];
        brand.id = b;
        brand.shop_count = cfg.shop_counts[b];
        brand.assortment = WishProfile(pop.schema);
        for (auto& v : brand.assortment.entries) v = rng.uniform_open01();
    }

    pop.customers.resize(static_cast<std::size_t>(cfg.K));
    for (std::size_t k = 0; k < pop.customers.size(); ++k) {
        auto& c = pop.customers[k];
        c.id = k;
        c.wish.entries.assign(slots, 0.0);
        for (auto& v : c.wish.entries) {
            const bool unknown = rng.bernoulli(cfg.p_unknown);
            v = unknown ? 0.0 : rng.uniform_open01();
        }
        c.rank = rng.uniform01();
    }

    if (cfg.leader_count > 0) {
        std::vector<std::size_t> order(pop.customers.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop.customers[a].rank > pop.customers[b].rank;
        });
        for (std::int64_t l = 0; l < cfg.leader_count; ++l) {
            auto& leader = pop.customers[order[static_cast<std::size_t>(l)]];
            leader.rank = 1.0;
            if (cfg.aligned_leader_brand)
                leader.wish = pop.brands[static_cast<std::size_t>(*cfg.aligned_leader_brand)].assortment;
        }
    }

    refresh_affiliations(pop);
    pop.t = 0;
    return pop;
}

}  // namespace brandsim

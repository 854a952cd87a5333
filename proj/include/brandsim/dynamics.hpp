#pragma once

// Interaction kernels and the sweep scheduler.
//
// Updating is asynchronous and random sequential: events are applied one at
// a time and each event copies at most one slot verbatim. Unknown (0)
// entries never transmit. Rng draw order per event:
//
//   copy_entry   need = below(M), slot = below(jmax[need]); if the source
//                slot is known, one bernoulli(p) coin.
//   pair_step    a = below(K), b = below(K - 1) shifted past a; then
//                copy_entry unless hierarchy ranks are equal.
//   leader_step  per leader (ascending index): partial Fisher-Yates over the
//                ascending non-leader list, pick s = s + below(n - s), then
//                copy_entry for that pupil, pupil by pupil.
//   shop_step    per brand (ascending): round(rate * shops) times,
//                customer = below(K), then copy_entry from the assortment.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "brandsim/config.hpp"
#include "brandsim/errors.hpp"
#include "brandsim/model.hpp"
#include "brandsim/rng.hpp"

namespace brandsim {

struct KernelParams {
    double p_copy = 0.5;
    std::int64_t leader_pupils = 0;
    double shop_teach_rate = 0.0;

    static KernelParams from_config(const SimConfig& cfg) {
        return {cfg.p_copy, cfg.leader_pupils, cfg.shop_teach_rate};
    }
};

struct CopyResult {
    bool copied = false;
    std::size_t need = 0;
    std::size_t slot = 0;
};

enum class EventKind { Pair, Leader, Shop };

/// One interaction. For Shop events `source` is a brand index, otherwise a
/// customer index. `attempted` is false when no copy_entry ran (equal ranks
/// in hierarchy mode).
struct EventRecord {
    EventKind kind = EventKind::Pair;
    std::size_t learner = 0;
    std::size_t source = 0;
    bool attempted = false;
    CopyResult copy;
};

struct NoObserver {
    void operator()(const EventRecord&) const noexcept {}
};

template <typename F>
concept EventObserver = std::invocable<F&, const EventRecord&>;

/// Attempts to copy one random slot of `source` into `learner`.
inline CopyResult copy_entry(const NeedSchema& schema, WishProfile& learner, std::span<const double> source,
                             Rng& rng, double p) {
    if (learner.size() != schema.slots() || source.size() != schema.slots())
        throw InvariantError("copy_entry: profile shapes differ from schema");
    CopyResult result;
    result.need = static_cast<std::size_t>(rng.below(schema.needs()));
    result.slot = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(schema.jmax(result.need))));
    const std::size_t index = schema.index(result.need, result.slot);
    if (source[index] == 0.0) return result;
    if (rng.bernoulli(p)) {
        learner.entries[index] = source[index];
        result.copied = true;
    }
    return result;
}

inline CopyResult copy_entry(const NeedSchema& schema, WishProfile& learner, const WishProfile& source, Rng& rng,
                             double p) {
    return copy_entry(schema, learner, std::span<const double>(source.entries), rng, p);
}

/// Copy probability of a hierarchy interaction: p_copy scaled by rank gap.
inline double hierarchy_copy_probability(double p_copy, double rank_high, double rank_low) {
    return std::clamp(p_copy * (rank_high - rank_low), 0.0, 1.0);
}

inline EventRecord pair_step(Population& pop, Mode mode, const KernelParams& params, Rng& rng) {
    const std::size_t K = pop.size();
    if (K < 2) throw ConfigError("K", "pair_step needs at least two customers");
    const auto first = static_cast<std::size_t>(rng.below(K));
    auto second = static_cast<std::size_t>(rng.below(K - 1));
    if (second >= first) ++second;

    EventRecord event;
    event.kind = EventKind::Pair;
    double p = params.p_copy;
    if (mode == Mode::Equality) {
        event.learner = first;
        event.source = second;
    } else {
        const double r1 = pop.customers[first].rank;
        const double r2 = pop.customers[second].rank;
        if (r1 == r2) {
            event.learner = first;
            event.source = second;
            return event;
        }
        event.learner = r1 < r2 ? first : second;
        event.source = r1 < r2 ? second : first;
        p = hierarchy_copy_probability(params.p_copy, pop.customers[event.source].rank,
                                       pop.customers[event.learner].rank);
    }
    event.attempted = true;
    event.copy = copy_entry(pop.schema, pop.customers[event.learner].wish, pop.customers[event.source].wish, rng, p);
    return event;
}

struct TeachingCounts {
    std::size_t teachings = 0;
    std::size_t copies = 0;
};

/// Every rank-1 customer teaches min(leader_pupils, #non-leaders) distinct
/// non-leaders. Leaders are never learners here.
template <EventObserver Observer = NoObserver>
TeachingCounts leader_step(Population& pop, const KernelParams& params, Rng& rng, Observer&& observe = {}) {
    TeachingCounts counts;
    const auto leaders = pop.leaders();
    if (leaders.empty() || params.leader_pupils <= 0) return counts;

    std::vector<std::size_t> followers;
    followers.reserve(pop.size() - leaders.size());
    for (std::size_t k = 0; k < pop.size(); ++k)
        if (!pop.customers[k].is_leader()) followers.push_back(k);
    const std::size_t pupils = std::min(static_cast<std::size_t>(params.leader_pupils), followers.size());

    std::vector<std::size_t> pool;
    for (std::size_t leader : leaders) {
        pool = followers;
        for (std::size_t s = 0; s < pupils; ++s) {
            const auto pick = s + static_cast<std::size_t>(rng.below(pool.size() - s));
            std::swap(pool[s], pool[pick]);
            EventRecord event{EventKind::Leader, pool[s], leader, true, {}};
            event.copy = copy_entry(pop.schema, pop.customers[pool[s]].wish, pop.customers[leader].wish, rng,
                                    params.p_copy);
            ++counts.teachings;
            counts.copies += event.copy.copied ? 1 : 0;
            observe(event);
        }
    }
    return counts;
}

/// Teaching events scheduled for one brand in a sweep. Rounds half away
/// from zero.
inline std::size_t shop_events(double shop_teach_rate, std::int64_t shop_count) {
    return static_cast<std::size_t>(std::llround(shop_teach_rate * static_cast<double>(shop_count)));
}

template <EventObserver Observer = NoObserver>
TeachingCounts shop_step(Population& pop, const KernelParams& params, Rng& rng, Observer&& observe = {}) {
    TeachingCounts counts;
    if (params.shop_teach_rate <= 0.0) return counts;
    for (std::size_t b = 0; b < pop.brands.size(); ++b) {
        const std::size_t events = shop_events(params.shop_teach_rate, pop.brands[b].shop_count);
        for (std::size_t e = 0; e < events; ++e) {
            const auto customer = static_cast<std::size_t>(rng.below(pop.size()));
            EventRecord event{EventKind::Shop, customer, b, true, {}};
            event.copy = copy_entry(pop.schema, pop.customers[customer].wish, pop.brands[b].assortment, rng,
                                    params.p_copy);
            ++counts.teachings;
            counts.copies += event.copy.copied ? 1 : 0;
            observe(event);
        }
    }
    return counts;
}

struct SweepCounts {
    std::size_t pair_events = 0;
    std::size_t pair_copies = 0;
    TeachingCounts leader;
    TeachingCounts shop;
};

/// One time unit: K pair events, then leader teaching, then shop teaching.
/// Affiliations are refreshed for every customer whose wish was written;
/// untouched wishes keep their argmin since assortments never change.
template <EventObserver Observer = NoObserver>
SweepCounts sweep(Population& pop, Mode mode, const KernelParams& params, Rng& rng, Observer&& observe = {}) {
    SweepCounts counts;
    std::vector<char> dirty(pop.size(), 0);
    auto track = [&](const EventRecord& event) {
        if (event.copy.copied) dirty[event.learner] = 1;
        observe(event);
    };

    for (std::size_t e = 0; e < pop.size(); ++e) {
        const EventRecord event = pair_step(pop, mode, params, rng);
        ++counts.pair_events;
        counts.pair_copies += event.copy.copied ? 1 : 0;
        track(event);
    }
    counts.leader = leader_step(pop, params, rng, track);
    counts.shop = shop_step(pop, params, rng, track);

    for (std::size_t k = 0; k < pop.size(); ++k)
        if (dirty[k]) pop.customers[k].affiliation = assign_brand(pop.customers[k], pop.brands);
    ++pop.t;
    return counts;
}

}  // namespace brandsim

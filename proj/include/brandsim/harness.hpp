#pragma once

// Seeded runs, ensembles of independent replications and parameter sweeps.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "brandsim/config.hpp"
#include "brandsim/dynamics.hpp"
#include "brandsim/errors.hpp"
#include "brandsim/metrics.hpp"
#include "brandsim/model.hpp"
#include "brandsim/rng.hpp"

namespace brandsim {

struct RunResult {
    std::vector<TimeSeriesRecord> records;
    Population final;
    std::optional<std::int64_t> converged_at;
};

/// Runs one simulation, calling on_record(record) at t = 0, every
/// record_every sweeps and at the final sweep, and observe(event) for every
/// interaction. Stops at consensus or max_sweeps. Returns the final
/// population and the sweep at which consensus was first observed.
template <typename OnRecord, EventObserver Observer = NoObserver>
std::pair<Population, std::optional<std::int64_t>> simulate(const SimConfig& cfg, OnRecord&& on_record,
                                                            Observer&& observe = {}) {
    validate(cfg);
    Rng rng(cfg.seed);
    Population pop = init_population(cfg, rng);
    const auto params = KernelParams::from_config(cfg);

    std::optional<std::int64_t> converged_at;
    double fluct = fluctuation(pop);
    on_record(make_record(pop, fluct));
    std::int64_t last_recorded = pop.t;
    for (;;) {
        if (is_consensus(fluct, cfg.epsilon)) {
            converged_at = pop.t;
            break;
        }
        if (pop.t >= cfg.max_sweeps) break;
        sweep(pop, cfg.mode, params, rng, observe);
        fluct = fluctuation(pop);
        if (pop.t % cfg.record_every == 0) {
            on_record(make_record(pop, fluct));
            last_recorded = pop.t;
        }
    }
    if (last_recorded != pop.t) on_record(make_record(pop, fluct));
    return {std::move(pop), converged_at};
}

template <EventObserver Observer = NoObserver>
RunResult run(const SimConfig& cfg, Observer&& observe = {}) {
    RunResult result;
    auto [pop, converged_at] =
        simulate(cfg, [&](TimeSeriesRecord rec) { result.records.push_back(std::move(rec)); }, observe);
    result.final = std::move(pop);
    result.converged_at = converged_at;
    return result;
}

/// What an ensemble keeps from each replication.
struct RunOutcome {
    std::optional<std::int64_t> converged_at;
    std::size_t final_dominant = 0;

    bool operator==(const RunOutcome&) const = default;
};

struct EnsembleSummary {
    std::int64_t runs = 0;
    double consensus_fraction = 0.0;
    /// Absent when no run converged.
    std::optional<double> mean_sweeps_to_consensus;
    /// Fraction of converged runs won by each brand; all zero when none converged.
    std::vector<double> dominant_brand_histogram;

    bool operator==(const EnsembleSummary&) const = default;
};

inline RunOutcome run_outcome(const SimConfig& cfg) {
    auto [pop, converged_at] = simulate(cfg, [](const TimeSeriesRecord&) {});
    return {converged_at, dominant_brand(brand_shares(pop))};
}

/// Pure fold over run outcomes. Only integer sums are accumulated, so the
/// result does not depend on the order of `outcomes`.
inline EnsembleSummary summarize(std::span<const RunOutcome> outcomes, std::size_t brands) {
    EnsembleSummary summary;
    summary.runs = static_cast<std::int64_t>(outcomes.size());
    std::vector<std::int64_t> wins(brands, 0);
    std::int64_t converged = 0;
    std::int64_t sweep_total = 0;
    for (const auto& outcome : outcomes) {
        if (!outcome.converged_at) continue;
        ++converged;
        sweep_total += *outcome.converged_at;
        ++wins.at(outcome.final_dominant);
    }
    summary.consensus_fraction =
        outcomes.empty() ? 0.0 : static_cast<double>(converged) / static_cast<double>(outcomes.size());
    summary.dominant_brand_histogram.assign(brands, 0.0);
    if (converged > 0) {
        summary.mean_sweeps_to_consensus = static_cast<double>(sweep_total) / static_cast<double>(converged);
        for (std::size_t b = 0; b < brands; ++b)
            summary.dominant_brand_histogram[b] = static_cast<double>(wins[b]) / static_cast<double>(converged);
    }
    return summary;
}

/// Runs replication i with seed derive_child_seed(cfg.seed, i) for
/// i in [0, runs), on `workers` threads.
inline EnsembleSummary ensemble(const SimConfig& cfg, std::int64_t runs, unsigned workers = 1) {
    if (runs < 1) throw ConfigError("runs", "must be >= 1");
    validate(cfg);
    const auto count = static_cast<std::size_t>(runs);
    std::vector<RunOutcome> outcomes(count);
    std::vector<std::exception_ptr> errors(count);

    auto replicate = [&](std::size_t i) {
        try {
            SimConfig child = cfg;
            child.seed = derive_child_seed(cfg.seed, i);
            outcomes[i] = run_outcome(child);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(count, 1024)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) replicate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) replicate(i);
            });
    }
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
    return summarize(outcomes, static_cast<std::size_t>(cfg.N));
}

inline constexpr std::string_view kSweepableParams[] = {"p_copy", "leader_count", "shop_teach_rate",
                                                        "K",      "N",            "p_unknown"};

/// Copy of `cfg` with one sweepable parameter replaced. Changing N pads
/// shop_counts with single shops or truncates it.
inline SimConfig with_param(SimConfig cfg, std::string_view name, double value) {
    if (name == "p_copy") cfg.p_copy = value;
    else if (name == "p_unknown") cfg.p_unknown = value;
    else if (name == "shop_teach_rate") cfg.shop_teach_rate = value;
    else if (name == "leader_count") cfg.leader_count = detail::integral_value(name, value);
    else if (name == "K") cfg.K = detail::integral_value(name, value);
    else if (name == "N") {
        cfg.N = detail::integral_value(name, value);
        if (cfg.N >= 1) cfg.shop_counts.resize(static_cast<std::size_t>(cfg.N), 1);
    } else {
        throw ConfigError(std::string(name), "not a sweepable parameter");
    }
    validate(cfg);
    return cfg;
}

/// One ensemble per value, all from the same base seed.
inline std::vector<std::pair<double, EnsembleSummary>> sweep_param(const SimConfig& cfg, std::string_view name,
                                                                   std::span<const double> values,
                                                                   std::int64_t runs = 1, unsigned workers = 1) {
    if (std::find(std::begin(kSweepableParams), std::end(kSweepableParams), name) == std::end(kSweepableParams))
        throw ConfigError(std::string(name), "not a sweepable parameter");
    std::vector<std::pair<double, EnsembleSummary>> rows;
    rows.reserve(values.size());
    for (double value : values) rows.emplace_back(value, ensemble(with_param(cfg, name, value), runs, workers));
    return rows;
}

}  // namespace brandsim

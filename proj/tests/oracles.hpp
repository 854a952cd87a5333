#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's model, dynamics or metrics code; profiles are handled as
// explicit ragged matrices indexed by jmax.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Ragged = std::vector<std::vector<double>>;

inline Ragged to_ragged(const std::vector<int>& jmax, const std::vector<double>& flat) {
    Ragged out;
    std::size_t pos = 0;
    for (int count : jmax) {
        out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                         flat.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(count)));
        pos += static_cast<std::size_t>(count);
    }
    return out;
}

inline double distance(const std::vector<int>& jmax, const Ragged& w, const Ragged& a) {
    double sum = 0.0;
    int slots = 0;
    for (std::size_t i = 0; i < jmax.size(); ++i)
        for (int j = 0; j < jmax[i]; ++j) {
            sum += (w[i][j] - a[i][j]) * (w[i][j] - a[i][j]);
            ++slots;
        }
    return sum / slots;
}

inline double fluctuation(const std::vector<int>& jmax, const std::vector<Ragged>& wishes) {
    double sum = 0.0;
    long pairs = 0;
    for (std::size_t a = 0; a < wishes.size(); ++a)
        for (std::size_t b = a + 1; b < wishes.size(); ++b) {
            sum += distance(jmax, wishes[a], wishes[b]);
            ++pairs;
        }
    return sum / static_cast<double>(pairs);
}

inline std::size_t argmin_first(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < v[best]) best = i;
    return best;
}

inline std::size_t argmax_first(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

inline std::vector<double> shares(const std::vector<std::size_t>& affiliation, std::size_t brands) {
    std::vector<double> out(brands, 0.0);
    for (std::size_t b = 0; b < brands; ++b) {
        int n = 0;
        for (auto a : affiliation) n += a == b ? 1 : 0;
        out[b] = static_cast<double>(n) / static_cast<double>(affiliation.size());
    }
    return out;
}

/// Hand-written replay of the documented draw order on a raw mt19937_64.
/// Supports the pair-step channel plus leader and shop teaching; used at
/// tiny scale to check the library event by event.
class Replay {
public:
    struct Agent {
        Ragged wish;
        double rank;
    };

    explicit Replay(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    double u01() { return static_cast<double>(eng_() >> 11) / 9007199254740992.0; }
    double u_open() { return 1.0 - u01(); }
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~n + 1) % n;
        std::uint64_t r;
        do r = eng_(); while (r < limit);
        return r % n;
    }

    std::vector<int> jmax;
    std::vector<Ragged> brands;
    std::vector<Agent> agents;

    void init(int N, int K, int M, double p_unknown, int leaders) {
        for (int i = 0; i < M; ++i) jmax.push_back(static_cast<int>(below(5)) + 1);
        for (int b = 0; b < N; ++b) {
            Ragged r;
            for (int i = 0; i < M; ++i) {
                r.emplace_back();
                for (int j = 0; j < jmax[i]; ++j) r.back().push_back(u_open());
            }
            brands.push_back(r);
        }
        for (int k = 0; k < K; ++k) {
            Agent a;
            for (int i = 0; i < M; ++i) {
                a.wish.emplace_back();
                for (int j = 0; j < jmax[i]; ++j) {
                    double coin = u01();
                    a.wish.back().push_back(coin < p_unknown ? 0.0 : u_open());
                }
            }
            a.rank = u01();
            agents.push_back(a);
        }
        for (int l = 0; l < leaders; ++l) {
            std::size_t top = 0;
            bool found = false;
            for (std::size_t k = 0; k < agents.size(); ++k) {
                if (agents[k].rank == 1.0) continue;
                if (!found || agents[k].rank > agents[top].rank) top = k;
                found = true;
            }
            agents[top].rank = 1.0;
        }
    }

    bool copy(Ragged& learner, const Ragged& source, double p) {
        const auto i = below(jmax.size());
        const auto j = below(static_cast<std::uint64_t>(jmax[i]));
        if (source[i][j] == 0.0) return false;
        if (u01() < p) {
            learner[i][j] = source[i][j];
            return true;
        }
        return false;
    }

    void sweep(bool hierarchy, double p_copy, int pupils, double shop_rate, const std::vector<int>& shops) {
        const std::size_t K = agents.size();
        for (std::size_t e = 0; e < K; ++e) {
            std::size_t a = below(K);
            std::size_t b = below(K - 1);
            if (b >= a) b += 1;
            if (!hierarchy) {
                copy(agents[a].wish, agents[b].wish, p_copy);
            } else if (agents[a].rank != agents[b].rank) {
                if (agents[a].rank > agents[b].rank) std::swap(a, b);
                double p = p_copy * (agents[b].rank - agents[a].rank);
                p = std::min(1.0, std::max(0.0, p));
                copy(agents[a].wish, agents[b].wish, p);
            }
        }
        std::vector<std::size_t> followers;
        for (std::size_t k = 0; k < K; ++k)
            if (agents[k].rank != 1.0) followers.push_back(k);
        const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(pupils), followers.size());
        for (std::size_t l = 0; l < K; ++l) {
            if (agents[l].rank != 1.0 || pupils == 0) continue;
            auto pool = followers;
            for (std::size_t s = 0; s < n; ++s) {
                std::swap(pool[s], pool[s + below(pool.size() - s)]);
                copy(agents[pool[s]].wish, agents[l].wish, p_copy);
            }
        }
        if (shop_rate > 0.0)
            for (std::size_t b = 0; b < brands.size(); ++b) {
                const long events = std::lround(shop_rate * shops[b]);
                for (long e = 0; e < events; ++e) {
                    const auto c = below(K);
                    copy(agents[c].wish, brands[b], p_copy);
                }
            }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace oracle

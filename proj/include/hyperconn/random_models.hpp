#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperconn/combinatorics.hpp"
#include "hyperconn/connectivity.hpp"
#include "hyperconn/errors.hpp"
#include "hyperconn/hypergraph.hpp"
#include "hyperconn/rng.hpp"

namespace hyperconn {

namespace detail {

inline void require_model_params(std::uint32_t n, std::uint32_t d) {
    if (d < 2 || n < d) {
        throw std::invalid_argument("random model: need n >= d >= 2, got n=" + std::to_string(n) +
                                    " d=" + std::to_string(d));
    }
}

}  // namespace detail

/// H_d(n, m): m distinct edges, uniform over all m-subsets of the C(n, d) potential edges.
inline Hypergraph sample_gnm(std::uint32_t n, std::uint32_t d, std::uint64_t m, Seed seed) {
    detail::require_model_params(n, d);
    const ColexCoder coder(n, d);
    const std::uint64_t total = coder.total();
    if (m > total) {
        throw std::out_of_range("sample_gnm: m=" + std::to_string(m) + " outside [0, " + std::to_string(total) + "]");
    }
    Rng rng(seed);
    // Floyd's algorithm: exactly m draws, uniform over m-subsets of [0, total)
    std::unordered_set<EdgeRank> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    std::vector<EdgeKey> keys;
    keys.reserve(static_cast<std::size_t>(m));
    for (std::uint64_t j = total - m; j < total; ++j) {
        EdgeRank r = rng.below(j + 1);
        if (!chosen.insert(r).second) {
            r = j;
            chosen.insert(r);
        }
        keys.push_back(EdgeKey::from_rank(coder, r));
    }
    return Hypergraph::from_keys(n, d, std::move(keys));
}

/// H_d(n, p): every potential edge independently with probability p (geometric skipping over colex ranks).
inline Hypergraph sample_gnp(std::uint32_t n, std::uint32_t d, double p, Seed seed) {
    detail::require_model_params(n, d);
    if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("sample_gnp: p=" + std::to_string(p) + " outside [0, 1]");
    const ColexCoder coder(n, d);
    const std::uint64_t total = coder.total();
    std::vector<EdgeKey> keys;
    if (p == 0.0) return Hypergraph::from_keys(n, d, {});
    if (p == 1.0) {
        for (EdgeRank r = 0; r < total; ++r) keys.push_back(EdgeKey::from_rank(coder, r));
        return Hypergraph::from_keys(n, d, std::move(keys));
    }
    Rng rng(seed);
    const double log_q = std::log1p(-p);
    // next = index of the next present edge; gaps are Geometric(p)
    double next = -1.0;
    while (true) {
        next += std::floor(std::log(rng.uniform_open_closed()) / log_q) + 1.0;
        if (next >= static_cast<double>(total)) break;
        keys.push_back(EdgeKey::from_rank(coder, static_cast<EdgeRank>(next)));
    }
    return Hypergraph::from_keys(n, d, std::move(keys));
}

/**
 * The random hypergraph process as a lazy stream of distinct edges.
 *
 * Each step draws a uniform rank and rejects ranks already emitted, which is
 * exactly a uniform draw among the remaining potential edges. Once more than
 * half of all potential edges have been emitted the remaining ranks are
 * listed explicitly and drawn from directly.
 */
class ProcessStream {
public:
    ProcessStream(std::uint32_t n, std::uint32_t d, Seed seed) : coder_((detail::require_model_params(n, d), n), d), rng_(seed) {}

    const ColexCoder& coder() const noexcept { return coder_; }
    std::uint64_t emitted() const noexcept { return emitted_; }
    bool exhausted() const noexcept { return emitted_ == coder_.total(); }

    /// Next edge, or nullopt once all C(n, d) edges were emitted.
    std::optional<EdgeKey> next() {
        const std::uint64_t total = coder_.total();
        if (emitted_ == total) return std::nullopt;
        EdgeRank r = 0;
        if (!listed_ && 2 * emitted_ <= total) {
            do {
                r = rng_.below(total);
            } while (!seen_.insert(r).second);
        } else {
            if (!listed_) {
                for (EdgeRank x = 0; x < total; ++x) {
                    if (!seen_.count(x)) remaining_.push_back(x);
                }
                seen_.clear();
                listed_ = true;
            }
            const std::uint64_t i = rng_.below(remaining_.size());
            r = remaining_[i];
            remaining_[i] = remaining_.back();
            remaining_.pop_back();
        }
        ++emitted_;
        return EdgeKey::from_rank(coder_, r);
    }

private:
    ColexCoder coder_;
    Rng rng_;
    std::unordered_set<EdgeRank> seen_;
    std::vector<EdgeRank> remaining_;
    bool listed_ = false;
    std::uint64_t emitted_ = 0;
};

inline ProcessStream process_stream(std::uint32_t n, std::uint32_t d, Seed seed) { return {n, d, seed}; }

/// A materialized process prefix together with its stopping times.
struct ProcessTrace {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint32_t k = 0;
    std::vector<EdgeKey> prefix;
    /// tau[j-1]: first step with minimum degree >= j.
    std::vector<std::uint64_t> tau;
    /// connected_at[j-1]: first step at which the hypergraph is j-connected.
    std::vector<std::uint64_t> connected_at;
    /// Number of full k-connectivity tests run (witness-cache misses included).
    std::uint64_t connectivity_tests = 0;

    /// The hypergraph after `step` edges.
    Hypergraph at(std::uint64_t step) const {
        if (step > prefix.size()) throw std::out_of_range("ProcessTrace::at: step beyond materialized prefix");
        return Hypergraph::from_keys(n, d, {prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(step)});
    }

    /// Named events: "min-degree>=j" and "j-connected".
    std::map<std::string, std::uint64_t> events() const {
        std::map<std::string, std::uint64_t> out;
        for (std::uint32_t j = 1; j <= k; ++j) {
            out["min-degree>=" + std::to_string(j)] = tau[j - 1];
            out[std::to_string(j) + "-connected"] = connected_at[j - 1];
        }
        return out;
    }
};

/**
 * Runs the process until it is k-connected and records tau_j and T_j for all
 * j <= k. Minimum degree is tracked incrementally. A failed connectivity test
 * leaves a cut witness; the test is repeated only when a new edge avoids the
 * witness separator and meets both of its sides, since no other edge can
 * invalidate the witness.
 */
inline ProcessTrace stopping_times(std::uint32_t n, std::uint32_t d, std::uint32_t k, Seed seed) {
    if (k == 0) throw std::invalid_argument("stopping_times: k must be at least 1");
    detail::require_model_params(n, d);
    if (n <= k) {
        throw UnreachableEvent("stopping_times: n=" + std::to_string(n) + " <= k=" + std::to_string(k) +
                               ", no hypergraph on n vertices is k-connected");
    }
    ProcessStream stream(n, d, seed);
    ProcessTrace trace{n, d, k, {}, std::vector<std::uint64_t>(k, 0), std::vector<std::uint64_t>(k, 0), 0};

    std::vector<std::uint32_t> degree(n + 1, 0);
    // below[j] = number of vertices with degree < j
    std::vector<std::uint64_t> below(k + 1, n);
    struct Pending {
        bool active = false;  // tau_j reached, T_j not yet
        bool stale = true;    // witness may no longer hold
        std::vector<char> sep_mask, side_mask;
        CutWitness witness;
    };
    std::vector<Pending> pending(k + 1);
    std::uint32_t unresolved = k;

    while (unresolved > 0) {
        auto edge = stream.next();
        if (!edge) {
            std::string which;
            for (std::uint32_t j = 1; j <= k; ++j) {
                if (trace.tau[j - 1] == 0) { which = "min-degree>=" + std::to_string(j); break; }
                if (trace.connected_at[j - 1] == 0) { which = std::to_string(j) + "-connected"; break; }
            }
            throw UnreachableEvent("stopping_times: process exhausted before event " + which);
        }
        const std::uint64_t step = stream.emitted();
        for (Vertex v : edge->vertices) {
            const std::uint32_t now = ++degree[v];
            if (now <= k) --below[now];
        }
        trace.prefix.push_back(std::move(*edge));
        const auto& added = trace.prefix.back().vertices;

        for (std::uint32_t j = 1; j <= k; ++j) {
            if (trace.tau[j - 1] == 0 && below[j] == 0) {
                trace.tau[j - 1] = step;
                pending[j].active = true;
                pending[j].stale = true;
            }
            auto& state = pending[j];
            if (!state.active) continue;
            if (!state.stale && state.witness.crossed_by(added, state.sep_mask, state.side_mask)) state.stale = true;
            if (!state.stale) continue;

            const Hypergraph h = trace.at(step);
            ++trace.connectivity_tests;
            auto result = is_k_connected(h, j);
            if (result.connected) {
                trace.connected_at[j - 1] = step;
                state.active = false;
                --unresolved;
                continue;
            }
            state.stale = false;
            state.witness = std::move(*result.witness);
            state.sep_mask.assign(n + 1, 0);
            state.side_mask.assign(n + 1, 0);
            for (Vertex v : state.witness.separator) state.sep_mask[v] = 1;
            for (Vertex v : state.witness.side) state.side_mask[v] = 1;
        }
    }
    return trace;
}

}  // namespace hyperconn

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace hyperconn {

/// Vertex label in [1, n].
using Vertex = std::uint32_t;
/// Colexicographic index of a d-subset.
using EdgeRank = std::uint64_t;

/// Exact binomial coefficient; throws std::overflow_error if it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 value = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // value * (n - k + i) / i is exact at every step
        value = value * (n - k + i) / i;
        if (value > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                      ") exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(value);
}

/**
 * Colexicographic ranking of d-subsets of [1, n].
 *
 * A sorted tuple a_1 < ... < a_d maps to sum_i C(a_i - 1, i). The rank of a
 * subset does not depend on n, so ranks stay valid when the vertex range
 * grows. Binomials are tabulated once per (n, d).
 */
class ColexCoder {
public:
    ColexCoder(std::uint32_t n, std::uint32_t d) : n_(n), d_(d), table_((n + 1) * (d + 1), 0) {
        if (d == 0) throw std::invalid_argument("ColexCoder: d must be positive");
        for (std::uint32_t c = 0; c <= n; ++c) {
            for (std::uint32_t i = 0; i <= d; ++i) table_[index(c, i)] = binomial(c, i);
        }
        total_ = binomial(n, d);
    }

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t d() const noexcept { return d_; }
    /// C(n, d): number of potential edges.
    std::uint64_t total() const noexcept { return total_; }

    std::uint64_t choose(std::uint32_t c, std::uint32_t i) const noexcept {
        return (c > n_ || i > d_) ? binomial(c, i) : table_[index(c, i)];
    }

    /// Rank of a strictly increasing tuple of 1-based vertices.
    EdgeRank rank(std::span<const Vertex> tuple) const noexcept {
        EdgeRank r = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) r += choose(tuple[i] - 1, static_cast<std::uint32_t>(i + 1));
        return r;
    }

    /// Inverse of rank: writes the d vertices in increasing order.
    void unrank(EdgeRank r, std::span<Vertex> out) const {
        if (r >= total_) throw std::out_of_range("ColexCoder::unrank: rank out of range");
        std::uint32_t hi = n_;  // exclusive bound on the 0-based value at position i
        for (std::uint32_t i = d_; i >= 1; --i) {
            // largest c < hi with C(c, i) <= r
            std::uint32_t lo = i - 1, top = hi - 1;
            while (lo < top) {
                const std::uint32_t mid = lo + (top - lo + 1) / 2;
                if (table_[index(mid, i)] <= r) lo = mid; else top = mid - 1;
            }
            out[i - 1] = lo + 1;
            r -= table_[index(lo, i)];
            hi = lo;
        }
    }

    std::vector<Vertex> unrank(EdgeRank r) const {
        std::vector<Vertex> out(d_);
        unrank(r, out);
        return out;
    }

private:
    std::size_t index(std::uint32_t c, std::uint32_t i) const noexcept {
        return static_cast<std::size_t>(c) * (d_ + 1) + i;
    }

    std::uint32_t n_;
    std::uint32_t d_;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> table_;
};

/// A potential edge: its sorted vertices together with its colex rank.
struct EdgeKey {
    std::vector<Vertex> vertices;
    EdgeRank rank = 0;

    static EdgeKey from_rank(const ColexCoder& coder, EdgeRank r) { return {coder.unrank(r), r}; }
    static EdgeKey from_vertices(const ColexCoder& coder, std::vector<Vertex> sorted) {
        const EdgeRank r = coder.rank(sorted);
        return {std::move(sorted), r};
    }

    friend bool operator==(const EdgeKey& a, const EdgeKey& b) { return a.rank == b.rank && a.vertices == b.vertices; }
};

/// Calls f(span) for every k-subset of `items` in lexicographic order of positions.
template <typename T, typename F>
void for_each_subset(std::span<const T> items, std::size_t k, F&& f) {
    if (k > items.size()) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<T> chosen(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) chosen[i] = items[idx[i]];
        if constexpr (std::is_same_v<decltype(f(std::span<const T>(chosen))), bool>) {
            if (!f(std::span<const T>(chosen))) return;
        } else {
            f(std::span<const T>(chosen));
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace hyperconn

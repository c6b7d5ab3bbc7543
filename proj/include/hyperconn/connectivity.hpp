#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "hyperconn/errors.hpp"
#include "hyperconn/hypergraph.hpp"
#include "hyperconn/structure.hpp"

namespace hyperconn {

/// Disjoint vertex sets covering the universe; each block sorted, blocks ordered by smallest vertex.
struct ComponentPartition {
    std::vector<std::vector<Vertex>> blocks;

    std::size_t count() const noexcept { return blocks.size(); }
    std::size_t largest() const noexcept {
        std::size_t best = 0;
        for (const auto& b : blocks) best = std::max(best, b.size());
        return best;
    }
};

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t size) : parent_(size), rank_(size, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
};

/// Components of the hypergraph after removing `blocked` vertices and every edge touching them.
inline ComponentPartition components_avoiding(const Hypergraph& h, const std::vector<char>& blocked) {
    DisjointSets sets(h.label_bound() + 1);
    for (std::size_t id = 0; id < h.edge_count(); ++id) {
        const auto e = h.edge(id);
        if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return blocked[v] != 0; })) continue;
        for (std::size_t i = 1; i < e.size(); ++i) sets.unite(e[0], e[i]);
    }
    std::vector<std::int64_t> slot(h.label_bound() + 1, -1);
    ComponentPartition partition;
    for (Vertex v : h.vertices()) {
        if (blocked[v]) continue;
        const std::uint32_t root = sets.find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::int64_t>(partition.blocks.size());
            partition.blocks.emplace_back();
        }
        partition.blocks[static_cast<std::size_t>(slot[root])].push_back(v);
    }
    return partition;
}

}  // namespace detail

inline ComponentPartition connected_components(const Hypergraph& h) {
    return detail::components_avoiding(h, std::vector<char>(h.label_bound() + 1, 0));
}

inline bool is_connected(const Hypergraph& h) { return connected_components(h).count() <= 1; }

/**
 * Certificate that a hypergraph is not k-connected: deleting `separator`
 * (with all incident edges) leaves `side` and the rest of the universe
 * nonempty with no surviving edge meeting both.
 */
struct CutWitness {
    std::vector<Vertex> separator;
    std::vector<Vertex> side;

    /// Checks the certificate by a direct scan of the edges.
    bool verify(const Hypergraph& h) const {
        std::vector<char> in_sep(h.label_bound() + 1, 0), in_side(h.label_bound() + 1, 0);
        for (Vertex v : separator) {
            if (!h.has_vertex(v) || in_sep[v]) return false;
            in_sep[v] = 1;
        }
        for (Vertex v : side) {
            if (!h.has_vertex(v) || in_sep[v] || in_side[v]) return false;
            in_side[v] = 1;
        }
        const std::size_t rest = h.n() - separator.size() - side.size();
        if (side.empty() || rest == 0) return false;
        for (std::size_t id = 0; id < h.edge_count(); ++id) {
            const auto e = h.edge(id);
            if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return in_sep[v] != 0; })) continue;
            const bool meets_side = std::any_of(e.begin(), e.end(), [&](Vertex v) { return in_side[v] != 0; });
            const bool meets_rest = std::any_of(e.begin(), e.end(), [&](Vertex v) { return in_side[v] == 0; });
            if (meets_side && meets_rest) return false;
        }
        return true;
    }

    /// True if adding `edge` could reconnect the witnessed cut: it avoids the separator and meets both sides.
    bool crossed_by(std::span<const Vertex> edge, const std::vector<char>& sep_mask,
                    const std::vector<char>& side_mask) const {
        bool meets_side = false, meets_rest = false;
        for (Vertex v : edge) {
            if (sep_mask[v]) return false;
            if (side_mask[v]) meets_side = true; else meets_rest = true;
        }
        return meets_side && meets_rest;
    }
};

/// Minimum vertex separator between two vertices under edge-removing deletion.
struct Separation {
    bool inseparable = false;
    std::vector<Vertex> separator;  ///< a minimum separator when separable

    /// Cut value with "inseparable" encoded as n - 1.
    std::uint32_t value(const Hypergraph& h) const {
        return inseparable ? h.n() - 1 : static_cast<std::uint32_t>(separator.size());
    }
};

namespace detail {

/**
 * Bounded search for vertex separators.
 *
 * Deleting a vertex removes every edge containing it, so a u-w path
 * (a sequence of edges) survives only if none of its edges touches the
 * separator. Hence any separator meets the closed set of every path: the
 * vertices of its edges other than u and w. The search branches on the
 * closed set of a shortest surviving path; paths with pairwise disjoint
 * closed sets give the lower bound used for pruning.
 */
class SeparatorSearch {
public:
    explicit SeparatorSearch(const Hypergraph& h)
        : h_(h), blocked_(h.label_bound() + 1, 0), seen_vertex_(h.label_bound() + 1, 0),
          seen_edge_(h.edge_count(), 0), parent_edge_(h.label_bound() + 1, 0), parent_from_(h.label_bound() + 1, 0) {}

    std::vector<char>& blocked() noexcept { return blocked_; }

    /// Shortest surviving u-w path as its closed vertex set (sorted); nullopt if w is unreachable.
    std::optional<std::vector<Vertex>> closed_path(Vertex u, Vertex w) {
        if (!bfs(u, w)) return std::nullopt;
        return trace_closed_set(u, w);
    }

    /// Closed set of the path to w in the last full BFS tree rooted at u.
    std::vector<Vertex> trace_closed_set(Vertex u, Vertex w) const {
        std::vector<Vertex> closed;
        for (Vertex x = w; x != u; x = parent_from_[x]) {
            for (Vertex y : h_.edge(parent_edge_[x])) {
                if (y != u && y != w) closed.push_back(y);
            }
        }
        std::sort(closed.begin(), closed.end());
        closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
        return closed;
    }

    /// BFS over surviving edges from u; stops early once `target` is reached (0 = explore all).
    bool bfs(Vertex u, Vertex target) {
        ++epoch_;
        if (epoch_ == 0) {
            std::fill(seen_vertex_.begin(), seen_vertex_.end(), 0);
            std::fill(seen_edge_.begin(), seen_edge_.end(), 0);
            epoch_ = 1;
        }
        queue_.clear();
        queue_.push_back(u);
        seen_vertex_[u] = epoch_;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const Vertex x = queue_[head];
            for (std::uint32_t id : h_.incident(x)) {
                if (seen_edge_[id] == epoch_) continue;
                seen_edge_[id] = epoch_;
                const auto e = h_.edge(id);
                if (std::any_of(e.begin(), e.end(), [&](Vertex y) { return blocked_[y] != 0; })) continue;
                for (Vertex y : e) {
                    if (seen_vertex_[y] == epoch_) continue;
                    seen_vertex_[y] = epoch_;
                    parent_edge_[y] = id;
                    parent_from_[y] = x;
                    if (y == target) return true;
                    queue_.push_back(y);
                }
            }
        }
        return target == 0;
    }

    bool reached(Vertex v) const noexcept { return seen_vertex_[v] == epoch_; }

    /// Greedy count of surviving u-w paths with pairwise disjoint closed sets, stopping at `cap`.
    /// `first` is the closed set of one already-known path.
    std::uint32_t disjoint_paths(Vertex u, Vertex w, const std::vector<Vertex>& first, std::uint32_t cap) {
        std::uint32_t count = 1;
        std::vector<Vertex> added(first);
        for (Vertex z : first) ++blocked_[z];
        while (count < cap) {
            auto next = closed_path(u, w);
            if (!next) break;
            // an empty closed set means an edge inside {u, w}: no separator exists
            if (next->empty()) {
                count = cap;
                break;
            }
            ++count;
            for (Vertex z : *next) {
                ++blocked_[z];
                added.push_back(z);
            }
        }
        for (Vertex z : added) --blocked_[z];
        return count;
    }

    /// A set of at most `budget` unblocked vertices separating u from w, given the current blocked set.
    std::optional<std::vector<Vertex>> separate(Vertex u, Vertex w, std::uint32_t budget,
                                                std::optional<std::vector<Vertex>> first = std::nullopt) {
        if (!first) first = closed_path(u, w);
        if (!first) return std::vector<Vertex>{};
        if (budget == 0 || first->empty()) return std::nullopt;
        if (disjoint_paths(u, w, *first, budget + 1) > budget) return std::nullopt;
        for (Vertex z : *first) {
            ++blocked_[z];
            auto rest = separate(u, w, budget - 1);
            --blocked_[z];
            if (rest) {
                rest->push_back(z);
                return rest;
            }
        }
        return std::nullopt;
    }

private:
    const Hypergraph& h_;
    std::vector<char> blocked_;
    std::vector<std::uint32_t> seen_vertex_;
    std::vector<std::uint32_t> seen_edge_;
    std::vector<std::uint32_t> parent_edge_;
    std::vector<Vertex> parent_from_;
    std::vector<Vertex> queue_;
    std::uint32_t epoch_ = 0;
};

inline void require_vertex(const Hypergraph& h, Vertex v, const char* what) {
    if (!h.has_vertex(v)) throw std::invalid_argument(std::string(what) + ": vertex " + std::to_string(v) + " not in hypergraph");
}

}  // namespace detail

/**
 * Minimum number of vertices (other than u, w) whose deletion, with their
 * incident edges, disconnects u from w. Inseparable only when some edge lies
 * inside {u, w}, which requires d = 2.
 */
inline Separation min_separating_cut(const Hypergraph& h, Vertex u, Vertex w) {
    detail::require_vertex(h, u, "min_separating_cut");
    detail::require_vertex(h, w, "min_separating_cut");
    if (u == w) throw std::invalid_argument("min_separating_cut: u == w");
    detail::SeparatorSearch search(h);
    auto first = search.closed_path(u, w);
    if (!first) return {};
    if (first->empty()) return {true, {}};
    std::uint32_t budget = search.disjoint_paths(u, w, *first, h.n());
    while (true) {
        if (auto found = search.separate(u, w, budget, first)) {
            std::sort(found->begin(), found->end());
            return {false, std::move(*found)};
        }
        ++budget;
    }
}

/// Outcome of a k-connectivity test; `witness` is set whenever a cut certificate exists.
struct ConnectivityResult {
    bool connected = false;
    std::optional<CutWitness> witness;

    explicit operator bool() const noexcept { return connected; }
};

namespace detail {

inline CutWitness make_witness(const Hypergraph& h, std::vector<Vertex> separator) {
    std::vector<char> blocked(h.label_bound() + 1, 0);
    for (Vertex v : separator) blocked[v] = 1;
    auto parts = components_avoiding(h, blocked);
    std::sort(separator.begin(), separator.end());
    return {std::move(separator), parts.blocks.empty() ? std::vector<Vertex>{} : parts.blocks.front()};
}

// Searches for a separator of size <= budget given that the vertices in
// `removed` are already deleted. Either the pivot u stays (then it is cut from
// some w) or it belongs to the separator (recurse on H - u).
inline std::optional<std::vector<Vertex>> find_separator(const Hypergraph& h, SeparatorSearch& search,
                                                         std::vector<Vertex>& removed, std::uint32_t budget) {
    auto& blocked = search.blocked();
    Vertex pivot = 0;
    for (Vertex v : h.vertices()) {
        if (blocked[v]) continue;
        if (pivot == 0 || h.degree(v) > h.degree(pivot)) pivot = v;
    }
    search.bfs(pivot, 0);
    std::vector<Vertex> unreached;
    for (Vertex v : h.vertices()) {
        if (!blocked[v] && !search.reached(v)) unreached.push_back(v);
    }
    if (!unreached.empty()) return removed;
    if (budget == 0) return std::nullopt;

    // first paths come from one BFS tree rooted at the pivot
    std::vector<std::vector<Vertex>> tree_paths(h.label_bound() + 1);
    for (Vertex w : h.vertices()) {
        if (!blocked[w] && w != pivot) tree_paths[w] = search.trace_closed_set(pivot, w);
    }
    for (Vertex w : h.vertices()) {
        if (blocked[w] || w == pivot) continue;
        if (auto cut = search.separate(pivot, w, budget, std::move(tree_paths[w]))) {
            cut->insert(cut->end(), removed.begin(), removed.end());
            return cut;
        }
    }
    ++blocked[pivot];
    removed.push_back(pivot);
    auto found = find_separator(h, search, removed, budget - 1);
    removed.pop_back();
    --blocked[pivot];
    return found;
}

}  // namespace detail

/**
 * k-connectivity: more than k vertices, and deleting any k - 1 vertices with
 * their incident edges leaves a connected hypergraph. On failure with n > k
 * the result carries a verified CutWitness.
 */
inline ConnectivityResult is_k_connected(const Hypergraph& h, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("is_k_connected: k must be at least 1");
    if (h.n() <= k) return {};
    auto parts = connected_components(h);
    if (parts.count() > 1) return {false, CutWitness{{}, parts.blocks.front()}};
    if (k == 1) return {true, std::nullopt};

    // cheap necessary condition: no vertex can be isolated by fewer than k deletions
    for (Vertex v : h.vertices()) {
        if (auto t = transversal_below(h, v, k)) return {false, CutWitness{std::move(*t), {v}}};
    }

    detail::SeparatorSearch search(h);
    std::vector<Vertex> removed;
    if (auto cut = detail::find_separator(h, search, removed, k - 1)) {
        return {false, detail::make_witness(h, std::move(*cut))};
    }
    return {true, std::nullopt};
}

/// Literal check over every (k-1)-subset using delete_vertices and connected_components.
inline bool brute_force_is_k_connected(const Hypergraph& h, std::uint32_t k, std::uint32_t max_n = 12) {
    if (k == 0) throw std::invalid_argument("brute_force_is_k_connected: k must be at least 1");
    if (h.n() > max_n) {
        throw ScaleGuardError("brute_force_is_k_connected: n=" + std::to_string(h.n()) + " exceeds guard " +
                              std::to_string(max_n));
    }
    if (h.n() <= k) return false;
    bool connected = true;
    for_each_subset<Vertex>(h.vertices(), k - 1, [&](std::span<const Vertex> s) {
        if (connected_components(h.delete_vertices(s)).count() > 1) connected = false;
        return connected;
    });
    return connected;
}

/// Limits of the exhaustive property-Q checker.
struct PropertyQLimits {
    std::uint32_t max_k = 3;
    std::uint32_t max_n = 500;
};

inline std::uint32_t default_q_budget(std::uint32_t n) {
    return static_cast<std::uint32_t>(std::ceil(std::log(static_cast<double>(n))));
}

/**
 * Property Q: for every set S of k - 1 vertices, the largest component of
 * H - S has at least (n - (k - 1)) - budget vertices.
 */
inline bool check_property_q(const Hypergraph& h, std::uint32_t k, std::optional<std::uint32_t> budget = std::nullopt,
                             PropertyQLimits limits = {}) {
    if (k == 0) throw std::invalid_argument("check_property_q: k must be at least 1");
    if (k > limits.max_k || h.n() > limits.max_n) {
        throw ScaleGuardError("check_property_q: (n=" + std::to_string(h.n()) + ", k=" + std::to_string(k) +
                              ") exceeds guard (n<=" + std::to_string(limits.max_n) +
                              ", k<=" + std::to_string(limits.max_k) + ")");
    }
    if (h.n() < k - 1) return false;
    const std::uint32_t slack = budget.value_or(default_q_budget(h.n()));
    const std::int64_t need = static_cast<std::int64_t>(h.n()) - (k - 1) - slack;
    std::vector<char> blocked(h.label_bound() + 1, 0);
    bool holds = true;
    for_each_subset<Vertex>(h.vertices(), k - 1, [&](std::span<const Vertex> s) {
        for (Vertex v : s) blocked[v] = 1;
        const auto parts = detail::components_avoiding(h, blocked);
        for (Vertex v : s) blocked[v] = 0;
        if (static_cast<std::int64_t>(parts.largest()) < need) holds = false;
        return holds;
    });
    return holds;
}

}  // namespace hyperconn

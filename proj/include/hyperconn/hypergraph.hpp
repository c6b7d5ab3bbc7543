#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperconn/combinatorics.hpp"

namespace hyperconn {

/// Rejection raised while assembling a hypergraph; carries the offending tuple.
class BuildError : public std::invalid_argument {
public:
    enum class Reason { kBadParameters, kWrongArity, kOutOfRange, kRepeatedVertex, kDuplicate, kNotAscending, kFormat };

    BuildError(Reason reason, std::vector<Vertex> tuple, const std::string& message)
        : std::invalid_argument(message), reason_(reason), tuple_(std::move(tuple)) {}

    Reason reason() const noexcept { return reason_; }
    const std::vector<Vertex>& tuple() const noexcept { return tuple_; }

private:
    Reason reason_;
    std::vector<Vertex> tuple_;
};

inline std::string format_tuple(std::span<const Vertex> tuple) {
    std::string out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(tuple[i]);
    }
    return out;
}

/**
 * A d-uniform hypergraph on a set of labelled vertices.
 *
 * Vertex labels live in [1, label_bound]; the vertex universe is a subset of
 * that range ([n] after build, [n] \ S after deletion, no relabelling).
 * Edges are stored sorted by colex rank, so two hypergraphs are equal iff
 * they have the same universe and the same edge set.
 */
class Hypergraph {
public:
    /// Builds the hypergraph on [n] from arbitrary-order tuples.
    static Hypergraph build(std::uint32_t n, std::uint32_t d, const std::vector<std::vector<Vertex>>& edges) {
        if (d < 2 || n < d) {
            throw BuildError(BuildError::Reason::kBadParameters, {},
                             "invalid parameters: need n >= d >= 2, got n=" + std::to_string(n) +
                                 " d=" + std::to_string(d));
        }
        std::vector<EdgeKey> keys;
        keys.reserve(edges.size());
        for (const auto& raw : edges) {
            std::vector<Vertex> tuple(raw);
            validate_tuple(n, d, tuple);
            std::sort(tuple.begin(), tuple.end());
            if (std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end()) {
                throw BuildError(BuildError::Reason::kRepeatedVertex, raw,
                                 "repeated vertex: " + format_tuple(raw));
            }
            EdgeRank r = 0;
            for (std::size_t i = 0; i < tuple.size(); ++i) r += binomial(tuple[i] - 1, i + 1);
            keys.push_back({std::move(tuple), r});
        }
        return from_keys(n, d, std::move(keys));
    }

    /// Builds from already sorted, ranked edges (sampler fast path). Duplicates are still rejected.
    static Hypergraph from_keys(std::uint32_t n, std::uint32_t d, std::vector<EdgeKey> keys) {
        std::vector<Vertex> universe(n);
        std::iota(universe.begin(), universe.end(), Vertex{1});
        return Hypergraph(n, d, std::move(universe), std::move(keys));
    }

    /// Edgeless hypergraph on [n].
    static Hypergraph empty(std::uint32_t n, std::uint32_t d) { return build(n, d, {}); }

    /// Number of vertices in the universe.
    std::uint32_t n() const noexcept { return static_cast<std::uint32_t>(vertices_.size()); }
    /// Largest admissible vertex label (the n of the original [n]).
    std::uint32_t label_bound() const noexcept { return label_bound_; }
    std::uint32_t d() const noexcept { return d_; }
    std::size_t edge_count() const noexcept { return ranks_.size(); }

    std::span<const Vertex> vertices() const noexcept { return vertices_; }
    bool has_vertex(Vertex v) const noexcept { return v >= 1 && v <= label_bound_ && present_[v]; }

    std::span<const Vertex> edge(std::size_t id) const noexcept {
        return {edge_data_.data() + id * d_, d_};
    }
    EdgeRank edge_rank(std::size_t id) const noexcept { return ranks_[id]; }
    std::span<const EdgeRank> edge_ranks() const noexcept { return ranks_; }

    std::uint32_t degree(Vertex v) const noexcept { return degree_[v]; }
    /// Identifiers of the edges containing v, in increasing order.
    std::span<const std::uint32_t> incident(Vertex v) const noexcept {
        return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::uint32_t min_degree() const noexcept {
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        for (Vertex v : vertices_) best = std::min(best, degree_[v]);
        return vertices_.empty() ? 0 : best;
    }

    std::vector<std::vector<Vertex>> edge_list() const {
        std::vector<std::vector<Vertex>> out;
        out.reserve(edge_count());
        for (std::size_t i = 0; i < edge_count(); ++i) out.emplace_back(edge(i).begin(), edge(i).end());
        return out;
    }

    /// Returns the hypergraph on universe \ S whose edges are those disjoint from S.
    Hypergraph delete_vertices(std::span<const Vertex> removed) const {
        std::vector<char> gone(label_bound_ + 1, 0);
        for (Vertex v : removed) {
            if (v < 1 || v > label_bound_) {
                throw std::out_of_range("delete_vertices: vertex " + std::to_string(v) + " outside [1, " +
                                        std::to_string(label_bound_) + "]");
            }
            gone[v] = 1;
        }
        std::vector<Vertex> universe;
        universe.reserve(vertices_.size());
        for (Vertex v : vertices_) {
            if (!gone[v]) universe.push_back(v);
        }
        std::vector<EdgeKey> keys;
        for (std::size_t id = 0; id < edge_count(); ++id) {
            const auto e = edge(id);
            if (std::none_of(e.begin(), e.end(), [&](Vertex v) { return gone[v] != 0; })) {
                keys.push_back({std::vector<Vertex>(e.begin(), e.end()), ranks_[id]});
            }
        }
        return Hypergraph(label_bound_, d_, std::move(universe), std::move(keys));
    }

    Hypergraph delete_vertices(std::initializer_list<Vertex> removed) const {
        return delete_vertices(std::span<const Vertex>(removed.begin(), removed.size()));
    }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.d_ == b.d_ && a.vertices_ == b.vertices_ && a.ranks_ == b.ranks_;
    }

private:
    Hypergraph(std::uint32_t label_bound, std::uint32_t d, std::vector<Vertex> universe, std::vector<EdgeKey> keys)
        : label_bound_(label_bound), d_(d), vertices_(std::move(universe)), present_(label_bound + 1, 0),
          degree_(label_bound + 1, 0), offsets_(label_bound + 2, 0) {
        for (Vertex v : vertices_) present_[v] = 1;
        std::sort(keys.begin(), keys.end(), [](const EdgeKey& a, const EdgeKey& b) { return a.rank < b.rank; });
        for (std::size_t i = 1; i < keys.size(); ++i) {
            if (keys[i].rank == keys[i - 1].rank) {
                throw BuildError(BuildError::Reason::kDuplicate, keys[i].vertices,
                                 "duplicate edge: " + format_tuple(keys[i].vertices));
            }
        }
        edge_data_.reserve(keys.size() * d_);
        ranks_.reserve(keys.size());
        for (const auto& key : keys) {
            for (Vertex v : key.vertices) {
                edge_data_.push_back(v);
                ++degree_[v];
            }
            ranks_.push_back(key.rank);
        }
        for (std::uint32_t v = 1; v <= label_bound_; ++v) offsets_[v + 1] = offsets_[v] + degree_[v];
        incidence_.resize(edge_data_.size());
        std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (std::uint32_t id = 0; id < ranks_.size(); ++id) {
            for (Vertex v : edge(id)) incidence_[cursor[v]++] = id;
        }
    }

    static void validate_tuple(std::uint32_t n, std::uint32_t d, std::span<const Vertex> tuple) {
        if (tuple.size() != d) {
            throw BuildError(BuildError::Reason::kWrongArity, {tuple.begin(), tuple.end()},
                             "wrong arity: expected " + std::to_string(d) + " vertices, got " +
                                 std::to_string(tuple.size()) + ": " + format_tuple(tuple));
        }
        for (Vertex v : tuple) {
            if (v < 1 || v > n) {
                throw BuildError(BuildError::Reason::kOutOfRange, {tuple.begin(), tuple.end()},
                                 "vertex out of range [1, " + std::to_string(n) + "]: " + format_tuple(tuple));
            }
        }
    }

    std::uint32_t label_bound_;
    std::uint32_t d_;
    std::vector<Vertex> vertices_;
    std::vector<char> present_;
    std::vector<Vertex> edge_data_;
    std::vector<EdgeRank> ranks_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> incidence_;
};

inline Hypergraph delete_vertices(const Hypergraph& h, std::span<const Vertex> removed) {
    return h.delete_vertices(removed);
}

/// Degree value -> number of vertices with that degree.
using DegreeHistogram = std::map<std::uint32_t, std::uint64_t>;

inline DegreeHistogram degree_profile(const Hypergraph& h) {
    DegreeHistogram histogram;
    for (Vertex v : h.vertices()) ++histogram[h.degree(v)];
    return histogram;
}

/// Number of vertices of degree exactly j.
inline std::uint64_t count_degree(const Hypergraph& h, std::uint32_t j) {
    std::uint64_t count = 0;
    for (Vertex v : h.vertices()) count += h.degree(v) == j;
    return count;
}

/// Complete d-uniform hypergraph on [n].
inline Hypergraph complete_hypergraph(std::uint32_t n, std::uint32_t d) {
    ColexCoder coder(n, d);
    std::vector<EdgeKey> keys;
    keys.reserve(coder.total());
    for (EdgeRank r = 0; r < coder.total(); ++r) keys.push_back(EdgeKey::from_rank(coder, r));
    return Hypergraph::from_keys(n, d, std::move(keys));
}

}  // namespace hyperconn

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hyperconn/errors.hpp"
#include "hyperconn/hypergraph.hpp"

namespace hyperconn {

/// Largest degree handled by the exact packing/covering searches.
inline constexpr std::uint32_t kMaxExactDegree = 32;

/// The link of a vertex: the (d-1)-sets e \ {v} of its incident edges, in edge-id order.
struct LinkSystem {
    Vertex center = 0;
    std::vector<std::uint32_t> edge_ids;
    std::vector<std::vector<Vertex>> petals;

    static LinkSystem of(const Hypergraph& h, Vertex v) {
        LinkSystem link;
        link.center = v;
        for (std::uint32_t id : h.incident(v)) {
            link.edge_ids.push_back(id);
            std::vector<Vertex> petal;
            for (Vertex x : h.edge(id)) {
                if (x != v) petal.push_back(x);
            }
            link.petals.push_back(std::move(petal));
        }
        return link;
    }

    std::size_t degree() const noexcept { return petals.size(); }
};

/// Maximum quasi-disjoint set: petal indices (into the link) of a maximum set packing.
struct PackingResult {
    std::uint32_t size = 0;
    std::vector<std::uint32_t> petals;
};

/// Minimum transversal: vertices meeting every petal.
struct TransversalResult {
    std::uint32_t size = 0;
    std::vector<Vertex> vertices;
};

namespace detail {

inline bool petals_meet(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    // petals are sorted
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return false;
}

inline void guard_degree(const LinkSystem& link) {
    if (link.degree() > kMaxExactDegree) {
        throw ScaleGuardError("exact link search: degree " + std::to_string(link.degree()) + " of vertex " +
                              std::to_string(link.center) + " exceeds cap " + std::to_string(kMaxExactDegree));
    }
}

class PackingSearch {
public:
    explicit PackingSearch(const LinkSystem& link) : conflict_(link.degree(), 0) {
        for (std::size_t i = 0; i < link.degree(); ++i) {
            for (std::size_t j = 0; j < link.degree(); ++j) {
                if (i != j && petals_meet(link.petals[i], link.petals[j])) conflict_[i] |= 1ULL << j;
            }
        }
    }

    PackingResult run() {
        const std::uint64_t all = conflict_.empty() ? 0 : (~0ULL >> (64 - conflict_.size()));
        search(all, 0, 0);
        PackingResult result;
        result.size = static_cast<std::uint32_t>(best_);
        for (std::uint64_t s = best_set_; s; s &= s - 1) result.petals.push_back(std::countr_zero(s));
        return result;
    }

private:
    // Include-lowest-first DFS visits leaves in lexicographic order, so keeping
    // only strict improvements yields the lexicographically first optimum. The
    // first leaf is the greedy packing.
    void search(std::uint64_t candidates, std::uint64_t chosen, int size) {
        if (candidates == 0) {
            if (size > best_) {
                best_ = size;
                best_set_ = chosen;
            }
            return;
        }
        if (size + std::popcount(candidates) <= best_) return;
        const int i = std::countr_zero(candidates);
        const std::uint64_t bit = 1ULL << i;
        search(candidates & ~conflict_[i] & ~bit, chosen | bit, size + 1);
        search(candidates & ~bit, chosen, size);
    }

    std::vector<std::uint64_t> conflict_;
    int best_ = 0;
    std::uint64_t best_set_ = 0;
};

/// Hitting-set search over petals given as bitmasks over a compressed vertex alphabet.
class CoverSearch {
public:
    explicit CoverSearch(const LinkSystem& link) {
        for (const auto& petal : link.petals) alphabet_.insert(alphabet_.end(), petal.begin(), petal.end());
        std::sort(alphabet_.begin(), alphabet_.end());
        alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
        for (const auto& petal : link.petals) {
            std::vector<std::uint32_t> mapped;
            for (Vertex x : petal) {
                mapped.push_back(static_cast<std::uint32_t>(
                    std::lower_bound(alphabet_.begin(), alphabet_.end(), x) - alphabet_.begin()));
            }
            petals_.push_back(std::move(mapped));
        }
    }

    const std::vector<Vertex>& alphabet() const noexcept { return alphabet_; }

    /// Some transversal of size <= budget, or nothing. Branches on the first unhit petal.
    std::optional<std::vector<std::uint32_t>> within(std::uint32_t budget) const {
        std::vector<char> taken(alphabet_.size(), 0);
        std::vector<std::uint32_t> chosen;
        if (branch(budget, taken, chosen)) return chosen;
        return std::nullopt;
    }

    /// Lexicographically smallest transversal of exactly `size` symbols (size must be optimal).
    std::vector<std::uint32_t> lex_first(std::uint32_t size) const {
        std::vector<std::uint32_t> chosen;
        std::vector<int> hits(petals_.size(), 0);
        lex(size, 0, hits, chosen);
        return chosen;
    }

    /// Number of pairwise disjoint unhit petals found greedily: a lower bound on what is left to hit.
    std::uint32_t packing_bound(const std::vector<char>& taken) const {
        std::vector<char> used(alphabet_.size(), 0);
        std::uint32_t count = 0;
        for (const auto& petal : petals_) {
            if (std::any_of(petal.begin(), petal.end(), [&](std::uint32_t x) { return taken[x] != 0; })) continue;
            if (std::any_of(petal.begin(), petal.end(), [&](std::uint32_t x) { return used[x] != 0; })) continue;
            for (std::uint32_t x : petal) used[x] = 1;
            ++count;
        }
        return count;
    }

private:
    bool branch(std::uint32_t budget, std::vector<char>& taken, std::vector<std::uint32_t>& chosen) const {
        const std::vector<std::uint32_t>* open = nullptr;
        for (const auto& petal : petals_) {
            if (std::none_of(petal.begin(), petal.end(), [&](std::uint32_t x) { return taken[x] != 0; })) {
                open = &petal;
                break;
            }
        }
        if (open == nullptr) return true;
        if (budget == 0 || packing_bound(taken) > budget) return false;
        for (std::uint32_t x : *open) {
            taken[x] = 1;
            chosen.push_back(x);
            if (branch(budget - 1, taken, chosen)) return true;
            chosen.pop_back();
            taken[x] = 0;
        }
        return false;
    }

    bool lex(std::uint32_t remaining, std::uint32_t next, std::vector<int>& hits,
             std::vector<std::uint32_t>& chosen) const {
        bool all_hit = true;
        for (std::size_t p = 0; p < petals_.size(); ++p) {
            if (hits[p]) continue;
            all_hit = false;
            // every symbol of an unhit petal is below `next`: it can no longer be hit
            if (petals_[p].back() < next) return false;
        }
        if (all_hit) return remaining == 0;
        if (remaining == 0) return false;
        std::vector<char> taken(alphabet_.size(), 0);
        for (std::uint32_t x : chosen) taken[x] = 1;
        if (packing_bound(taken) > remaining) return false;
        for (std::uint32_t x = next; x < alphabet_.size(); ++x) {
            chosen.push_back(x);
            for (std::size_t p = 0; p < petals_.size(); ++p) {
                if (std::find(petals_[p].begin(), petals_[p].end(), x) != petals_[p].end()) ++hits[p];
            }
            const bool ok = lex(remaining - 1, x + 1, hits, chosen);
            if (ok) return true;
            for (std::size_t p = 0; p < petals_.size(); ++p) {
                if (std::find(petals_[p].begin(), petals_[p].end(), x) != petals_[p].end()) --hits[p];
            }
            chosen.pop_back();
        }
        return false;
    }

    std::vector<Vertex> alphabet_;
    std::vector<std::vector<std::uint32_t>> petals_;  // sorted symbol indices
};

}  // namespace detail

/// Maximum set packing over the petals (exact). Ties resolve to the lexicographically first petal-index set.
inline PackingResult max_packing(const LinkSystem& link) {
    detail::guard_degree(link);
    if (link.degree() == 0) return {};
    return detail::PackingSearch(link).run();
}

/// Minimum transversal of the petals (exact). Ties resolve to the lexicographically smallest vertex set.
inline TransversalResult min_cover(const LinkSystem& link) {
    detail::guard_degree(link);
    if (link.degree() == 0) return {};
    detail::CoverSearch search(link);
    std::uint32_t size = search.packing_bound(std::vector<char>(search.alphabet().size(), 0));
    while (!search.within(size)) ++size;
    TransversalResult result;
    result.size = size;
    for (std::uint32_t x : search.lex_first(size)) result.vertices.push_back(search.alphabet()[x]);
    return result;
}

/// Quasi-disjoint witness: the edge ids of a maximum set of incident edges pairwise meeting only at v.
struct QuasiDisjointResult {
    std::uint32_t size = 0;
    std::vector<std::uint32_t> edge_ids;
};

inline QuasiDisjointResult max_quasi_disjoint(const Hypergraph& h, Vertex v) {
    const LinkSystem link = LinkSystem::of(h, v);
    const PackingResult packing = max_packing(link);
    QuasiDisjointResult result{packing.size, {}};
    for (std::uint32_t p : packing.petals) result.edge_ids.push_back(link.edge_ids[p]);
    return result;
}

/// Minimum vertex set T (v not in T) meeting every edge at v; deleting T isolates v.
inline TransversalResult min_transversal(const Hypergraph& h, Vertex v) {
    return min_cover(LinkSystem::of(h, v));
}

/// min(size of a maximum quasi-disjoint set at v, limit). Depth-bounded, so no degree cap.
inline std::uint32_t quasi_disjoint_up_to(const Hypergraph& h, Vertex v, std::uint32_t limit) {
    const LinkSystem link = LinkSystem::of(h, v);
    const std::size_t deg = link.degree();
    std::vector<char> used(h.label_bound() + 1, 0);
    std::uint32_t best = 0;
    std::function<void(std::size_t, std::uint32_t)> grow = [&](std::size_t from, std::uint32_t depth) {
        best = std::max(best, depth);
        if (best >= limit) return;
        for (std::size_t i = from; i < deg && depth + (deg - i) > best; ++i) {
            const auto& petal = link.petals[i];
            if (std::any_of(petal.begin(), petal.end(), [&](Vertex x) { return used[x] != 0; })) continue;
            for (Vertex x : petal) used[x] = 1;
            grow(i + 1, depth + 1);
            for (Vertex x : petal) used[x] = 0;
            if (best >= limit) return;
        }
    };
    grow(0, 0);
    return std::min(best, limit);
}

/// A transversal at v of size strictly below `limit`, if one exists (no tie-breaking, no degree cap).
inline std::optional<std::vector<Vertex>> transversal_below(const Hypergraph& h, Vertex v, std::uint32_t limit) {
    if (limit == 0) return std::nullopt;
    const LinkSystem link = LinkSystem::of(h, v);
    if (link.degree() == 0) return std::vector<Vertex>{};
    detail::CoverSearch search(link);
    auto found = search.within(limit - 1);
    if (!found) return std::nullopt;
    std::vector<Vertex> out;
    for (std::uint32_t x : *found) out.push_back(search.alphabet()[x]);
    std::sort(out.begin(), out.end());
    return out;
}

/// counts[(j, l)] = number of vertices whose maximum quasi-disjoint set has size j and degree j + l.
struct QuasiProfile {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (const auto& [key, count] : counts) sum += count;
        return sum;
    }

    /// Mass on {(j, l) : j <= k - 1, l >= 1}.
    std::uint64_t deficient_mass(std::uint32_t k) const {
        std::uint64_t sum = 0;
        for (const auto& [key, count] : counts) {
            if (key.first + 1 <= k && key.second >= 1) sum += count;
        }
        return sum;
    }
};

inline QuasiProfile quasi_profile(const Hypergraph& h) {
    QuasiProfile profile;
    for (Vertex v : h.vertices()) {
        const std::uint32_t j = max_quasi_disjoint(h, v).size;
        ++profile.counts[{j, h.degree(v) - j}];
    }
    return profile;
}

}  // namespace hyperconn

#include <gtest/gtest.h>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "hyperconn/hyperconn.hpp"
#include "oracles.hpp"

using namespace hyperconn;

namespace {

double chi_square(const std::map<std::vector<EdgeRank>, std::uint64_t>& counts, std::size_t cells, double total) {
    const double expected = total / static_cast<double>(cells);
    double stat = 0.0;
    for (const auto& [key, c] : counts) stat += (c - expected) * (c - expected) / expected;
    stat += static_cast<double>(cells - counts.size()) * expected;
    return stat;
}

double critical(std::size_t cells, double alpha = 0.001) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(cells - 1.0), alpha));
}

}  // namespace

TEST(Gnm, ForcedCases) {
    EXPECT_EQ(sample_gnm(5, 3, 10, {3, 0}), complete_hypergraph(5, 3));
    EXPECT_EQ(sample_gnm(5, 3, 0, {3, 0}).edge_count(), 0u);
    EXPECT_THROW(sample_gnm(5, 3, 11, {3, 0}), std::out_of_range);
}

TEST(Gnm, Deterministic) {
    EXPECT_EQ(sample_gnm(50, 3, 200, {8, 4}), sample_gnm(50, 3, 200, {8, 4}));
    EXPECT_FALSE(sample_gnm(50, 3, 200, {8, 4}) == sample_gnm(50, 3, 200, {8, 5}));
}

TEST(Gnm, UnorderedPairsUniform) {
    // 6 possible pairs of triples on 4 vertices
    std::map<std::vector<EdgeRank>, std::uint64_t> counts;
    const std::uint64_t seeds = 30000;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        auto h = sample_gnm(4, 3, 2, {17, s});
        ++counts[{h.edge_ranks().begin(), h.edge_ranks().end()}];
    }
    EXPECT_LT(chi_square(counts, 6, seeds), critical(6));
}

TEST(Gnp, Extremes) {
    EXPECT_EQ(sample_gnp(8, 3, 0.0, {1, 0}).edge_count(), 0u);
    EXPECT_EQ(sample_gnp(8, 3, 1.0, {1, 0}), complete_hypergraph(8, 3));
    EXPECT_THROW(sample_gnp(8, 3, 1.5, {1, 0}), std::out_of_range);
}

TEST(Gnp, EachEdgeMarginal) {
    // every one of the 20 triples on 6 vertices appears with probability p
    const double p = 0.3;
    const std::uint64_t seeds = 5000;
    std::vector<std::uint64_t> hits(20, 0);
    for (std::uint64_t s = 0; s < seeds; ++s) {
        auto h = sample_gnp(6, 3, p, {21, s});
        for (EdgeRank r : h.edge_ranks()) ++hits[r];
    }
    const boost::math::binomial_distribution<> law(seeds, p);
    // Bonferroni over 20 cells at overall level 0.001
    const double lo = boost::math::quantile(law, 0.0005 / 20), hi = boost::math::quantile(law, 1 - 0.0005 / 20);
    for (auto c : hits) {
        EXPECT_GE(c, lo);
        EXPECT_LE(c, hi);
    }
}

TEST(Process, NoDuplicatesAndExhaustion) {
    auto stream = process_stream(7, 3, {4, 2});
    std::set<EdgeRank> seen;
    while (auto e = stream.next()) {
        EXPECT_TRUE(seen.insert(e->rank).second);
        EXPECT_EQ(ColexCoder(7, 3).rank(e->vertices), e->rank);
    }
    EXPECT_EQ(seen.size(), 35u);
    EXPECT_TRUE(stream.exhausted());
    EXPECT_FALSE(stream.next().has_value());
}

TEST(Process, SameSeedSamePrefix) {
    auto a = process_stream(30, 4, {9, 1}), b = process_stream(30, 4, {9, 1});
    for (int i = 0; i < 500; ++i) EXPECT_EQ(a.next()->rank, b.next()->rank);
}

TEST(Process, PrefixSetMatchesGnm) {
    // the unordered length-2 prefix has the same law as sample_gnm(4,3,2): uniform over 6 pairs
    std::map<std::vector<EdgeRank>, std::uint64_t> counts;
    const std::uint64_t seeds = 30000;
    for (std::uint64_t s = 0; s < seeds; ++s) {
        auto stream = process_stream(4, 3, {23, s});
        std::vector<EdgeRank> pair{stream.next()->rank, stream.next()->rank};
        std::sort(pair.begin(), pair.end());
        ++counts[pair];
    }
    EXPECT_LT(chi_square(counts, 6, seeds), critical(6));
}

TEST(StoppingTimes, SmallForcedValues) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto t = stopping_times(3, 3, 1, {s, 0});
        EXPECT_EQ(t.tau[0], 1u);
        EXPECT_EQ(t.connected_at[0], 1u);
        auto u = stopping_times(4, 3, 2, {s, 0});
        EXPECT_EQ(u.tau, (std::vector<std::uint64_t>{2, 3}));
        EXPECT_EQ(u.connected_at, (std::vector<std::uint64_t>{2, 4}));
    }
}

TEST(StoppingTimes, UnreachableEvents) {
    EXPECT_THROW(stopping_times(3, 3, 3, {1, 0}), UnreachableEvent);
    // the complete 3-uniform hypergraph on 4 vertices is not 3-connected
    EXPECT_THROW(stopping_times(4, 3, 3, {1, 0}), UnreachableEvent);
}

TEST(StoppingTimes, OrderingAndFirstHitting) {
    for (std::uint64_t s = 0; s < 25; ++s) {
        const std::uint32_t n = 12 + static_cast<std::uint32_t>(s % 5);
        const std::uint32_t k = 3;
        auto t = stopping_times(n, 3, k, {77, s});
        std::set<EdgeRank> distinct;
        for (const auto& e : t.prefix) distinct.insert(e.rank);
        EXPECT_EQ(distinct.size(), t.prefix.size());
        EXPECT_EQ(t.prefix.size(), t.connected_at[k - 1]);
        for (std::uint32_t j = 0; j < k; ++j) {
            EXPECT_LE(t.tau[j], t.connected_at[j]);
            if (j + 1 < k) {
                EXPECT_LE(t.tau[j], t.tau[j + 1]);
                EXPECT_LE(t.connected_at[j], t.connected_at[j + 1]);
            }
            // first step where the event holds, checked against the literal oracle
            const auto before = t.at(t.connected_at[j] - 1), at = t.at(t.connected_at[j]);
            EXPECT_FALSE(brute_force_is_k_connected(before, j + 1, 20));
            EXPECT_TRUE(brute_force_is_k_connected(at, j + 1, 20));
            EXPECT_LT(t.at(t.tau[j] - 1).min_degree(), j + 1);
            EXPECT_GE(t.at(t.tau[j]).min_degree(), j + 1);
        }
        // monotone events keep holding on later prefixes
        for (std::uint64_t step = t.connected_at[0]; step <= t.prefix.size(); step += 3) {
            EXPECT_TRUE(is_k_connected(t.at(step), 1).connected);
        }
        const auto events = t.events();
        EXPECT_EQ(events.at("min-degree>=2"), t.tau[1]);
        EXPECT_EQ(events.at("3-connected"), t.connected_at[2]);
    }
}

TEST(StoppingTimes, Deterministic) {
    auto a = stopping_times(200, 3, 2, {5, 3}), b = stopping_times(200, 3, 2, {5, 3});
    EXPECT_EQ(a.tau, b.tau);
    EXPECT_EQ(a.connected_at, b.connected_at);
    ASSERT_EQ(a.prefix.size(), b.prefix.size());
    for (std::size_t i = 0; i < a.prefix.size(); ++i) EXPECT_EQ(a.prefix[i].rank, b.prefix[i].rank);
}

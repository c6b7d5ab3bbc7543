#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperconn/combinatorics.hpp"

namespace hyperconn {

/// Edge counts and probabilities at and around the k-connectivity threshold.
struct ThresholdParams {
    std::uint32_t n = 0, d = 0, k = 0;
    double c = 0.0;
    double omega = 0.0;
    /// ceil((n/d)(ln n + (k-1) ln ln n + c)), clamped to [0, C(n,d)].
    std::uint64_t m_at_c = 0;
    /// (d-1)! (ln n + (k-1) ln ln n + c) / n^(d-1), clamped to [0, 1].
    double p_at_c = 0.0;
    /// Window ends for the supplied omega: offsets -omega and +omega.
    std::uint64_t m0 = 0, m1 = 0;
    /// Window ends for omega = ln ln ln n; absent when that is not positive (n < 16).
    std::optional<double> omega_prime;
    std::optional<std::uint64_t> m0_prime, m1_prime;
};

namespace detail {

inline double potential_edges(std::uint32_t n, std::uint32_t d) {
    try {
        return static_cast<double>(binomial(n, d));
    } catch (const std::overflow_error&) {
        return std::exp(std::lgamma(n + 1.0) - std::lgamma(d + 1.0) - std::lgamma(n - d + 1.0));
    }
}

/// ln n + (k-1) ln ln n; the second term is exactly zero for k = 1.
inline double threshold_base(std::uint32_t n, std::uint32_t k) {
    const double ln_n = std::log(static_cast<double>(n));
    return k == 1 ? ln_n : ln_n + (k - 1.0) * std::log(ln_n);
}

inline std::uint64_t edge_threshold(std::uint32_t n, std::uint32_t d, double offset) {
    const double raw = std::ceil(static_cast<double>(n) / d * offset);
    const double cap = potential_edges(n, d);
    if (!(raw > 0.0)) return 0;
    return static_cast<std::uint64_t>(std::min(raw, cap));
}

/// log C(N, s) for large N; exact summation when the smaller side is short.
inline long double log_choose(std::uint64_t big, std::uint64_t s) {
    if (s > big) return -std::numeric_limits<long double>::infinity();
    s = std::min(s, big - s);
    if (s > 2'000'000) {
        const long double n = static_cast<long double>(big);
        return std::lgamma(n + 1.0L) - std::lgamma(static_cast<long double>(s) + 1.0L) -
               std::lgamma(n - static_cast<long double>(s) + 1.0L);
    }
    long double sum = 0.0L;
    for (std::uint64_t i = 0; i < s; ++i) {
        sum += std::log(static_cast<long double>(big - i) / static_cast<long double>(i + 1));
    }
    return sum;
}

}  // namespace detail

inline ThresholdParams thresholds(std::uint32_t n, std::uint32_t d, std::uint32_t k, double c, double omega) {
    if (n < 3) throw std::invalid_argument("thresholds: n=" + std::to_string(n) + " too small for ln ln n (need n >= 3)");
    if (d < 2 || k < 1) throw std::invalid_argument("thresholds: need d >= 2 and k >= 1");
    if (!(omega > 0.0)) throw std::invalid_argument("thresholds: omega must be positive");
    ThresholdParams t;
    t.n = n;
    t.d = d;
    t.k = k;
    t.c = c;
    t.omega = omega;
    const double base = detail::threshold_base(n, k);
    t.m_at_c = detail::edge_threshold(n, d, base + c);
    const double log_p = std::lgamma(static_cast<double>(d)) - (d - 1.0) * std::log(static_cast<double>(n));
    t.p_at_c = std::clamp((base + c) * std::exp(log_p), 0.0, 1.0);
    t.m0 = detail::edge_threshold(n, d, base - omega);
    t.m1 = detail::edge_threshold(n, d, base + omega);
    const double lll = std::log(std::log(std::log(static_cast<double>(n))));
    if (lll > 0.0) {
        t.omega_prime = lll;
        t.m0_prime = detail::edge_threshold(n, d, base - lll);
        t.m1_prime = detail::edge_threshold(n, d, base + lll);
    }
    return t;
}

/// Poisson limit of the number of degree-(k-1) vertices and the resulting k-connectivity probability.
struct PoissonLimit {
    double lambda = 0.0;
    double prob_k_connected = 0.0;
};

/// exp(-exp(-c)/(k-1)!).
inline double limit_prob_k_connected(double c, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("limit_prob_k_connected: k must be at least 1");
    if (c == std::numeric_limits<double>::infinity()) return 1.0;
    return std::exp(-std::exp(-c - std::lgamma(static_cast<double>(k))));
}

inline PoissonLimit poisson_limit(double c, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("poisson_limit: k must be at least 1");
    const double lambda = std::exp(-c - std::lgamma(static_cast<double>(k)));
    return {lambda, std::exp(-lambda)};
}

/**
 * P(deg(v) = j) in H_d(n, m): hypergeometric with C(n-1, d-1) edges through v
 * among C(n, d). Evaluated in log space as
 *   log C(K, j) + sum_{i < m-j} log1p(-K/(N-i)) + sum_{t=m-j+1}^{m} log(t / (N-t+1)),
 * i.e. C(K,j) * [C(N-K, m-j)/C(N, m-j)] * [C(N, m-j)/C(N, m)].
 */
inline double exact_degree_pmf(std::uint32_t n, std::uint32_t d, std::uint64_t m, std::uint64_t j) {
    if (d < 2 || n < d) throw std::invalid_argument("exact_degree_pmf: need n >= d >= 2");
    const std::uint64_t total = binomial(n, d);
    const std::uint64_t through = binomial(n - 1, d - 1);
    if (m > total) throw std::out_of_range("exact_degree_pmf: m exceeds C(n,d)");
    if (j > std::min(m, through)) throw std::out_of_range("exact_degree_pmf: j exceeds min(m, C(n-1,d-1))");
    // long double: the sums run over up to ~1e6 terms and must stay well below 1e-10 relative error
    const long double big = static_cast<long double>(total), k_in = static_cast<long double>(through);
    long double log_p = detail::log_choose(through, j);
    for (std::uint64_t i = 0; i < m - j; ++i) {
        const long double ratio = k_in / (big - static_cast<long double>(i));
        if (ratio >= 1.0L) return 0.0;
        log_p += std::log1p(-ratio);
    }
    for (std::uint64_t t = m - j + 1; t <= m; ++t) {
        log_p += std::log(static_cast<long double>(t) / (big - static_cast<long double>(t) + 1.0L));
    }
    return static_cast<double>(std::exp(log_p));
}

/// The whole degree distribution at once (same formula, prefix sums over i).
inline std::vector<double> degree_pmf_table(std::uint32_t n, std::uint32_t d, std::uint64_t m) {
    const std::uint64_t total = binomial(n, d);
    const std::uint64_t through = binomial(n - 1, d - 1);
    if (m > total) throw std::out_of_range("degree_pmf_table: m exceeds C(n,d)");
    const long double big = static_cast<long double>(total), k_in = static_cast<long double>(through);
    std::vector<long double> prefix(m + 1, 0.0L);  // prefix[s] = sum_{i<s} log1p(-K/(N-i))
    for (std::uint64_t i = 0; i < m; ++i) {
        const long double ratio = k_in / (big - static_cast<long double>(i));
        prefix[i + 1] = ratio >= 1.0L ? -std::numeric_limits<long double>::infinity() : prefix[i] + std::log1p(-ratio);
    }
    const std::uint64_t top = std::min(m, through);
    std::vector<double> pmf(top + 1, 0.0);
    long double log_ck = 0.0L, shift = 0.0L;
    for (std::uint64_t j = 0; j <= top; ++j) {
        if (j > 0) {
            log_ck += std::log(static_cast<long double>(through - j + 1) / static_cast<long double>(j));
            const std::uint64_t t = m - j + 1;
            shift += std::log(static_cast<long double>(t) / (big - static_cast<long double>(t) + 1.0L));
        }
        pmf[j] = static_cast<double>(std::exp(log_ck + prefix[m - j] + shift));
    }
    return pmf;
}

/// E[number of vertices of degree k-1] in H_d(n, m).
inline double exact_expected_deg_count(std::uint32_t n, std::uint32_t d, std::uint64_t m, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("exact_expected_deg_count: k must be at least 1");
    return static_cast<double>(n) * exact_degree_pmf(n, d, m, k - 1);
}

/// P(e(H_d(n, p)) = m): Binomial(C(n, d), p) mass.
inline double edge_count_pmf(std::uint32_t n, std::uint32_t d, double p, std::uint64_t m) {
    if (d < 2 || n < d) throw std::invalid_argument("edge_count_pmf: need n >= d >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw std::out_of_range("edge_count_pmf: p outside [0, 1]");
    const std::uint64_t total = binomial(n, d);
    if (m > total) throw std::out_of_range("edge_count_pmf: m exceeds C(n,d)");
    if (p == 0.0) return m == 0 ? 1.0 : 0.0;
    if (p == 1.0) return m == total ? 1.0 : 0.0;
    const double log_mass = static_cast<double>(detail::log_choose(total, m)) + static_cast<double>(m) * std::log(p) +
                            static_cast<double>(total - m) * std::log1p(-p);
    return std::exp(log_mass);
}

inline double poisson_pmf(double lambda, std::uint64_t x) {
    if (lambda == 0.0) return x == 0 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(x) * std::log(lambda) - lambda - std::lgamma(static_cast<double>(x) + 1.0));
}

}  // namespace hyperconn

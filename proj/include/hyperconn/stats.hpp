#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace hyperconn {

/// Proportion estimate with a Wilson score interval.
struct Proportion {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

inline Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054) {
    Proportion p{successes, trials, 0.0, 0.0, 1.0};
    if (trials == 0) return p;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    p.estimate = phat;
    p.lower = std::max(0.0, std::min(phat, center - half));
    p.upper = std::min(1.0, std::max(phat, center + half));
    return p;
}

/// Empirical law of a count observable.
class CountDistribution {
public:
    void add(std::uint64_t x) {
        ++counts_[x];
        ++total_;
    }

    std::uint64_t total() const noexcept { return total_; }
    const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }

    double frequency(std::uint64_t x) const {
        const auto it = counts_.find(x);
        return it == counts_.end() || total_ == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_);
    }

    double mean() const {
        double sum = 0.0;
        for (const auto& [x, c] : counts_) sum += static_cast<double>(x) * static_cast<double>(c);
        return total_ ? sum / static_cast<double>(total_) : 0.0;
    }

    double variance() const {
        if (total_ < 2) return 0.0;
        const double mu = mean();
        double sum = 0.0;
        for (const auto& [x, c] : counts_) sum += (static_cast<double>(x) - mu) * (static_cast<double>(x) - mu) * static_cast<double>(c);
        return sum / static_cast<double>(total_ - 1);
    }

    std::uint64_t max() const { return counts_.empty() ? 0 : counts_.rbegin()->first; }

    /// Half the L1 distance to a reference pmf on the nonnegative integers.
    double total_variation(const std::function<double(std::uint64_t)>& pmf) const {
        double l1 = 0.0, covered = 0.0;
        for (std::uint64_t x = 0; x <= max(); ++x) {
            const double q = pmf(x);
            covered += q;
            l1 += std::abs(frequency(x) - q);
        }
        // reference mass above the largest observed value
        l1 += std::max(0.0, 1.0 - covered);
        return 0.5 * l1;
    }

private:
    std::map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

}  // namespace hyperconn

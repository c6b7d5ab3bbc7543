#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperconn/analytics.hpp"
#include "hyperconn/connectivity.hpp"
#include "hyperconn/random_models.hpp"
#include "hyperconn/stats.hpp"
#include "hyperconn/structure.hpp"

namespace hyperconn {

/// Invalid or incomplete experiment configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { kHittingTimes, kThresholdSweep, kPoissonCount, kQuasiDisjoint, kPropertyQ };

inline std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kHittingTimes: return "hitting-times";
        case ExperimentKind::kThresholdSweep: return "threshold-sweep";
        case ExperimentKind::kPoissonCount: return "poisson-count";
        case ExperimentKind::kQuasiDisjoint: return "quasi-disjoint";
        case ExperimentKind::kPropertyQ: return "property-q";
    }
    return "unknown";
}

inline ExperimentKind parse_kind(const std::string& name) {
    for (auto kind : {ExperimentKind::kHittingTimes, ExperimentKind::kThresholdSweep, ExperimentKind::kPoissonCount,
                      ExperimentKind::kQuasiDisjoint, ExperimentKind::kPropertyQ}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown experiment kind `" + name + "`");
}

/// Which random model a sweep or property-Q run samples.
enum class Model { kGnm, kGnp, kBoth };

inline std::string to_string(Model model) {
    switch (model) {
        case Model::kGnm: return "gnm";
        case Model::kGnp: return "gnp";
        case Model::kBoth: return "both";
    }
    return "gnm";
}

inline Model parse_model(const std::string& name) {
    if (name == "gnm") return Model::kGnm;
    if (name == "gnp") return Model::kGnp;
    if (name == "both") return Model::kBoth;
    throw ConfigError("unknown model `" + name + "` (expected gnm, gnp or both)");
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kHittingTimes;
    std::uint32_t n = 0;
    std::uint32_t d = 3;
    std::uint32_t k = 1;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    /// Offsets c for threshold-sweep; a single c for poisson-count.
    std::vector<double> c_grid;
    double c = 0.0;
    /// Window width; defaults to ln ln ln n for quasi-disjoint and property-q, 3 for poisson-count.
    std::optional<double> omega;
    Model model = Model::kGnm;
    /// Property-Q slack; defaults to ceil(ln n).
    std::optional<std::uint32_t> q_budget;
    /// Scale guard on n; defaults per kind.
    std::optional<std::uint32_t> max_n;
    std::string output;
    std::string format = "csv";
    /// CSV layout: "summary" (one row per grid point) or "trials" (one row per trial).
    std::string csv_mode = "summary";

    std::uint32_t guard_n() const {
        if (max_n) return *max_n;
        return kind == ExperimentKind::kPropertyQ ? 500 : 10000;
    }
};

inline double default_omega(const ExperimentConfig& config) {
    if (config.omega) return *config.omega;
    if (config.kind == ExperimentKind::kPoissonCount) return 3.0;
    return std::log(std::log(std::log(static_cast<double>(config.n))));
}

/// Checks everything that can be checked before sampling.
inline void validate(const ExperimentConfig& config) {
    const auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (config.d < 2) fail("d must be at least 2");
    if (config.n < config.d) fail("n must be at least d");
    if (config.k < 1) fail("k must be at least 1");
    if (config.n <= config.k) fail("n must exceed k");
    if (config.n < 3) fail("n must be at least 3");
    if (config.trials < 1) fail("trials must be at least 1");
    if (config.format != "csv" && config.format != "json") fail("format must be csv or json");
    if (config.csv_mode != "summary" && config.csv_mode != "trials") fail("csv_mode must be summary or trials");
    if (config.kind == ExperimentKind::kThresholdSweep && config.c_grid.empty()) fail("threshold-sweep needs a c grid");
    if (config.omega && !(*config.omega > 0.0)) fail("omega must be positive");
    if ((config.kind == ExperimentKind::kQuasiDisjoint || config.kind == ExperimentKind::kPropertyQ) &&
        !config.omega && !(default_omega(config) > 0.0)) {
        fail("default omega = ln ln ln n is not positive for n < 16; pass omega explicitly");
    }
    try {
        (void)binomial(config.n, config.d);
    } catch (const std::overflow_error&) {
        fail("C(n, d) does not fit in 64 bits");
    }
}

/// Scale guards; violations are runtime errors (CLI exit code 2).
inline void check_scale(const ExperimentConfig& config) {
    if (config.n > config.guard_n()) {
        throw ScaleGuardError("scale guard: n=" + std::to_string(config.n) + " exceeds max_n=" +
                              std::to_string(config.guard_n()) + " for " + to_string(config.kind));
    }
    if (config.kind == ExperimentKind::kPropertyQ) {
        const PropertyQLimits limits{3, config.guard_n()};
        if (config.k > limits.max_k) {
            throw ScaleGuardError("scale guard: property-q supports k <= " + std::to_string(limits.max_k));
        }
    }
}

/// Observables of one trial, as ordered (name, value) pairs.
struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::uint64_t grid_index = 0;
    Seed seed;
    std::vector<std::pair<std::string, std::int64_t>> values;

    std::int64_t get(const std::string& name) const {
        for (const auto& [key, value] : values) {
            if (key == name) return value;
        }
        throw std::out_of_range("TrialRecord: no observable `" + name + "`");
    }
    void set(std::string name, std::int64_t value) { values.emplace_back(std::move(name), value); }
};

/// Aggregates for one grid point.
struct GridSummary {
    double c = 0.0;
    std::uint64_t m = 0;
    double p = 0.0;
    std::vector<std::pair<std::string, Proportion>> proportions;
    std::vector<std::pair<std::string, double>> columns;
    std::map<std::string, std::map<std::uint64_t, std::uint64_t>> distributions;

    const Proportion& proportion(const std::string& name) const {
        for (const auto& [key, value] : proportions) {
            if (key == name) return value;
        }
        throw std::out_of_range("GridSummary: no proportion `" + name + "`");
    }
    double column(const std::string& name) const {
        for (const auto& [key, value] : columns) {
            if (key == name) return value;
        }
        throw std::out_of_range("GridSummary: no column `" + name + "`");
    }
};

struct ExperimentSummary {
    ExperimentConfig config;
    std::vector<GridSummary> grid;
    std::vector<TrialRecord> trials;
    /// Fixed settings that make the output reproducible, plus the tolerances owned by this harness.
    std::vector<std::pair<std::string, std::string>> metadata;
};

/// Statistical tolerances used by the acceptance checks; echoed in every summary.
struct Tolerances {
    static constexpr double kHittingEqualityMin = 0.9;
    static constexpr double kPoissonTvMax = 0.05;
    static constexpr double kThresholdGapMax = 0.02;
    static constexpr double kFlankLowerMin = 0.97;
    static constexpr double kFlankUpperMax = 0.03;
    static constexpr double kWindowFractionMin = 0.85;
    static constexpr double kWindowMinDegreeMin = 0.95;
    static constexpr double kQuasiEventMin = 0.9;
    static constexpr double kMeanStandardErrors = 3.0;
};

/**
 * Runs fn(i) for i in [0, count) on `threads` workers and returns the results
 * indexed by i, so the output does not depend on completion order.
 */
template <typename F>
std::vector<TrialRecord> run_parallel(std::uint64_t count, unsigned threads, F&& fn) {
    std::vector<TrialRecord> out(count);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(count, 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

inline std::vector<std::pair<std::string, std::string>> base_metadata() {
    return {{"generator", "xoshiro256** seeded by counter-mode splitmix64 (master, trial_index)"},
            {"edge_order", "colexicographic rank"},
            {"threshold_rounding", "ceiling, clamped to [0, C(n,d)]"},
            {"interval", "Wilson 95%"},
            {"tol_hitting_equality_min", "0.9"},
            {"tol_poisson_tv_max", "0.05"},
            {"tol_threshold_gap_max", "0.02"},
            {"tol_flank_lower_min", "0.97"},
            {"tol_flank_upper_max", "0.03"},
            {"tol_window_fraction_min", "0.85"},
            {"tol_window_min_degree_min", "0.95"},
            {"tol_quasi_event_min", "0.9"}};
}

inline std::uint64_t count_true(const std::vector<TrialRecord>& records, const std::string& name,
                                std::uint64_t grid_index = 0) {
    std::uint64_t count = 0;
    for (const auto& r : records) {
        if (r.grid_index == grid_index && r.get(name) != 0) ++count;
    }
    return count;
}

inline std::uint64_t count_grid(const std::vector<TrialRecord>& records, std::uint64_t grid_index) {
    return static_cast<std::uint64_t>(
        std::count_if(records.begin(), records.end(), [&](const TrialRecord& r) { return r.grid_index == grid_index; }));
}

inline CountDistribution distribution_of(const std::vector<TrialRecord>& records, const std::string& name,
                                         std::uint64_t grid_index = 0) {
    CountDistribution dist;
    for (const auto& r : records) {
        if (r.grid_index == grid_index) dist.add(static_cast<std::uint64_t>(r.get(name)));
    }
    return dist;
}

/// n * P(deg = k-1) at m, or 0 where the degree value is impossible.
inline double expected_x_or_zero(std::uint32_t n, std::uint32_t d, std::uint64_t m, std::uint32_t k) {
    const std::uint64_t j = k - 1;
    if (j > m || j > binomial(n - 1, d - 1)) return 0.0;
    return exact_expected_deg_count(n, d, m, k);
}

/// j-connectivity with 0-connectivity read as "always true".
inline bool connected_at_level(const Hypergraph& h, std::uint32_t j) {
    return j == 0 ? true : is_k_connected(h, j).connected;
}

}  // namespace detail

/**
 * Process experiment: tau_j and T_j per trial, the fraction with tau_k = T_k,
 * the law of T_k - tau_k, and whether every vertex of the hypergraph at tau_k
 * has a quasi-disjoint set of size >= k.
 */
inline ExperimentSummary run_hitting_times(const ExperimentConfig& config, unsigned threads = default_threads()) {
    validate(config);
    check_scale(config);
    if (config.kind != ExperimentKind::kHittingTimes) throw ConfigError("run_hitting_times: kind mismatch");
    ExperimentSummary summary{config, {}, {}, detail::base_metadata()};
    summary.trials = run_parallel(config.trials, threads, [&](std::uint64_t t) {
        TrialRecord record;
        record.trial_index = t;
        record.seed = {config.master_seed, t};
        const ProcessTrace trace = stopping_times(config.n, config.d, config.k, record.seed);
        for (std::uint32_t j = 1; j <= config.k; ++j) record.set("tau_" + std::to_string(j), static_cast<std::int64_t>(trace.tau[j - 1]));
        for (std::uint32_t j = 1; j <= config.k; ++j) record.set("T_" + std::to_string(j), static_cast<std::int64_t>(trace.connected_at[j - 1]));
        const std::uint64_t tau_k = trace.tau[config.k - 1], big_t = trace.connected_at[config.k - 1];
        record.set("gap", static_cast<std::int64_t>(big_t - tau_k));
        record.set("equal", tau_k == big_t);
        const Hypergraph at_tau = trace.at(tau_k);
        bool quasi_ok = true;
        for (Vertex v : at_tau.vertices()) {
            if (quasi_disjoint_up_to(at_tau, v, config.k) < config.k) {
                quasi_ok = false;
                break;
            }
        }
        record.set("quasi_ok", quasi_ok);
        record.set("tests", static_cast<std::int64_t>(trace.connectivity_tests));
        return record;
    });
    GridSummary row;
    const ThresholdParams t = thresholds(config.n, config.d, config.k, 0.0, 1.0);
    row.m = t.m_at_c;
    row.p = t.p_at_c;
    row.proportions.emplace_back("tau_equals_T", wilson(detail::count_true(summary.trials, "equal"), config.trials));
    row.proportions.emplace_back("quasi_disjoint_at_tau", wilson(detail::count_true(summary.trials, "quasi_ok"), config.trials));
    for (std::uint32_t j = 1; j < config.k; ++j) {
        std::uint64_t eq = 0;
        for (const auto& r : summary.trials) eq += r.get("tau_" + std::to_string(j)) == r.get("T_" + std::to_string(j));
        row.proportions.emplace_back("tau_equals_T_" + std::to_string(j), wilson(eq, config.trials));
    }
    const auto tau = detail::distribution_of(summary.trials, "tau_" + std::to_string(config.k));
    const auto gap = detail::distribution_of(summary.trials, "gap");
    row.columns.emplace_back("mean_tau_k", tau.mean());
    row.columns.emplace_back("mean_T_minus_tau", gap.mean());
    row.columns.emplace_back("m_at_c0", static_cast<double>(t.m_at_c));
    row.distributions["T_minus_tau"] = gap.counts();
    summary.grid.push_back(std::move(row));
    return summary;
}

/**
 * Threshold sweep: for each c, samples H_d(n, m_at_c) (and/or H_d(n, p_at_c))
 * and estimates P(k-connected), P(min-degree >= k), P((k-1)-connected) and
 * P((k+1)-connected) next to the limiting value exp(-exp(-c)/(k-1)!).
 */
inline ExperimentSummary run_threshold_sweep(const ExperimentConfig& config, unsigned threads = default_threads()) {
    validate(config);
    check_scale(config);
    if (config.kind != ExperimentKind::kThresholdSweep) throw ConfigError("run_threshold_sweep: kind mismatch");
    ExperimentSummary summary{config, {}, {}, detail::base_metadata()};
    const std::uint64_t points = config.c_grid.size();
    std::vector<ThresholdParams> params;
    for (double c : config.c_grid) params.push_back(thresholds(config.n, config.d, config.k, c, 1.0));
    const bool use_m = config.model != Model::kGnp, use_p = config.model != Model::kGnm;

    summary.trials = run_parallel(points * config.trials, threads, [&](std::uint64_t i) {
        TrialRecord record;
        record.grid_index = i / config.trials;
        record.trial_index = i % config.trials;
        record.seed = {config.master_seed, i};
        const ThresholdParams& t = params[record.grid_index];
        auto observe = [&](const Hypergraph& h, const std::string& prefix) {
            record.set(prefix + "edges", static_cast<std::int64_t>(h.edge_count()));
            record.set(prefix + "min_degree", h.min_degree());
            record.set(prefix + "x", static_cast<std::int64_t>(count_degree(h, config.k - 1)));
            record.set(prefix + "min_degree_ge_k", h.min_degree() >= config.k);
            record.set(prefix + "km1_connected", detail::connected_at_level(h, config.k - 1));
            record.set(prefix + "k_connected", is_k_connected(h, config.k).connected);
            record.set(prefix + "kp1_connected", is_k_connected(h, config.k + 1).connected);
        };
        if (use_m) observe(sample_gnm(config.n, config.d, t.m_at_c, record.seed), "");
        if (use_p) {
            // separate stream so the gnp sample is independent of the gnm one
            const Seed p_seed{config.master_seed, points * config.trials + i};
            observe(sample_gnp(config.n, config.d, t.p_at_c, p_seed), "p_");
        }
        return record;
    });

    for (std::uint64_t g = 0; g < points; ++g) {
        GridSummary row;
        row.c = config.c_grid[g];
        row.m = params[g].m_at_c;
        row.p = params[g].p_at_c;
        const std::uint64_t trials = config.trials;
        for (const std::string& prefix : {std::string(), std::string("p_")}) {
            if ((prefix.empty() && !use_m) || (!prefix.empty() && !use_p)) continue;
            for (const char* name : {"k_connected", "min_degree_ge_k", "km1_connected", "kp1_connected"}) {
                row.proportions.emplace_back(prefix + name,
                                             wilson(detail::count_true(summary.trials, prefix + name, g), trials));
            }
            row.columns.emplace_back(prefix + "gap_k_connected_vs_min_degree",
                                     std::abs(row.proportion(prefix + "k_connected").estimate -
                                              row.proportion(prefix + "min_degree_ge_k").estimate));
            row.columns.emplace_back(prefix + "mean_x", detail::distribution_of(summary.trials, prefix + "x", g).mean());
        }
        row.columns.emplace_back("limit_prob_k_connected", limit_prob_k_connected(row.c, config.k));
        row.columns.emplace_back("exact_expected_x", detail::expected_x_or_zero(config.n, config.d, row.m, config.k));
        row.columns.emplace_back("poissonized_prob_min_degree_ge_k",
                                 std::exp(-row.column("exact_expected_x")));
        // vertices of degree below k-1, the obstruction one level down
        double below = 0.0;
        for (std::uint32_t low = 1; low < config.k; ++low) below += detail::expected_x_or_zero(config.n, config.d, row.m, low);
        row.columns.emplace_back("exact_expected_below_km1", below);
        row.columns.emplace_back("poissonized_prob_min_degree_ge_km1", std::exp(-below));
        summary.grid.push_back(std::move(row));
    }
    return summary;
}

/**
 * Degree-(k-1) counts along one process per trial: X at m_at_c (Poisson
 * comparison), and at m0 / m1 for the supplied omega (window checks).
 */
inline ExperimentSummary run_poisson_count(const ExperimentConfig& config, unsigned threads = default_threads()) {
    validate(config);
    check_scale(config);
    if (config.kind != ExperimentKind::kPoissonCount) throw ConfigError("run_poisson_count: kind mismatch");
    ExperimentSummary summary{config, {}, {}, detail::base_metadata()};
    const double omega = default_omega(config);
    const ThresholdParams t = thresholds(config.n, config.d, config.k, config.c, omega);
    const std::uint32_t j = config.k - 1;
    const double window_scale = std::exp(omega - std::lgamma(static_cast<double>(config.k)));
    const double window_lo = 0.5 * window_scale, window_hi = 1.5 * window_scale;

    summary.trials = run_parallel(config.trials, threads, [&](std::uint64_t i) {
        TrialRecord record;
        record.trial_index = i;
        record.seed = {config.master_seed, i};
        // snapshots of one process prefix; each is distributed as H_d(n, m)
        std::vector<std::pair<std::uint64_t, int>> stops{{t.m_at_c, 0}, {t.m0, 1}, {t.m1, 2}};
        std::sort(stops.begin(), stops.end());
        std::vector<std::uint32_t> degree(config.n + 1, 0);
        std::vector<std::uint64_t> at_degree(1, config.n);  // at_degree[x] = vertices of degree x
        std::uint64_t step = 0;
        std::int64_t x_c = 0, x0 = 0, x1 = 0, min0 = 0, min1 = 0;
        ProcessStream stream(config.n, config.d, record.seed);
        for (const auto& [target, which] : stops) {
            while (step < target) {
                auto e = stream.next();
                ++step;
                for (Vertex v : e->vertices) {
                    --at_degree[degree[v]];
                    ++degree[v];
                    if (at_degree.size() <= degree[v]) at_degree.resize(degree[v] + 1, 0);
                    ++at_degree[degree[v]];
                }
            }
            const std::int64_t x = j < at_degree.size() ? static_cast<std::int64_t>(at_degree[j]) : 0;
            std::int64_t min_degree = 0;
            while (static_cast<std::size_t>(min_degree) < at_degree.size() && at_degree[min_degree] == 0) ++min_degree;
            if (which == 0) x_c = x;
            if (which == 1) { x0 = x; min0 = min_degree; }
            if (which == 2) { x1 = x; min1 = min_degree; }
        }
        record.set("x", x_c);
        record.set("x_m0", x0);
        record.set("min_degree_m0", min0);
        record.set("x_m1", x1);
        record.set("min_degree_m1", min1);
        record.set("window_ok", static_cast<double>(x0) >= window_lo && static_cast<double>(x0) <= window_hi);
        record.set("min_degree_m0_is_k_minus_1", min0 == static_cast<std::int64_t>(j));
        record.set("none_at_m1", x1 == 0);
        return record;
    });

    GridSummary row;
    row.c = config.c;
    row.m = t.m_at_c;
    row.p = t.p_at_c;
    const auto x = detail::distribution_of(summary.trials, "x");
    const double exact_mean = detail::expected_x_or_zero(config.n, config.d, row.m, config.k);
    const double asymptotic = poisson_limit(config.c, config.k).lambda;
    row.columns.emplace_back("omega", omega);
    row.columns.emplace_back("m0", static_cast<double>(t.m0));
    row.columns.emplace_back("m1", static_cast<double>(t.m1));
    row.columns.emplace_back("exact_expected_x", exact_mean);
    row.columns.emplace_back("asymptotic_lambda", asymptotic);
    row.columns.emplace_back("mean_x", x.mean());
    row.columns.emplace_back("stderr_x", std::sqrt(x.variance() / static_cast<double>(x.total())));
    row.columns.emplace_back("tv_exact_poisson", x.total_variation([&](std::uint64_t v) { return poisson_pmf(exact_mean, v); }));
    row.columns.emplace_back("tv_asymptotic_poisson", x.total_variation([&](std::uint64_t v) { return poisson_pmf(asymptotic, v); }));
    row.columns.emplace_back("window_lo", window_lo);
    row.columns.emplace_back("window_hi", window_hi);
    row.columns.emplace_back("exact_expected_x_m0", detail::expected_x_or_zero(config.n, config.d, t.m0, config.k));
    row.columns.emplace_back("exact_expected_x_m1", detail::expected_x_or_zero(config.n, config.d, t.m1, config.k));
    // vertices of degree below k-1 at m0; exp(-this) approximates P(min degree = k-1)
    double below = 0.0;
    for (std::uint32_t low = 1; low < config.k; ++low) below += detail::expected_x_or_zero(config.n, config.d, t.m0, low);
    row.columns.emplace_back("exact_expected_below_m0", below);
    row.proportions.emplace_back("window_ok", wilson(detail::count_true(summary.trials, "window_ok"), config.trials));
    row.proportions.emplace_back("min_degree_m0_is_k_minus_1",
                                 wilson(detail::count_true(summary.trials, "min_degree_m0_is_k_minus_1"), config.trials));
    row.proportions.emplace_back("none_at_m1", wilson(detail::count_true(summary.trials, "none_at_m1"), config.trials));
    row.distributions["x"] = x.counts();
    summary.grid.push_back(std::move(row));
    return summary;
}

/**
 * Quasi-disjoint profile at m0(omega): fraction of trials with no vertex of
 * maximum quasi-disjoint size j <= k-1 and excess degree l >= 1, and fraction
 * where every vertex of degree >= k has a quasi-disjoint set of size >= k.
 */
inline ExperimentSummary run_quasi_disjoint(const ExperimentConfig& config, unsigned threads = default_threads()) {
    validate(config);
    check_scale(config);
    if (config.kind != ExperimentKind::kQuasiDisjoint) throw ConfigError("run_quasi_disjoint: kind mismatch");
    ExperimentSummary summary{config, {}, {}, detail::base_metadata()};
    const double omega = default_omega(config);
    const ThresholdParams t = thresholds(config.n, config.d, config.k, 0.0, omega);

    summary.trials = run_parallel(config.trials, threads, [&](std::uint64_t i) {
        TrialRecord record;
        record.trial_index = i;
        record.seed = {config.master_seed, i};
        const Hypergraph h = sample_gnm(config.n, config.d, t.m0, record.seed);
        QuasiProfile profile;
        std::uint64_t short_high = 0;
        for (Vertex v : h.vertices()) {
            // above the exact-search cap only "size >= k" is resolved, which is all the events need
            const std::uint32_t size = h.degree(v) <= kMaxExactDegree ? max_quasi_disjoint(h, v).size
                                                                      : quasi_disjoint_up_to(h, v, config.k);
            ++profile.counts[{size, h.degree(v) - size}];
            if (h.degree(v) >= config.k && size < config.k) ++short_high;
        }
        record.set("profile_total", static_cast<std::int64_t>(profile.total()));
        record.set("deficient_mass", static_cast<std::int64_t>(profile.deficient_mass(config.k)));
        record.set("short_high_degree", static_cast<std::int64_t>(short_high));
        record.set("event_no_deficient", profile.deficient_mass(config.k) == 0);
        record.set("event_high_degree_ok", short_high == 0);
        return record;
    });

    GridSummary row;
    row.m = t.m0;
    row.p = t.p_at_c;
    row.columns.emplace_back("omega", omega);
    row.columns.emplace_back("m0", static_cast<double>(t.m0));
    row.proportions.emplace_back("no_deficient_vertices",
                                 wilson(detail::count_true(summary.trials, "event_no_deficient"), config.trials));
    row.proportions.emplace_back("high_degree_quasi_ok",
                                 wilson(detail::count_true(summary.trials, "event_high_degree_ok"), config.trials));
    row.distributions["deficient_mass"] = detail::distribution_of(summary.trials, "deficient_mass").counts();
    summary.grid.push_back(std::move(row));
    return summary;
}

/// Property Q at m'0 (omega = ln ln ln n unless given): after any k-1 deletions a block misses at most `budget` vertices.
inline ExperimentSummary run_property_q(const ExperimentConfig& config, unsigned threads = default_threads()) {
    validate(config);
    check_scale(config);
    if (config.kind != ExperimentKind::kPropertyQ) throw ConfigError("run_property_q: kind mismatch");
    ExperimentSummary summary{config, {}, {}, detail::base_metadata()};
    const double omega = default_omega(config);
    const ThresholdParams t = thresholds(config.n, config.d, config.k, 0.0, omega);
    const double p = static_cast<double>(t.m0) / static_cast<double>(binomial(config.n, config.d));
    const std::uint32_t budget = config.q_budget.value_or(default_q_budget(config.n));
    const PropertyQLimits limits{3, config.guard_n()};
    const bool use_p = config.model == Model::kGnp;

    summary.trials = run_parallel(config.trials, threads, [&](std::uint64_t i) {
        TrialRecord record;
        record.trial_index = i;
        record.seed = {config.master_seed, i};
        const Hypergraph h = use_p ? sample_gnp(config.n, config.d, p, record.seed)
                                   : sample_gnm(config.n, config.d, t.m0, record.seed);
        record.set("edges", static_cast<std::int64_t>(h.edge_count()));
        record.set("holds", check_property_q(h, config.k, budget, limits));
        return record;
    });

    GridSummary row;
    row.m = t.m0;
    row.p = p;
    row.columns.emplace_back("omega", omega);
    row.columns.emplace_back("budget", budget);
    row.proportions.emplace_back("property_q", wilson(detail::count_true(summary.trials, "holds"), config.trials));
    summary.grid.push_back(std::move(row));
    return summary;
}

inline ExperimentSummary run_experiment(const ExperimentConfig& config, unsigned threads = default_threads()) {
    switch (config.kind) {
        case ExperimentKind::kHittingTimes: return run_hitting_times(config, threads);
        case ExperimentKind::kThresholdSweep: return run_threshold_sweep(config, threads);
        case ExperimentKind::kPoissonCount: return run_poisson_count(config, threads);
        case ExperimentKind::kQuasiDisjoint: return run_quasi_disjoint(config, threads);
        case ExperimentKind::kPropertyQ: return run_property_q(config, threads);
    }
    throw ConfigError("unknown experiment kind");
}

// ---------------------------------------------------------------------------
// JSON mapping of the configuration

inline nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(config.kind);
    j["n"] = config.n;
    j["d"] = config.d;
    j["k"] = config.k;
    j["trials"] = config.trials;
    j["master_seed"] = config.master_seed;
    j["c_grid"] = config.c_grid;
    j["c"] = config.c;
    if (config.omega) j["omega"] = *config.omega;
    j["model"] = to_string(config.model);
    if (config.q_budget) j["q_budget"] = *config.q_budget;
    if (config.max_n) j["max_n"] = *config.max_n;
    j["output"] = config.output;
    j["format"] = config.format;
    j["csv_mode"] = config.csv_mode;
    return j;
}

/// Accepts a bare configuration object or a summary document carrying one under "config".
inline ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig config = {}) {
    const nlohmann::json& j = doc.contains("config") && doc["config"].is_object() ? doc["config"] : doc;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    try {
        if (j.contains("kind")) config.kind = parse_kind(j["kind"].get<std::string>());
        if (j.contains("n")) config.n = j["n"].get<std::uint32_t>();
        if (j.contains("d")) config.d = j["d"].get<std::uint32_t>();
        if (j.contains("k")) config.k = j["k"].get<std::uint32_t>();
        if (j.contains("trials")) config.trials = j["trials"].get<std::uint64_t>();
        if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
        if (j.contains("c_grid")) config.c_grid = j["c_grid"].get<std::vector<double>>();
        if (j.contains("c")) config.c = j["c"].get<double>();
        if (j.contains("omega")) config.omega = j["omega"].get<double>();
        if (j.contains("model")) config.model = parse_model(j["model"].get<std::string>());
        if (j.contains("q_budget")) config.q_budget = j["q_budget"].get<std::uint32_t>();
        if (j.contains("max_n")) config.max_n = j["max_n"].get<std::uint32_t>();
        if (j.contains("output")) config.output = j["output"].get<std::string>();
        if (j.contains("format")) config.format = j["format"].get<std::string>();
        if (j.contains("csv_mode")) config.csv_mode = j["csv_mode"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config;
}

}  // namespace hyperconn

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperconn/experiment.hpp"

namespace hyperconn {

/// Fixed-precision number formatting shared by every text output.
inline std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

inline nlohmann::ordered_json summary_to_json(const ExperimentSummary& summary) {
    nlohmann::ordered_json doc;
    doc["config"] = config_to_json(summary.config);
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : summary.metadata) meta[key] = value;
    doc["metadata"] = meta;
    doc["grid"] = nlohmann::ordered_json::array();
    for (const auto& row : summary.grid) {
        nlohmann::ordered_json g;
        g["c"] = row.c;
        g["m"] = row.m;
        g["p"] = row.p;
        g["proportions"] = nlohmann::ordered_json::object();
        for (const auto& [name, prop] : row.proportions) {
            g["proportions"][name] = {{"successes", prop.successes}, {"trials", prop.trials},
                                      {"estimate", prop.estimate}, {"lower", prop.lower}, {"upper", prop.upper}};
        }
        g["columns"] = nlohmann::ordered_json::object();
        for (const auto& [name, value] : row.columns) g["columns"][name] = value;
        g["distributions"] = nlohmann::ordered_json::object();
        for (const auto& [name, dist] : row.distributions) {
            nlohmann::ordered_json counts = nlohmann::ordered_json::object();
            for (const auto& [x, count] : dist) counts[std::to_string(x)] = count;
            g["distributions"][name] = counts;
        }
        doc["grid"].push_back(std::move(g));
    }
    doc["trials"] = nlohmann::ordered_json::array();
    for (const auto& record : summary.trials) {
        nlohmann::ordered_json t;
        t["grid_index"] = record.grid_index;
        t["trial_index"] = record.trial_index;
        t["seed"] = {{"master", record.seed.master}, {"trial_index", record.seed.trial_index}};
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (const auto& [name, value] : record.values) values[name] = value;
        t["values"] = values;
        doc["trials"].push_back(std::move(t));
    }
    return doc;
}

/**
 * CSV output.
 *
 * summary mode: one row per grid point with columns
 *   c, m, p, then <name>, <name>_lower, <name>_upper for each proportion, then
 *   the numeric columns, in the order the runner produced them.
 * trials mode: one row per trial with columns
 *   grid_index, trial_index, seed_master, seed_trial_index, then the observables.
 */
inline void write_csv(std::ostream& out, const ExperimentSummary& summary) {
    if (summary.config.csv_mode == "trials") {
        out << "grid_index,trial_index,seed_master,seed_trial_index";
        if (!summary.trials.empty()) {
            for (const auto& [name, value] : summary.trials.front().values) out << ',' << name;
        }
        out << '\n';
        for (const auto& r : summary.trials) {
            out << r.grid_index << ',' << r.trial_index << ',' << r.seed.master << ',' << r.seed.trial_index;
            for (const auto& [name, value] : r.values) out << ',' << value;
            out << '\n';
        }
        return;
    }
    out << "c,m,p";
    if (!summary.grid.empty()) {
        for (const auto& [name, prop] : summary.grid.front().proportions) out << ',' << name << ',' << name << "_lower," << name << "_upper";
        for (const auto& [name, value] : summary.grid.front().columns) out << ',' << name;
    }
    out << '\n';
    for (const auto& row : summary.grid) {
        out << format_number(row.c) << ',' << row.m << ',' << format_number(row.p);
        for (const auto& [name, prop] : row.proportions) {
            out << ',' << format_number(prop.estimate) << ',' << format_number(prop.lower) << ',' << format_number(prop.upper);
        }
        for (const auto& [name, value] : row.columns) out << ',' << format_number(value);
        out << '\n';
    }
}

inline std::string render(const ExperimentSummary& summary, const std::string& format) {
    if (format == "json") return summary_to_json(summary).dump(2) + "\n";
    std::ostringstream out;
    write_csv(out, summary);
    return out.str();
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open `" + path.string() + "` for writing");
    file << content;
    file.close();
    if (!file) throw std::runtime_error("failed writing `" + path.string() + "`");
}

inline std::string two_columns(const std::vector<std::pair<double, double>>& points) {
    std::string out;
    for (const auto& [x, y] : points) out += format_number(x) + ' ' + format_number(y) + '\n';
    return out;
}

}  // namespace detail

/**
 * Writes the summary to config.output in config.format, plus plot-ready
 * two-column files next to it:
 *   sweep:   <stem>.estimate.dat (c, P(k-connected)) and <stem>.limit.dat (c, limit)
 *   poisson: <stem>.x_empirical.dat and <stem>.x_poisson.dat (x, mass)
 * Returns the paths written. An empty output path writes nothing.
 */
inline std::vector<std::string> emit(const ExperimentSummary& summary) {
    std::vector<std::string> written;
    if (summary.config.output.empty()) return written;
    const std::filesystem::path path(summary.config.output);
    detail::write_file(path, render(summary, summary.config.format));
    written.push_back(path.string());
    auto sibling = [&](const std::string& suffix) {
        std::filesystem::path p = path;
        p.replace_extension();
        return std::filesystem::path(p.string() + suffix);
    };
    if (summary.config.kind == ExperimentKind::kThresholdSweep) {
        const std::string column = summary.config.model == Model::kGnp ? "p_k_connected" : "k_connected";
        std::vector<std::pair<double, double>> estimate, limit;
        for (const auto& row : summary.grid) {
            estimate.emplace_back(row.c, row.proportion(column).estimate);
            limit.emplace_back(row.c, row.column("limit_prob_k_connected"));
        }
        detail::write_file(sibling(".estimate.dat"), detail::two_columns(estimate));
        detail::write_file(sibling(".limit.dat"), detail::two_columns(limit));
        written.push_back(sibling(".estimate.dat").string());
        written.push_back(sibling(".limit.dat").string());
    }
    if (summary.config.kind == ExperimentKind::kPoissonCount && !summary.grid.empty()) {
        const auto& row = summary.grid.front();
        const auto& counts = row.distributions.at("x");
        const double lambda = row.column("exact_expected_x");
        std::uint64_t total = 0, top = 0;
        for (const auto& [x, c] : counts) {
            total += c;
            top = std::max(top, x);
        }
        std::vector<std::pair<double, double>> empirical, reference;
        for (std::uint64_t x = 0; x <= top; ++x) {
            const auto it = counts.find(x);
            empirical.emplace_back(static_cast<double>(x),
                                   it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total));
            reference.emplace_back(static_cast<double>(x), poisson_pmf(lambda, x));
        }
        detail::write_file(sibling(".x_empirical.dat"), detail::two_columns(empirical));
        detail::write_file(sibling(".x_poisson.dat"), detail::two_columns(reference));
        written.push_back(sibling(".x_empirical.dat").string());
        written.push_back(sibling(".x_poisson.dat").string());
    }
    return written;
}

}  // namespace hyperconn

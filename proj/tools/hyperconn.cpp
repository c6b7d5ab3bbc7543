// Command-line front end: sampling, connectivity queries and the experiments.
//
// Exit codes: 0 success, 1 usage/config/input error, 2 runtime or scale-guard error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperconn/hyperconn.hpp"

namespace {

using namespace hyperconn;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct SharedFlags {
    std::uint32_t n = 0, d = 3, k = 1;
    std::uint64_t trials = 1, seed = 1;
    std::string out, format = "csv", config_path, csv_mode = "summary", model = "gnm";
    double omega = 0.0;
    std::uint32_t max_n = 0;
    unsigned threads = default_threads();
};

struct FlagHandles {
    CLI::Option *n, *d, *k, *trials, *seed, *out, *format, *csv_mode, *model, *omega, *max_n;
};

FlagHandles add_shared(CLI::App* cmd, SharedFlags& f) {
    FlagHandles h{};
    h.n = cmd->add_option("--n", f.n, "number of vertices");
    h.d = cmd->add_option("--d", f.d, "edge size");
    h.k = cmd->add_option("--k", f.k, "connectivity level");
    h.trials = cmd->add_option("--trials", f.trials, "number of trials");
    h.seed = cmd->add_option("--seed", f.seed, "master seed");
    h.out = cmd->add_option("--out", f.out, "output path (stdout when omitted)");
    h.format = cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    h.csv_mode = cmd->add_option("--csv-mode", f.csv_mode, "summary (one row per grid point) or trials")
                     ->check(CLI::IsMember({"summary", "trials"}));
    h.model = cmd->add_option("--model", f.model, "gnm, gnp or both")->check(CLI::IsMember({"gnm", "gnp", "both"}));
    h.omega = cmd->add_option("--omega", f.omega, "window width omega");
    h.max_n = cmd->add_option("--max-n", f.max_n, "scale guard on n");
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--threads", f.threads, "worker threads (does not affect output)");
    return h;
}

ExperimentConfig assemble(ExperimentKind kind, const SharedFlags& f, const FlagHandles& h) {
    ExperimentConfig config;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot read config file `" + f.config_path + "`");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file `" + f.config_path + "`: " + e.what());
        }
        config = config_from_json(doc);
        if (config.kind != kind) {
            throw ConfigError("config file kind `" + to_string(config.kind) + "` does not match subcommand");
        }
    }
    config.kind = kind;
    if (h.n->count()) config.n = f.n;
    if (h.d->count()) config.d = f.d;
    if (h.k->count()) config.k = f.k;
    if (h.trials->count()) config.trials = f.trials;
    if (h.seed->count() || f.config_path.empty()) config.master_seed = f.seed;
    if (h.out->count()) config.output = f.out;
    if (h.format->count()) config.format = f.format;
    if (h.csv_mode->count()) config.csv_mode = f.csv_mode;
    if (h.model->count()) config.model = parse_model(f.model);
    if (h.omega->count()) config.omega = f.omega;
    if (h.max_n->count()) config.max_n = f.max_n;
    return config;
}

int finish(const ExperimentSummary& summary, std::chrono::steady_clock::time_point start) {
    if (summary.config.output.empty()) {
        std::cout << render(summary, summary.config.format);
    } else {
        for (const auto& path : emit(summary)) std::cerr << "wrote " << path << '\n';
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << to_string(summary.config.kind) << ": " << summary.trials.size() << " trials in " << seconds << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random d-uniform hypergraph k-connectivity laboratory"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "sample H_d(n,m) or H_d(n,p) and write an edge list");
    std::uint32_t gen_n = 0, gen_d = 3, gen_k = 1;
    std::uint64_t gen_m = 0, gen_seed = 1;
    double gen_p = 0.0, gen_c = 0.0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of vertices")->required();
    gen->add_option("--d", gen_d, "edge size");
    gen->add_option("--k", gen_k, "connectivity level used with --c");
    auto* gen_m_opt = gen->add_option("--m", gen_m, "number of edges (H_d(n,m))");
    auto* gen_p_opt = gen->add_option("--p", gen_p, "edge probability (H_d(n,p))");
    auto* gen_c_opt = gen->add_option("--c", gen_c, "use m = ceil((n/d)(ln n + (k-1) ln ln n + c))");
    gen_m_opt->excludes(gen_p_opt)->excludes(gen_c_opt);
    gen_p_opt->excludes(gen_c_opt);
    gen->add_option("--seed", gen_seed, "seed");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");
    gen->add_option("--trials", "ignored; accepted for flag uniformity");
    gen->add_option("--format", "ignored; the edge-list format is fixed");

    // connectivity
    auto* conn = app.add_subcommand("connectivity", "report components, degrees and k-connectivity of an edge list");
    std::string conn_input, conn_out, conn_format = "json";
    std::uint32_t conn_k = 1;
    bool conn_brute = false;
    conn->add_option("--input", conn_input, "edge-list file ('-' for stdin)")->required();
    conn->add_option("--k", conn_k, "connectivity level");
    conn->add_option("--out", conn_out, "output path (stdout when omitted)");
    conn->add_option("--format", conn_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    conn->add_flag("--brute", conn_brute, "also run the exhaustive oracle (n <= 12)");

    SharedFlags ht_f, sw_f, po_f, qu_f, pq_f;
    auto* hitting = app.add_subcommand("hitting-times", "tau_k versus T_k along the process");
    auto ht_h = add_shared(hitting, ht_f);

    auto* sweep = app.add_subcommand("sweep", "k-connectivity probabilities across a grid of c");
    auto sw_h = add_shared(sweep, sw_f);
    double c_min = -2.0, c_max = 2.0;
    std::uint32_t c_steps = 9;
    auto* c_min_opt = sweep->add_option("--c-min", c_min, "first c");
    auto* c_max_opt = sweep->add_option("--c-max", c_max, "last c");
    auto* c_steps_opt = sweep->add_option("--c-steps", c_steps, "number of grid points")->check(CLI::PositiveNumber);

    auto* poisson = app.add_subcommand("poisson", "law of the number of degree-(k-1) vertices");
    auto po_h = add_shared(poisson, po_f);
    double po_c = 0.0;
    auto* po_c_opt = poisson->add_option("--c", po_c, "offset c of m");

    auto* quasi = app.add_subcommand("quasi", "quasi-disjoint profile at m0");
    auto qu_h = add_shared(quasi, qu_f);

    auto* propq = app.add_subcommand("property-q", "giant component after any k-1 deletions");
    auto pq_h = add_shared(propq, pq_f);
    std::uint32_t pq_budget = 0;
    auto* pq_budget_opt = propq->add_option("--budget", pq_budget, "allowed leftover vertices (default ceil(ln n))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (gen->parsed()) {
            Hypergraph h = Hypergraph::empty(std::max(gen_n, gen_d), gen_d);
            if (gen_p_opt->count()) {
                h = sample_gnp(gen_n, gen_d, gen_p, {gen_seed, 0});
            } else {
                std::uint64_t m = gen_m;
                if (gen_c_opt->count()) m = thresholds(gen_n, gen_d, gen_k, gen_c, 1.0).m_at_c;
                else if (!gen_m_opt->count()) throw ConfigError("gen: one of --m, --p, --c is required");
                h = sample_gnm(gen_n, gen_d, m, {gen_seed, 0});
            }
            if (gen_out.empty()) {
                write_edge_list(std::cout, h);
            } else {
                std::ofstream file(gen_out);
                if (!file) throw std::runtime_error("cannot open `" + gen_out + "` for writing");
                write_edge_list(file, h);
                if (!file) throw std::runtime_error("failed writing `" + gen_out + "`");
            }
            return 0;
        }

        if (conn->parsed()) {
            Hypergraph h = [&] {
                if (conn_input == "-") return read_edge_list(std::cin);
                std::ifstream in(conn_input);
                if (!in) throw ConfigError("cannot read `" + conn_input + "`");
                return read_edge_list(in);
            }();
            if (conn_k < 1) throw ConfigError("connectivity: k must be at least 1");
            const auto parts = connected_components(h);
            const auto result = is_k_connected(h, conn_k);
            nlohmann::ordered_json doc;
            doc["n"] = h.n();
            doc["d"] = h.d();
            doc["edges"] = h.edge_count();
            doc["components"] = parts.count();
            doc["largest_component"] = parts.largest();
            doc["min_degree"] = h.min_degree();
            doc["k"] = conn_k;
            doc["k_connected"] = result.connected;
            if (result.witness) {
                doc["witness"] = {{"separator", result.witness->separator}, {"side", result.witness->side}};
            }
            if (conn_brute) doc["brute_force_k_connected"] = brute_force_is_k_connected(h, conn_k);
            std::string text;
            if (conn_format == "json") {
                text = doc.dump(2) + "\n";
            } else {
                text = "n,d,edges,components,largest_component,min_degree,k,k_connected,separator_size\n";
                text += std::to_string(h.n()) + ',' + std::to_string(h.d()) + ',' + std::to_string(h.edge_count()) + ',' +
                        std::to_string(parts.count()) + ',' + std::to_string(parts.largest()) + ',' +
                        std::to_string(h.min_degree()) + ',' + std::to_string(conn_k) + ',' +
                        (result.connected ? "1" : "0") + ',' +
                        (result.witness ? std::to_string(result.witness->separator.size()) : std::string()) + '\n';
            }
            if (conn_out.empty()) {
                std::cout << text;
            } else {
                detail::write_file(conn_out, text);
            }
            return 0;
        }

        if (hitting->parsed()) {
            return finish(run_hitting_times(assemble(ExperimentKind::kHittingTimes, ht_f, ht_h), ht_f.threads), start);
        }
        if (sweep->parsed()) {
            ExperimentConfig config = assemble(ExperimentKind::kThresholdSweep, sw_f, sw_h);
            if (config.c_grid.empty() || c_min_opt->count() || c_max_opt->count() || c_steps_opt->count()) {
                config.c_grid.clear();
                for (std::uint32_t i = 0; i < c_steps; ++i) {
                    config.c_grid.push_back(c_steps == 1 ? c_min : c_min + (c_max - c_min) * i / (c_steps - 1));
                }
            }
            return finish(run_threshold_sweep(config, sw_f.threads), start);
        }
        if (poisson->parsed()) {
            ExperimentConfig config = assemble(ExperimentKind::kPoissonCount, po_f, po_h);
            if (po_c_opt->count()) config.c = po_c;
            return finish(run_poisson_count(config, po_f.threads), start);
        }
        if (quasi->parsed()) {
            return finish(run_quasi_disjoint(assemble(ExperimentKind::kQuasiDisjoint, qu_f, qu_h), qu_f.threads), start);
        }
        if (propq->parsed()) {
            ExperimentConfig config = assemble(ExperimentKind::kPropertyQ, pq_f, pq_h);
            if (pq_budget_opt->count()) config.q_budget = pq_budget;
            return finish(run_property_q(config, pq_f.threads), start);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BuildError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}

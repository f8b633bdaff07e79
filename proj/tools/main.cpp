// hypercent: node and hyperedge centrality for weighted hypergraphs via the
// nonlinear power method, plus ranking-comparison and instance-generation
// utilities.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercent/errors.hpp"
#include "hypercent/hypergraph.hpp"
#include "hypercent/io.hpp"
#include "hypercent/maps.hpp"
#include "hypercent/oracles.hpp"
#include "hypercent/rank_metrics.hpp"
#include "hypercent/solver.hpp"

namespace {

using namespace hypercent;

constexpr int kExitOk = 0;
constexpr int kExitNoConvergence = 2;
constexpr int kExitInputError = 3;
constexpr int kExitPrecondition = 4;

struct CommonOpts {
    bool json_errors = false;
};

void report_error(const CommonOpts& common, const std::string& kind, const std::string& msg) {
    if (common.json_errors) {
        nlohmann::json err{{"error", msg}, {"kind", kind}};
        std::cerr << err.dump() << "\n";
    } else {
        std::cerr << "error: " << msg << "\n";
    }
}

struct ComputeConfig {
    std::vector<std::string> input;
    std::string node_weights;
    std::string model = "linear";
    double p = 1.0;
    double alpha = 10.0;
    double tol = 1e-8;
    int max_iter = 1000;
    std::string norm = "l2";
    std::optional<std::uint64_t> seed;  // random positive init instead of all-ones
    std::string output;
    std::string edge_scatter;
    int topk = 0;  // print the top-k nodes when > 0
    bool max_normalize = false;
};

std::vector<double> seeded_init(std::size_t len, std::mt19937_64& rng) {
    std::vector<double> v(len);
    for (double& t : v)
        t = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

CentralityModel make_model(const std::string& name, double p, double alpha) {
    if (name == "linear")
        return make_linear();
    if (name == "logexp")
        return make_logexp(p);
    if (name == "max")
        return make_max(alpha);
    throw PreconditionError("unknown model '" + name + "'");
}

std::pair<Hypergraph, LabelMap> load_input(const std::vector<std::string>& input) {
    if (input.size() == 1)
        return load_hyperedge_list(input[0]);
    if (input.size() == 2)
        return load_simplex_stream(input[0], input[1]);
    throw InputError("--input takes one hyperedge-list file or an nverts/simplices file pair");
}

int run_compute(const ComputeConfig& cfg, const CommonOpts& common) {
    const auto norm = parse_norm(cfg.norm);
    if (!norm)
        throw PreconditionError("--norm must be one of l1, l2, linf");

    auto [loaded, labels] = load_input(cfg.input);
    if (!cfg.node_weights.empty())
        loaded = with_node_weights(loaded, load_node_weights(cfg.node_weights, labels));

    auto [h, kept, prune] = prune_isolated(loaded, labels);
    std::cout << "nodes: " << h.node_count() << "  edges: " << h.edge_count();
    if (!prune.removed_labels.empty())
        std::cout << "  (pruned " << prune.removed_labels.size() << " isolated)";
    std::cout << "\n";

    const CentralityModel model = make_model(cfg.model, cfg.p, cfg.alpha);
    const ConditionReport report = check_conditions(h, model);
    std::cout << "model: " << model.name << "\n";
    std::cout << "conditions: " << regime_name(report.regime) << " (rho=";
    if (report.rho)
        std::cout << *report.rho;
    else
        std::cout << "undefined";
    std::cout << ", " << (report.connected ? "connected" : "disconnected") << ")\n";

    SolverOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.norm = *norm;
    if (cfg.seed) {
        std::mt19937_64 rng(*cfg.seed);
        opts.x0 = seeded_init(static_cast<std::size_t>(h.node_count()), rng);
        opts.y0 = seeded_init(static_cast<std::size_t>(h.edge_count()), rng);
    }
    const CentralitySolution sol = npm_solve(h, model, opts);
    const auto [res_x, res_y] = residual(h, model, sol);

    std::cout << "converged: " << (sol.converged ? "yes" : "no")
              << "  iterations: " << sol.iterations << "\n";
    std::printf("lambda: %.12g  mu: %.12g\n", sol.lambda, sol.mu);
    std::printf("residuals: x=%.3g y=%.3g\n", res_x, res_y);
    if (const auto rate = convergence_rate(sol))
        std::printf("fitted contraction: %.4g per iteration\n", std::exp(*rate));

    if (cfg.topk > 0) {
        if (static_cast<NodeId>(cfg.topk) > h.node_count())
            throw PreconditionError("--topk = " + std::to_string(cfg.topk) + " out of range [1, " +
                                    std::to_string(h.node_count()) + "]");
        const RankedList ranked = rank(sol.x);
        std::cout << "top " << cfg.topk << " nodes:\n";
        for (int t = 0; t < cfg.topk; ++t) {
            const NodeId i = ranked.order[t];
            std::printf("  %2d. %s  %.12g\n", t + 1, kept.label(i).c_str(), sol.x[i]);
        }
    }

    if (!cfg.output.empty()) {
        SolutionMeta meta{model.name, cfg.tol, cfg.max_iter, *norm, cfg.max_normalize};
        write_solution_json(cfg.output, h, kept, sol, meta);
        std::cout << "solution written to " << cfg.output << "\n";
        if (!cfg.edge_scatter.empty())
            write_edge_weight_scatter_csv(cfg.edge_scatter, read_solution_json(cfg.output));
    } else if (!cfg.edge_scatter.empty()) {
        throw PreconditionError("--edge-scatter requires --output");
    }

    if (!sol.converged) {
        report_error(common, "no-convergence",
                     "stopped after " + std::to_string(sol.iterations) +
                         " iterations with change " +
                         std::to_string(sol.change_history.empty()
                                            ? 0.0
                                            : sol.change_history.back()));
        return kExitNoConvergence;
    }
    return kExitOk;
}

struct CompareConfig {
    std::string solution1;
    std::string solution2;
    int topk = -1;  // unset: min(100, node count)
    std::string output;
    std::string scatter_nodes;
    std::string scatter_edges;
};

int run_compare(const CompareConfig& cfg) {
    const LoadedSolution a = read_solution_json(cfg.solution1);
    const LoadedSolution b = read_solution_json(cfg.solution2);
    if (a.node_labels.size() != b.node_labels.size())
        throw InputError("solutions cover different node sets (" +
                         std::to_string(a.node_labels.size()) + " vs " +
                         std::to_string(b.node_labels.size()) + " nodes)");
    std::unordered_map<std::string, double> score_b;
    for (std::size_t i = 0; i < b.node_labels.size(); ++i)
        score_b[b.node_labels[i]] = b.node_scores[i];
    std::vector<double> s1 = a.node_scores, s2;
    s2.reserve(s1.size());
    for (const auto& label : a.node_labels) {
        const auto it = score_b.find(label);
        if (it == score_b.end())
            throw InputError("label '" + label + "' missing from " + cfg.solution2);
        s2.push_back(it->second);
    }
    const int topk =
        cfg.topk < 0 ? static_cast<int>(std::min<std::size_t>(100, s1.size())) : cfg.topk;
    if (topk < 1 || static_cast<std::size_t>(topk) > s1.size())
        throw PreconditionError("--topk = " + std::to_string(topk) + " out of range [1, " +
                                std::to_string(s1.size()) + "]");

    const auto rows = similarity_curves(s1, s2, topk);
    if (!cfg.output.empty()) {
        write_similarity_curves_csv(cfg.output, rows, a.model, b.model);
        std::cout << "curves written to " << cfg.output << "\n";
    } else {
        std::cout << "k,isim,kendall,spearman\n";
        for (const auto& row : rows) {
            std::ostringstream os;
            os << row.k << ',' << row.isim << ',';
            if (row.kendall)
                os << *row.kendall;
            else
                os << "nan";
            os << ',';
            if (row.spearman)
                os << *row.spearman;
            else
                os << "nan";
            std::cout << os.str() << "\n";
        }
    }
    if (!cfg.scatter_nodes.empty())
        write_node_scatter_csv(cfg.scatter_nodes, a, b);
    if (!cfg.scatter_edges.empty())
        write_edge_weight_scatter_csv(cfg.scatter_edges, a);
    return kExitOk;
}

LabelMap identity_labels(const Hypergraph& h) {
    LabelMap labels;
    for (NodeId i = 0; i < h.node_count(); ++i)
        labels.intern(std::to_string(i));
    return labels;
}

struct GenerateSunflowerConfig {
    std::vector<int> sizes;
    std::string output;
};

struct GenerateRandomConfig {
    std::int32_t nodes = 8;
    std::int32_t edges = 6;
    std::uint64_t seed = 0;
    int min_size = 2;
    int max_size = 4;
    bool unit_weights = false;
    bool connected = false;
    std::string output;
};

int run_generate_sunflower(const GenerateSunflowerConfig& cfg) {
    const Hypergraph h = generate_sunflower({cfg.sizes});
    save_hyperedge_list(cfg.output, h, identity_labels(h));
    std::cout << "sunflower with " << h.node_count() << " nodes, " << h.edge_count()
              << " petals written to " << cfg.output << "\n";
    return kExitOk;
}

int run_generate_random(const GenerateRandomConfig& cfg) {
    RandomHypergraphParams params;
    params.nodes = cfg.nodes;
    params.edges = cfg.edges;
    params.min_edge_size = cfg.min_size;
    params.max_edge_size = cfg.max_size;
    params.unit_weights = cfg.unit_weights;
    const Hypergraph h = cfg.connected ? random_connected_hypergraph(params, cfg.seed)
                                       : random_hypergraph(params, cfg.seed);
    save_hyperedge_list(cfg.output, h, identity_labels(h));
    std::cout << "random hypergraph with " << h.node_count() << " nodes, " << h.edge_count()
              << " edges written to " << cfg.output << "\n";
    return kExitOk;
}

struct OraclePerronConfig {
    std::string input;
    std::string side = "node";
    double tol = 1e-12;
};

int run_oracle_perron(const OraclePerronConfig& cfg) {
    if (cfg.side != "node" && cfg.side != "edge")
        throw PreconditionError("--side must be node or edge");
    const auto [h, labels] = load_hyperedge_list(cfg.input);
    const DenseMatrix M = cfg.side == "edge" ? dense_edge_matrix(h) : dense_node_matrix(h);
    const PerronResult res = dense_perron(M, cfg.tol);
    std::printf("value: %.17g  iterations: %d%s\n", res.value, res.iterations,
                res.shift_applied ? "  (diagonal shift applied)" : "");
    for (std::size_t i = 0; i < res.vector.size(); ++i) {
        const std::string& name =
            cfg.side == "edge" ? ("edge" + std::to_string(i)) : labels.label(static_cast<NodeId>(i));
        std::printf("%s %.17g\n", name.c_str(), res.vector[i]);
    }
    return kExitOk;
}

struct OracleTensorConfig {
    std::string input;
    std::string solution;
    double p = 1.0;
};

int run_oracle_tensor(const OracleTensorConfig& cfg) {
    const auto [h, labels] = load_hyperedge_list(cfg.input);
    const LoadedSolution sol = read_solution_json(cfg.solution);
    std::vector<double> x(static_cast<std::size_t>(h.node_count()), 0.0);
    if (static_cast<NodeId>(sol.node_labels.size()) != h.node_count())
        throw InputError("solution node count differs from hypergraph");
    for (std::size_t i = 0; i < sol.node_labels.size(); ++i) {
        const auto id = labels.find(sol.node_labels[i]);
        if (!id)
            throw InputError("solution label '" + sol.node_labels[i] +
                             "' not present in hypergraph");
        x[*id] = sol.node_scores[i];
    }
    std::printf("tensor residual: %.17g\n", tensor_z_residual(h, x, cfg.p));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"node and hyperedge centrality for weighted hypergraphs"};
    app.require_subcommand(1);
    CommonOpts common;
    app.add_flag("--json-errors", common.json_errors,
                 "emit machine-readable JSON diagnostics on stderr");

    ComputeConfig compute_cfg;
    CLI::App* compute = app.add_subcommand("compute", "solve the centrality fixed point");
    compute->add_option("--input", compute_cfg.input,
                        "hyperedge-list file, or nverts and simplices files")
        ->required()
        ->expected(1, 2);
    compute->add_option("--node-weights", compute_cfg.node_weights, "'label weight' file");
    compute->add_option("--model", compute_cfg.model, "linear | logexp | max")
        ->default_val("linear");
    compute->add_option("--p", compute_cfg.p, "logexp exponent parameter (p >= 1)");
    compute->add_option("--alpha", compute_cfg.alpha, "max-model sharpness (alpha >= 1)");
    compute->add_option("--tol", compute_cfg.tol, "stopping tolerance");
    compute->add_option("--max-iter", compute_cfg.max_iter, "iteration cap");
    compute->add_option("--norm", compute_cfg.norm, "l1 | l2 | linf");
    compute->add_option("--seed", compute_cfg.seed,
                        "seed a random positive init instead of all-ones");
    compute->add_option("--output", compute_cfg.output, "solution JSON path");
    compute->add_option("--edge-scatter", compute_cfg.edge_scatter,
                        "also write an edge weight-vs-score CSV");
    compute->add_option("--topk", compute_cfg.topk, "print the top-k nodes by score");
    compute->add_flag("--max-normalize", compute_cfg.max_normalize,
                      "write scores divided by their largest entry");

    CompareConfig compare_cfg;
    CLI::App* compare = app.add_subcommand("compare", "rank-compare two solution files");
    compare->add_option("solution1", compare_cfg.solution1)->required();
    compare->add_option("solution2", compare_cfg.solution2)->required();
    compare->add_option("--topk", compare_cfg.topk,
                        "curve length K (k = 1..K, default min(100, nodes))");
    compare->add_option("--output", compare_cfg.output, "curves CSV path");
    compare->add_option("--scatter-nodes", compare_cfg.scatter_nodes, "node scatter CSV path");
    compare->add_option("--scatter-edges", compare_cfg.scatter_edges,
                        "edge weight-vs-score CSV (first solution)");

    CLI::App* generate = app.add_subcommand("generate", "write synthetic instances");
    generate->require_subcommand(1);
    GenerateSunflowerConfig sun_cfg;
    CLI::App* sunflower = generate->add_subcommand("sunflower", "core plus petals");
    sunflower->add_option("--sizes", sun_cfg.sizes, "per-petal node counts, e.g. 3,3,3")
        ->required()
        ->delimiter(',');
    sunflower->add_option("--output", sun_cfg.output)->required();
    GenerateRandomConfig rand_cfg;
    CLI::App* random = generate->add_subcommand("random", "seeded random hypergraph");
    random->add_option("--nodes", rand_cfg.nodes)->required();
    random->add_option("--edges", rand_cfg.edges)->required();
    random->add_option("--seed", rand_cfg.seed);
    random->add_option("--min-size", rand_cfg.min_size);
    random->add_option("--max-size", rand_cfg.max_size);
    random->add_flag("--unit-weights", rand_cfg.unit_weights);
    random->add_flag("--connected", rand_cfg.connected,
                     "retry seeds until the instance is connected");
    random->add_option("--output", rand_cfg.output)->required();

    CLI::App* oracle = app.add_subcommand("oracle", "independent reference computations");
    oracle->require_subcommand(1);
    OraclePerronConfig perron_cfg;
    CLI::App* perron = oracle->add_subcommand("perron", "dense dominant eigenpair");
    perron->add_option("--input", perron_cfg.input)->required();
    perron->add_option("--side", perron_cfg.side, "node | edge");
    perron->add_option("--tol", perron_cfg.tol);
    OracleTensorConfig tensor_cfg;
    CLI::App* tensor = oracle->add_subcommand("tensor-residual",
                                              "tensor eigen relation residual of a solution");
    tensor->add_option("--input", tensor_cfg.input)->required();
    tensor->add_option("--solution", tensor_cfg.solution)->required();
    tensor->add_option("--p", tensor_cfg.p);
    double ratio_beta = 0.5;
    int ratio_petals = 1;
    CLI::App* ratio = oracle->add_subcommand("sunflower-ratio",
                                             "predicted core/petal score ratio r^beta");
    ratio->add_option("--petals", ratio_petals)->required();
    ratio->add_option("--beta", ratio_beta)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed())
            return run_compute(compute_cfg, common);
        if (compare->parsed())
            return run_compare(compare_cfg);
        if (generate->parsed()) {
            if (sunflower->parsed())
                return run_generate_sunflower(sun_cfg);
            return run_generate_random(rand_cfg);
        }
        if (oracle->parsed()) {
            if (perron->parsed())
                return run_oracle_perron(perron_cfg);
            if (tensor->parsed())
                return run_oracle_tensor(tensor_cfg);
            std::printf("%.17g\n", sunflower_ratio(ratio_petals, ratio_beta));
            return kExitOk;
        }
    } catch (const InputError& e) {
        report_error(common, "input", e.what());
        return kExitInputError;
    } catch (const PreconditionError& e) {
        report_error(common, "precondition", e.what());
        return kExitPrecondition;
    } catch (const std::exception& e) {
        report_error(common, "internal", e.what());
        return kExitInputError;
    }
    return kExitOk;
}

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypercent/hypergraph.hpp"

namespace hypercent {

// Sunflower: hyperedges that pairwise intersect exactly in one core node.
// petal_sizes[i] counts the nodes of petal i including the core (>= 2 each).
struct SunflowerSpec {
    std::vector<int> petal_sizes;
};

/// Node 0 is the core; petal i contributes petal_sizes[i] - 1 fresh nodes.
/// All edge and node weights are 1.
Hypergraph generate_sunflower(const SunflowerSpec& spec);

/// Predicted core/petal-node centrality ratio r^beta for a uniform
/// unweighted sunflower with r petals when g has homogeneity degree beta.
double sunflower_ratio(int r, double beta);

// Row-major dense matrix, oracle-scale only.
struct DenseMatrix {
    std::int32_t rows = 0;
    std::int32_t cols = 0;
    std::vector<double> data;

    static DenseMatrix zero(std::int32_t r, std::int32_t c) {
        return {r, c, std::vector<double>(static_cast<std::size_t>(r) * c, 0.0)};
    }
    double& at(std::int32_t i, std::int32_t j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double at(std::int32_t i, std::int32_t j) const {
        return data[static_cast<std::size_t>(i) * cols + j];
    }
    std::vector<double> apply(std::span<const double> v) const;
    double max_entry() const;
};

struct PerronResult {
    std::vector<double> vector;  // positive, l2-normalized
    double value = 0.0;
    int iterations = 0;
    bool shift_applied = false;  // tiny diagonal shift used to defeat periodicity
};

/// Dominant eigenpair of a nonnegative irreducible matrix by plain power
/// iteration (relative change below tol). If a period-2 oscillation is
/// detected the iteration restarts on M + sigma*I with
/// sigma = 1e-12 * max entry, reported via shift_applied; the returned value
/// is always measured against the original matrix. Throws PreconditionError
/// when the iteration cap is exhausted.
PerronResult dense_perron(const DenseMatrix& matrix, double tol = 1e-12, int max_iter = 500000);

/// Dense (A_H + D_H) N from the clique expansion; node-side linear oracle.
DenseMatrix dense_node_matrix(const Hypergraph& h);

/// Dense (A^(e) + Delta) W from the line graph; edge-side linear oracle.
DenseMatrix dense_edge_matrix(const Hypergraph& h);

/// Relative residual of the order-k tensor eigenvalue relation at x:
/// with s_i = sum over edges containing i of w(e) * prod_{j in e, j != i} x_j,
/// returns min over lambda of ||s - lambda x^p|| / ||s|| (lambda by least
/// squares). Requires a k-uniform hypergraph with unit node weights.
double tensor_z_residual(const Hypergraph& h, std::span<const double> x, double p);

struct RandomHypergraphParams {
    std::int32_t nodes = 8;
    std::int32_t edges = 6;
    int min_edge_size = 2;
    int max_edge_size = 4;
    bool unit_weights = false;  // otherwise uniform in [0.5, 2)
};

/// Seed-deterministic random hypergraph (identical output across platforms
/// and runs). Duplicate member sets merge with summed weights, so the final
/// edge count can be below params.edges.
Hypergraph random_hypergraph(const RandomHypergraphParams& params, std::uint64_t seed);

/// Like random_hypergraph but retries derived seeds until the instance has
/// exactly params.nodes nodes and a connected node-edge bipartite graph.
Hypergraph random_connected_hypergraph(const RandomHypergraphParams& params, std::uint64_t seed);

} // namespace hypercent

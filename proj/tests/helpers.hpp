#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hypercent/hypergraph.hpp"
#include "hypercent/oracles.hpp"

namespace test_helpers {

// Generic connected instance family used across tests: 4..10 nodes, 3..8
// edges of size 2..4, random positive weights.
inline hypercent::Hypergraph test_instance(std::uint64_t seed, bool unit_weights = false) {
    std::mt19937_64 rng(seed);
    hypercent::RandomHypergraphParams params;
    params.nodes = 4 + static_cast<std::int32_t>(rng() % 7);
    params.edges = 3 + static_cast<std::int32_t>(rng() % 6);
    params.min_edge_size = 2;
    params.max_edge_size = 4;
    params.unit_weights = unit_weights;
    return hypercent::random_connected_hypergraph(params, rng());
}

// Connected 3-uniform instances with unit node weights (builder default).
// Edge count scales with the node count: sparse tree-like draws can lack an
// interior positive fixed point for the multiplicative model, which is a
// solver rejection, not a test vehicle.
inline hypercent::Hypergraph test_instance_uniform3(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    hypercent::RandomHypergraphParams params;
    params.nodes = 4 + static_cast<std::int32_t>(rng() % 5);
    params.edges = params.nodes + static_cast<std::int32_t>(rng() % 5);
    params.min_edge_size = 3;
    params.max_edge_size = 3;
    return hypercent::random_connected_hypergraph(params, rng());
}

inline std::vector<double> random_positive(std::size_t len, std::mt19937_64& rng,
                                           double lo = 0.1, double hi = 2.0) {
    std::vector<double> v(len);
    for (double& t : v)
        t = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return v;
}

inline double linf_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Dense incidence matrix built directly from the edge member lists; the
// independent reference for the sparse operators.
struct DenseIncidence {
    std::int32_t n, m;
    std::vector<double> b;  // row-major n x m

    explicit DenseIncidence(const hypercent::Hypergraph& h)
        : n(h.node_count()), m(h.edge_count()), b(static_cast<std::size_t>(n) * m, 0.0) {
        for (hypercent::EdgeId e = 0; e < m; ++e)
            for (hypercent::NodeId i : h.members(e))
                b[static_cast<std::size_t>(i) * m + e] = 1.0;
    }
    double at(std::int32_t i, std::int32_t e) const {
        return b[static_cast<std::size_t>(i) * m + e];
    }
};

} // namespace test_helpers

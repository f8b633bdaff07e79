#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hypercent {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

// Weighted hypergraph stored as a dual CSR incidence index: members per edge
// (columns of the incidence matrix B) and incident edges per node (rows of B).
// Both index directions are kept sorted so the structure is canonical.
// Immutable after construction; safe to share across threads.
class Hypergraph {
public:
    NodeId node_count() const { return n_; }
    EdgeId edge_count() const { return m_; }

    /// Sorted member node ids of edge e.
    std::span<const NodeId> members(EdgeId e) const {
        return {edge_members_.data() + edge_offsets_[e],
                edge_members_.data() + edge_offsets_[e + 1]};
    }

    /// Sorted ids of the edges incident to node i.
    std::span<const EdgeId> edges_of(NodeId i) const {
        return {node_edges_.data() + node_offsets_[i],
                node_edges_.data() + node_offsets_[i + 1]};
    }

    double edge_weight(EdgeId e) const { return edge_weights_[e]; }
    double node_weight(NodeId i) const { return node_weights_[i]; }
    const std::vector<double>& edge_weights() const { return edge_weights_; }
    const std::vector<double>& node_weights() const { return node_weights_; }

    std::int32_t degree(NodeId i) const {
        return static_cast<std::int32_t>(node_offsets_[i + 1] - node_offsets_[i]);
    }
    std::int32_t edge_size(EdgeId e) const {
        return static_cast<std::int32_t>(edge_offsets_[e + 1] - edge_offsets_[e]);
    }
    /// Total incidence count, sum of |e| over all edges.
    std::int64_t incidence_count() const {
        return static_cast<std::int64_t>(edge_members_.size());
    }

private:
    friend Hypergraph build_hypergraph(const std::vector<std::pair<std::vector<NodeId>, double>>&,
                                       const std::optional<std::vector<double>>&);
    friend Hypergraph with_node_weights(const Hypergraph&, std::vector<double>);

    NodeId n_ = 0;
    EdgeId m_ = 0;
    std::vector<std::int64_t> edge_offsets_;  // m+1
    std::vector<NodeId> edge_members_;
    std::vector<std::int64_t> node_offsets_;  // n+1
    std::vector<EdgeId> node_edges_;
    std::vector<double> edge_weights_;
    std::vector<double> node_weights_;
};

/// Builds a hypergraph from raw (member list, weight) pairs.
/// Duplicate node ids inside one edge are collapsed; edges with identical
/// member sets are merged with summed weights (edge ids follow first
/// appearance). Node count is max id + 1; ids missing from every edge become
/// isolated nodes. Absent node weights default to 1.
/// Throws PreconditionError on empty input, empty member lists, negative ids
/// or non-positive weights.
Hypergraph build_hypergraph(const std::vector<std::pair<std::vector<NodeId>, double>>& edges,
                            const std::optional<std::vector<double>>& node_weights = std::nullopt);

/// Copy of h with replaced node weights (must be positive, length n).
Hypergraph with_node_weights(const Hypergraph& h, std::vector<double> node_weights);

/// result_i = sum over edges e containing i of w(e) * y_e, i.e. (B W y)_i.
std::vector<double> apply_BW(const Hypergraph& h, std::span<const double> y);

/// result_e = sum over nodes i in e of nu(i) * x_i, i.e. (B^T N x)_e.
std::vector<double> apply_BtN(const Hypergraph& h, std::span<const double> x);

// Symmetric weighted graph with zero diagonal plus separately stored degree
// values; holds clique-expansion and line-graph structures.
struct WeightedGraph {
    std::int32_t n = 0;
    std::vector<std::int64_t> offsets;  // n+1, CSR over off-diagonal entries
    std::vector<std::int32_t> cols;
    std::vector<double> vals;
    std::vector<double> degrees;

    double at(std::int32_t i, std::int32_t j) const;  // 0 when absent or i==j
};

/// Clique-expansion graph: (i,j) weight = sum of w(e) over edges containing
/// both, degrees d_i = sum of w(e) over edges containing i.
/// Materialized densely per edge (O(sum |e|^2)); intended for oracle-scale
/// instances only.
WeightedGraph clique_expansion(const Hypergraph& h);

/// Line graph on hyperedges: (e1,e2) weight = sum of nu(i) over shared nodes,
/// degrees delta_e = sum of nu(i) over i in e.
WeightedGraph line_graph_expansion(const Hypergraph& h);

/// True iff the bipartite node-edge incidence graph is connected (reaches all
/// n + m vertices from any start).
bool bipartite_connected(const Hypergraph& h);

} // namespace hypercent

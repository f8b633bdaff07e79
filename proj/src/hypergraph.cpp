#include "hypercent/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "hypercent/errors.hpp"

namespace hypercent {

namespace {

// FNV-1a over the id sequence; member lists are sorted and deduplicated
// before hashing, so equal sets hash equally.
struct MemberSetHash {
    std::size_t operator()(const std::vector<NodeId>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (NodeId i : v) {
            h ^= static_cast<std::uint64_t>(i) + 1;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

Hypergraph build_hypergraph(const std::vector<std::pair<std::vector<NodeId>, double>>& edges,
                            const std::optional<std::vector<double>>& node_weights) {
    if (edges.empty())
        throw PreconditionError("build_hypergraph: empty edge list");

    // Collapse duplicate members, merge identical member sets with summed
    // weights, keep first-appearance order for edge ids.
    std::unordered_map<std::vector<NodeId>, EdgeId, MemberSetHash> seen;
    seen.reserve(edges.size() * 2);
    std::vector<std::vector<NodeId>> member_sets;
    std::vector<double> weights;
    NodeId max_id = -1;

    for (std::size_t idx = 0; idx < edges.size(); ++idx) {
        const auto& [raw_members, w] = edges[idx];
        if (raw_members.empty())
            throw PreconditionError("build_hypergraph: edge " + std::to_string(idx) +
                                    " has an empty member list");
        if (!(w > 0.0) || !std::isfinite(w))
            throw PreconditionError("build_hypergraph: edge " + std::to_string(idx) +
                                    " has non-positive weight " + std::to_string(w));
        std::vector<NodeId> mem = raw_members;
        for (NodeId i : mem) {
            if (i < 0)
                throw PreconditionError("build_hypergraph: negative node id in edge " +
                                        std::to_string(idx));
            max_id = std::max(max_id, i);
        }
        std::sort(mem.begin(), mem.end());
        mem.erase(std::unique(mem.begin(), mem.end()), mem.end());

        auto [it, inserted] = seen.try_emplace(mem, static_cast<EdgeId>(member_sets.size()));
        if (inserted) {
            member_sets.push_back(std::move(mem));
            weights.push_back(w);
        } else {
            weights[it->second] += w;
        }
    }

    const NodeId n = max_id + 1;
    const EdgeId m = static_cast<EdgeId>(member_sets.size());

    Hypergraph h;
    h.n_ = n;
    h.m_ = m;
    h.edge_weights_ = std::move(weights);

    if (node_weights) {
        if (static_cast<NodeId>(node_weights->size()) != n)
            throw PreconditionError("build_hypergraph: node_weights length " +
                                    std::to_string(node_weights->size()) + " != node count " +
                                    std::to_string(n));
        for (double v : *node_weights)
            if (!(v > 0.0) || !std::isfinite(v))
                throw PreconditionError("build_hypergraph: non-positive node weight");
        h.node_weights_ = *node_weights;
    } else {
        h.node_weights_.assign(static_cast<std::size_t>(n), 1.0);
    }

    h.edge_offsets_.resize(static_cast<std::size_t>(m) + 1, 0);
    std::int64_t total = 0;
    for (EdgeId e = 0; e < m; ++e) {
        h.edge_offsets_[e] = total;
        total += static_cast<std::int64_t>(member_sets[e].size());
    }
    h.edge_offsets_[m] = total;
    h.edge_members_.resize(static_cast<std::size_t>(total));
    for (EdgeId e = 0; e < m; ++e)
        std::copy(member_sets[e].begin(), member_sets[e].end(),
                  h.edge_members_.begin() + h.edge_offsets_[e]);

    // dual index: edges per node, sorted because edges are visited in order
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i : h.edge_members_)
        ++deg[static_cast<std::size_t>(i) + 1];
    h.node_offsets_.resize(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i)
        h.node_offsets_[i + 1] = h.node_offsets_[i] + deg[static_cast<std::size_t>(i) + 1];
    h.node_edges_.resize(static_cast<std::size_t>(total));
    std::vector<std::int64_t> cursor(h.node_offsets_.begin(), h.node_offsets_.end() - 1);
    for (EdgeId e = 0; e < m; ++e)
        for (NodeId i : h.members(e))
            h.node_edges_[cursor[i]++] = e;

    return h;
}

Hypergraph with_node_weights(const Hypergraph& h, std::vector<double> node_weights) {
    if (static_cast<NodeId>(node_weights.size()) != h.node_count())
        throw PreconditionError("with_node_weights: length mismatch");
    for (double v : node_weights)
        if (!(v > 0.0) || !std::isfinite(v))
            throw PreconditionError("with_node_weights: non-positive node weight");
    Hypergraph out = h;
    out.node_weights_ = std::move(node_weights);
    return out;
}

std::vector<double> apply_BW(const Hypergraph& h, std::span<const double> y) {
    if (static_cast<EdgeId>(y.size()) != h.edge_count())
        throw PreconditionError("apply_BW: vector length " + std::to_string(y.size()) +
                                " != edge count " + std::to_string(h.edge_count()));
    std::vector<double> out(static_cast<std::size_t>(h.node_count()), 0.0);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const double wy = h.edge_weight(e) * y[e];
        for (NodeId i : h.members(e))
            out[i] += wy;
    }
    return out;
}

std::vector<double> apply_BtN(const Hypergraph& h, std::span<const double> x) {
    if (static_cast<NodeId>(x.size()) != h.node_count())
        throw PreconditionError("apply_BtN: vector length " + std::to_string(x.size()) +
                                " != node count " + std::to_string(h.node_count()));
    std::vector<double> out(static_cast<std::size_t>(h.edge_count()), 0.0);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        double acc = 0.0;
        for (NodeId i : h.members(e))
            acc += h.node_weight(i) * x[i];
        out[e] = acc;
    }
    return out;
}

double WeightedGraph::at(std::int32_t i, std::int32_t j) const {
    if (i == j)
        return 0.0;
    for (std::int64_t k = offsets[i]; k < offsets[i + 1]; ++k)
        if (cols[k] == j)
            return vals[k];
    return 0.0;
}

namespace {

WeightedGraph from_pair_weights(std::int32_t n,
                                const std::map<std::pair<std::int32_t, std::int32_t>, double>& acc,
                                std::vector<double> degrees) {
    WeightedGraph g;
    g.n = n;
    g.degrees = std::move(degrees);
    std::vector<std::int64_t> count(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [ij, w] : acc) {
        ++count[ij.first + 1];
        ++count[ij.second + 1];
    }
    g.offsets.resize(static_cast<std::size_t>(n) + 1, 0);
    for (std::int32_t i = 0; i < n; ++i)
        g.offsets[i + 1] = g.offsets[i] + count[static_cast<std::size_t>(i) + 1];
    g.cols.resize(static_cast<std::size_t>(g.offsets[n]));
    g.vals.resize(static_cast<std::size_t>(g.offsets[n]));
    std::vector<std::int64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (const auto& [ij, w] : acc) {  // map order gives sorted columns per row
        g.cols[cursor[ij.first]] = ij.second;
        g.vals[cursor[ij.first]++] = w;
        g.cols[cursor[ij.second]] = ij.first;
        g.vals[cursor[ij.second]++] = w;
    }
    return g;
}

} // namespace

WeightedGraph clique_expansion(const Hypergraph& h) {
    std::map<std::pair<std::int32_t, std::int32_t>, double> acc;
    std::vector<double> deg(static_cast<std::size_t>(h.node_count()), 0.0);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const auto mem = h.members(e);
        const double w = h.edge_weight(e);
        for (std::size_t a = 0; a < mem.size(); ++a) {
            deg[mem[a]] += w;
            for (std::size_t b = a + 1; b < mem.size(); ++b)
                acc[{mem[a], mem[b]}] += w;  // members are sorted, so a < b in id too
        }
    }
    return from_pair_weights(h.node_count(), acc, std::move(deg));
}

WeightedGraph line_graph_expansion(const Hypergraph& h) {
    std::map<std::pair<std::int32_t, std::int32_t>, double> acc;
    std::vector<double> deg(static_cast<std::size_t>(h.edge_count()), 0.0);
    for (EdgeId e = 0; e < h.edge_count(); ++e)
        for (NodeId i : h.members(e))
            deg[e] += h.node_weight(i);
    for (NodeId i = 0; i < h.node_count(); ++i) {
        const auto es = h.edges_of(i);
        for (std::size_t a = 0; a < es.size(); ++a)
            for (std::size_t b = a + 1; b < es.size(); ++b)
                acc[{es[a], es[b]}] += h.node_weight(i);
    }
    return from_pair_weights(h.edge_count(), acc, std::move(deg));
}

bool bipartite_connected(const Hypergraph& h) {
    const std::int64_t total = static_cast<std::int64_t>(h.node_count()) + h.edge_count();
    if (total == 0)
        return true;
    std::vector<char> seen_node(static_cast<std::size_t>(h.node_count()), 0);
    std::vector<char> seen_edge(static_cast<std::size_t>(h.edge_count()), 0);
    // DFS over the node-edge incidence graph starting from node 0 (or edge 0
    // when there are no nodes).
    std::vector<std::pair<char, std::int32_t>> stack;
    std::int64_t reached = 0;
    if (h.node_count() > 0) {
        seen_node[0] = 1;
        stack.push_back({'n', 0});
    } else {
        seen_edge[0] = 1;
        stack.push_back({'e', 0});
    }
    while (!stack.empty()) {
        auto [kind, v] = stack.back();
        stack.pop_back();
        ++reached;
        if (kind == 'n') {
            for (EdgeId e : h.edges_of(v))
                if (!seen_edge[e]) {
                    seen_edge[e] = 1;
                    stack.push_back({'e', e});
                }
        } else {
            for (NodeId i : h.members(v))
                if (!seen_node[i]) {
                    seen_node[i] = 1;
                    stack.push_back({'n', i});
                }
        }
    }
    return reached == total;
}

} // namespace hypercent

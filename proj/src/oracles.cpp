#include "hypercent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hypercent/errors.hpp"

namespace hypercent {

Hypergraph generate_sunflower(const SunflowerSpec& spec) {
    if (spec.petal_sizes.empty())
        throw PreconditionError("generate_sunflower: need at least one petal");
    std::vector<std::pair<std::vector<NodeId>, double>> edges;
    NodeId next = 1;
    for (int size : spec.petal_sizes) {
        if (size < 2)
            throw PreconditionError("generate_sunflower: petal size must be >= 2");
        std::vector<NodeId> members{0};
        for (int j = 0; j < size - 1; ++j)
            members.push_back(next++);
        edges.push_back({std::move(members), 1.0});
    }
    return build_hypergraph(edges);
}

double sunflower_ratio(int r, double beta) {
    if (r < 1)
        throw PreconditionError("sunflower_ratio: r must be >= 1");
    return std::pow(static_cast<double>(r), beta);
}

std::vector<double> DenseMatrix::apply(std::span<const double> v) const {
    std::vector<double> out(static_cast<std::size_t>(rows), 0.0);
    for (std::int32_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        const double* row = data.data() + static_cast<std::size_t>(i) * cols;
        for (std::int32_t j = 0; j < cols; ++j)
            acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

double DenseMatrix::max_entry() const {
    double mx = 0.0;
    for (double t : data)
        mx = std::max(mx, t);
    return mx;
}

namespace {

double l2(std::span<const double> v) {
    double acc = 0.0;
    for (double t : v)
        acc += t * t;
    return std::sqrt(acc);
}

double l2_diff(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

PerronResult power_iterate(const DenseMatrix& matrix, double shift, double tol, int max_iter,
                           bool* oscillation) {
    const auto n = static_cast<std::size_t>(matrix.rows);
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> prev = v, prev2;
    PerronResult res;
    for (int r = 0; r < max_iter; ++r) {
        std::vector<double> w = matrix.apply(v);
        if (shift != 0.0)
            for (std::size_t i = 0; i < n; ++i)
                w[i] += shift * v[i];
        const double nw = l2(w);
        if (!(nw > 0.0) || !std::isfinite(nw))
            throw PreconditionError("dense_perron: iteration collapsed to zero");
        for (double& t : w)
            t /= nw;
        prev2 = std::move(prev);
        prev = v;
        v = std::move(w);
        res.iterations = r + 1;
        const double change = l2_diff(v, prev);
        if (change / l2(v) < tol) {
            res.vector = v;
            return res;
        }
        // period-2 oscillation: v ~ v_{r-2} while v != v_{r-1}
        if (oscillation && r >= 8 && l2_diff(v, prev2) < 1e-13 && change > 1e-3) {
            *oscillation = true;
            return res;
        }
    }
    throw PreconditionError("dense_perron: no convergence within " + std::to_string(max_iter) +
                            " iterations");
}

} // namespace

PerronResult dense_perron(const DenseMatrix& matrix, double tol, int max_iter) {
    if (matrix.rows != matrix.cols || matrix.rows == 0)
        throw PreconditionError("dense_perron: matrix must be square and nonempty");
    for (double t : matrix.data)
        if (t < 0.0 || !std::isfinite(t))
            throw PreconditionError("dense_perron: matrix must be entrywise nonnegative");

    bool oscillation = false;
    PerronResult res = power_iterate(matrix, 0.0, tol, max_iter, &oscillation);
    if (oscillation) {
        const double sigma = 1e-12 * matrix.max_entry();
        res = power_iterate(matrix, sigma, tol, max_iter, nullptr);
        res.shift_applied = true;
    }
    // eigenvalue is always measured against the unshifted matrix
    res.value = l2(matrix.apply(res.vector));
    return res;
}

namespace {

constexpr std::int32_t kDenseOracleLimit = 4096;

void check_dense_size(std::int32_t dim, const char* what) {
    if (dim > kDenseOracleLimit)
        throw PreconditionError(std::string(what) + ": dense oracle limited to dimension " +
                                std::to_string(kDenseOracleLimit));
}

} // namespace

DenseMatrix dense_node_matrix(const Hypergraph& h) {
    check_dense_size(h.node_count(), "dense_node_matrix");
    const WeightedGraph g = clique_expansion(h);
    DenseMatrix M = DenseMatrix::zero(g.n, g.n);
    for (std::int32_t i = 0; i < g.n; ++i) {
        for (std::int64_t k = g.offsets[i]; k < g.offsets[i + 1]; ++k)
            M.at(i, g.cols[k]) = g.vals[k] * h.node_weight(g.cols[k]);
        M.at(i, i) = g.degrees[i] * h.node_weight(i);
    }
    return M;
}

DenseMatrix dense_edge_matrix(const Hypergraph& h) {
    check_dense_size(h.edge_count(), "dense_edge_matrix");
    const WeightedGraph g = line_graph_expansion(h);
    DenseMatrix M = DenseMatrix::zero(g.n, g.n);
    for (std::int32_t e = 0; e < g.n; ++e) {
        for (std::int64_t k = g.offsets[e]; k < g.offsets[e + 1]; ++k)
            M.at(e, g.cols[k]) = g.vals[k] * h.edge_weight(g.cols[k]);
        M.at(e, e) = g.degrees[e] * h.edge_weight(e);
    }
    return M;
}

double tensor_z_residual(const Hypergraph& h, std::span<const double> x, double p) {
    if (h.edge_count() == 0)
        throw PreconditionError("tensor_z_residual: empty hypergraph");
    const std::int32_t k = h.edge_size(0);
    for (EdgeId e = 1; e < h.edge_count(); ++e)
        if (h.edge_size(e) != k)
            throw PreconditionError("tensor_z_residual: hypergraph is not uniform (edge " +
                                    std::to_string(e) + " has size " +
                                    std::to_string(h.edge_size(e)) + ", expected " +
                                    std::to_string(k) + ")");
    for (NodeId i = 0; i < h.node_count(); ++i)
        if (h.node_weight(i) != 1.0)
            throw PreconditionError("tensor_z_residual: node weights must all be 1");
    if (static_cast<NodeId>(x.size()) != h.node_count())
        throw PreconditionError("tensor_z_residual: vector length mismatch");

    // s_i per edge-wise products, never materializing the order-k tensor
    std::vector<double> s(static_cast<std::size_t>(h.node_count()), 0.0);
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const auto mem = h.members(e);
        for (NodeId i : mem) {
            double prod = 1.0;
            for (NodeId j : mem)
                if (j != i)
                    prod *= x[j];
            s[i] += h.edge_weight(e) * prod;
        }
    }
    std::vector<double> xp(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        xp[i] = std::pow(x[i], p);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += s[i] * xp[i];
        den += xp[i] * xp[i];
    }
    const double lambda = den > 0.0 ? num / den : 0.0;
    std::vector<double> resid(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        resid[i] = s[i] - lambda * xp[i];
    const double ns = l2(s);
    return ns > 0.0 ? l2(resid) / ns : 0.0;
}

namespace {

// uniform integer in [0, bound) from raw mt19937_64 draws; modulo bias is
// irrelevant at test scale but keeps the stream platform-stable
std::int64_t draw_below(std::mt19937_64& rng, std::int64_t bound) {
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(bound));
}

double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Hypergraph random_hypergraph(const RandomHypergraphParams& params, std::uint64_t seed) {
    if (params.nodes < 1 || params.edges < 1)
        throw PreconditionError("random_hypergraph: need at least one node and edge");
    if (params.min_edge_size < 1 || params.max_edge_size < params.min_edge_size)
        throw PreconditionError("random_hypergraph: invalid edge size range");

    std::mt19937_64 rng(seed);
    const int max_size = std::min<std::int32_t>(params.max_edge_size, params.nodes);
    const int min_size = std::min<std::int32_t>(params.min_edge_size, max_size);

    std::vector<std::pair<std::vector<NodeId>, double>> edges;
    std::vector<NodeId> pool(static_cast<std::size_t>(params.nodes));
    std::iota(pool.begin(), pool.end(), 0);
    for (std::int32_t e = 0; e < params.edges; ++e) {
        const int size =
            min_size + static_cast<int>(draw_below(rng, max_size - min_size + 1));
        // partial Fisher-Yates sample of `size` distinct nodes
        for (int j = 0; j < size; ++j) {
            const auto pick = j + draw_below(rng, params.nodes - j);
            std::swap(pool[j], pool[pick]);
        }
        std::vector<NodeId> members(pool.begin(), pool.begin() + size);
        const double w = params.unit_weights ? 1.0 : 0.5 + 1.5 * draw_unit(rng);
        edges.push_back({std::move(members), w});
    }
    return build_hypergraph(edges);
}

Hypergraph random_connected_hypergraph(const RandomHypergraphParams& params, std::uint64_t seed) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Hypergraph h = random_hypergraph(params, seed + 0x9E3779B97F4A7C15ULL * attempt);
        if (h.node_count() == params.nodes && bipartite_connected(h))
            return h;
    }
    throw PreconditionError("random_connected_hypergraph: no connected instance found");
}

} // namespace hypercent

#include "hypercent/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hypercent/errors.hpp"

namespace hypercent {

double vector_norm(std::span<const double> v, Norm norm) {
    double acc = 0.0;
    switch (norm) {
    case Norm::L1:
        for (double t : v)
            acc += std::abs(t);
        return acc;
    case Norm::L2:
        for (double t : v)
            acc += t * t;
        return std::sqrt(acc);
    case Norm::LInf:
        for (double t : v)
            acc = std::max(acc, std::abs(t));
        return acc;
    }
    return acc;
}

std::string norm_name(Norm norm) {
    switch (norm) {
    case Norm::L1:
        return "l1";
    case Norm::L2:
        return "l2";
    case Norm::LInf:
        return "linf";
    }
    return "l2";
}

std::optional<Norm> parse_norm(const std::string& name) {
    if (name == "l1")
        return Norm::L1;
    if (name == "l2")
        return Norm::L2;
    if (name == "linf")
        return Norm::LInf;
    return std::nullopt;
}

std::string regime_name(Regime regime) {
    switch (regime) {
    case Regime::P1:
        return "P1";
    case Regime::P2:
        return "P2";
    case Regime::Unverified:
        return "unverified";
    }
    return "unverified";
}

ConditionReport check_conditions(const Hypergraph& h, const CentralityModel& model) {
    ConditionReport report;
    report.rho = model_rho(model);
    report.connected = bipartite_connected(h);
    if (!report.rho)
        return report;  // non-homogeneous map present: theory not covered

    constexpr double kRhoTol = 1e-12;
    const bool positive_maps = model.f.kind() != MapKind::Logarithm &&
                               model.g.kind() != MapKind::Logarithm &&
                               model.phi.kind() != MapKind::Logarithm &&
                               model.psi.kind() != MapKind::Logarithm;
    if (*report.rho < 1.0 - kRhoTol)
        report.regime = Regime::P1;
    else if (std::abs(*report.rho - 1.0) <= kRhoTol && report.connected && positive_maps)
        report.regime = Regime::P2;
    return report;
}

namespace {

double relative_change(std::span<const double> next, std::span<const double> prev, Norm norm) {
    std::vector<double> diff(next.size());
    for (std::size_t i = 0; i < next.size(); ++i)
        diff[i] = next[i] - prev[i];
    return vector_norm(diff, norm) / vector_norm(next, norm);
}

void check_positive_init(std::span<const double> v, std::size_t expected, const char* which) {
    if (v.size() != expected)
        throw PreconditionError(std::string("npm_solve: ") + which + " has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(expected));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] > 0.0) || !std::isfinite(v[i]))
            throw PreconditionError(std::string("npm_solve: ") + which +
                                    " must be strictly positive and finite (index " +
                                    std::to_string(i) + ")");
}

} // namespace

CentralitySolution npm_solve(const Hypergraph& h, const CentralityModel& model,
                             const SolverOptions& opts) {
    const auto n = static_cast<std::size_t>(h.node_count());
    const auto m = static_cast<std::size_t>(h.edge_count());

    if (!(opts.tol > 0.0) || !std::isfinite(opts.tol))
        throw PreconditionError("npm_solve: tol must be positive");
    if (opts.max_iter < 1)
        throw PreconditionError("npm_solve: max_iter must be >= 1");
    for (NodeId i = 0; i < h.node_count(); ++i)
        if (h.degree(i) == 0)
            throw PreconditionError("npm_solve: positivity unattainable, node " +
                                    std::to_string(i) + " has no incident edges");

    std::vector<double> x(n, 1.0), y(m, 1.0);
    if (opts.x0) {
        check_positive_init(*opts.x0, n, "x0");
        x = *opts.x0;
    }
    if (opts.y0) {
        check_positive_init(*opts.y0, m, "y0");
        y = *opts.y0;
    }

    CentralitySolution sol;
    sol.norm = opts.norm;
    sol.change_history.reserve(static_cast<std::size_t>(std::min(opts.max_iter, 4096)));

    auto node_update = [&](const std::vector<double>& ycur) {
        return eval_map(model.g, apply_BW(h, eval_map(model.f, ycur)));
    };
    auto edge_update = [&](const std::vector<double>& xcur) {
        return eval_map(model.psi, apply_BtN(h, eval_map(model.phi, xcur)));
    };

    for (int r = 0; r < opts.max_iter; ++r) {
        std::vector<double> u, v;
        try {
            u = node_update(y);
            v = edge_update(x);
        } catch (const PreconditionError& e) {
            throw PreconditionError(std::string(e.what()) + " (iteration " +
                                    std::to_string(r + 1) + ")");
        }
        for (std::size_t i = 0; i < n; ++i)
            u[i] = std::sqrt(x[i] * u[i]);
        for (std::size_t e = 0; e < m; ++e)
            v[e] = std::sqrt(y[e] * v[e]);
        // positivity must survive every step; exact zeros mean the iterate
        // underflowed out of the feasible cone
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isfinite(u[i]) || !(u[i] > 0.0))
                throw PreconditionError("npm_solve: node update lost positivity at iteration " +
                                        std::to_string(r + 1) + " (entry " + std::to_string(i) +
                                        ")");
        for (std::size_t e = 0; e < m; ++e)
            if (!std::isfinite(v[e]) || !(v[e] > 0.0))
                throw PreconditionError("npm_solve: edge update lost positivity at iteration " +
                                        std::to_string(r + 1) + " (entry " + std::to_string(e) +
                                        ")");
        const double nu = vector_norm(u, opts.norm);
        const double nv = vector_norm(v, opts.norm);
        if (!(nu > 0.0) || !(nv > 0.0) || !std::isfinite(nu) || !std::isfinite(nv))
            throw PreconditionError("npm_solve: degenerate normalization at iteration " +
                                    std::to_string(r + 1));
        for (std::size_t i = 0; i < n; ++i)
            u[i] /= nu;
        for (std::size_t e = 0; e < m; ++e)
            v[e] /= nv;

        const double change =
            relative_change(u, x, opts.norm) + relative_change(v, y, opts.norm);
        sol.change_history.push_back(change);
        x.swap(u);
        y.swap(v);
        sol.iterations = r + 1;
        if (change < opts.tol) {
            sol.converged = true;
            break;
        }
    }

    sol.lambda = vector_norm(node_update(y), opts.norm);
    sol.mu = vector_norm(edge_update(x), opts.norm);
    sol.x = std::move(x);
    sol.y = std::move(y);
    return sol;
}

std::pair<double, double> residual(const Hypergraph& h, const CentralityModel& model,
                                   const CentralitySolution& sol) {
    const auto gx = eval_map(model.g, apply_BW(h, eval_map(model.f, sol.y)));
    const auto py = eval_map(model.psi, apply_BtN(h, eval_map(model.phi, sol.x)));
    std::vector<double> rx(sol.x.size()), ry(sol.y.size());
    for (std::size_t i = 0; i < rx.size(); ++i)
        rx[i] = sol.lambda * sol.x[i] - gx[i];
    for (std::size_t e = 0; e < ry.size(); ++e)
        ry[e] = sol.mu * sol.y[e] - py[e];
    std::vector<double> lx(sol.x.size()), my(sol.y.size());
    for (std::size_t i = 0; i < lx.size(); ++i)
        lx[i] = sol.lambda * sol.x[i];
    for (std::size_t e = 0; e < my.size(); ++e)
        my[e] = sol.mu * sol.y[e];
    return {vector_norm(rx, sol.norm) / vector_norm(lx, sol.norm),
            vector_norm(ry, sol.norm) / vector_norm(my, sol.norm)};
}

std::optional<double> convergence_rate(const CentralitySolution& sol) {
    const auto& hist = sol.change_history;
    if (hist.size() < 5)
        return std::nullopt;
    const std::size_t start = hist.size() / 2;
    // simple linear regression of log(change) on the iteration index
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto count = static_cast<double>(hist.size() - start);
    for (std::size_t i = start; i < hist.size(); ++i) {
        if (!(hist[i] > 0.0))
            return std::nullopt;
        const double t = static_cast<double>(i);
        const double l = std::log(hist[i]);
        sx += t;
        sy += l;
        sxx += t * t;
        sxy += t * l;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0)
        return std::nullopt;
    return (count * sxy - sx * sy) / denom;
}

} // namespace hypercent

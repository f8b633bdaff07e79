#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercent/hypergraph.hpp"
#include "hypercent/maps.hpp"

namespace hypercent {

enum class Norm { L1, L2, LInf };

double vector_norm(std::span<const double> v, Norm norm);

std::string norm_name(Norm norm);
std::optional<Norm> parse_norm(const std::string& name);  // "l1" / "l2" / "linf"

struct SolverOptions {
    double tol = 1e-8;   // stopping tolerance on the summed relative change
    int max_iter = 1000;
    Norm norm = Norm::L2;
    // Initial positive vectors; all-ones when absent.
    std::optional<std::vector<double>> x0;
    std::optional<std::vector<double>> y0;
};

struct CentralitySolution {
    std::vector<double> x;  // node scores, unit norm, positive
    std::vector<double> y;  // edge scores, unit norm, positive
    double lambda = 0.0;    // recovered as ||g(BW f(y))|| at the fixed point
    double mu = 0.0;        // recovered as ||psi(B^T N phi(x))|| at the fixed point
    int iterations = 0;
    bool converged = false;
    std::vector<double> change_history;  // stopping quantity per iteration
    Norm norm = Norm::L2;
};

enum class Regime { P1, P2, Unverified };

std::string regime_name(Regime regime);

// Existence/uniqueness diagnosis: P1 when rho < 1; P2 when rho = 1, all maps
// are positive kinds and the node-edge bipartite graph is connected;
// Unverified otherwise (notably any model containing a logarithm).
struct ConditionReport {
    Regime regime = Regime::Unverified;
    std::optional<double> rho;
    bool connected = false;
};

ConditionReport check_conditions(const Hypergraph& h, const CentralityModel& model);

/// Nonlinear power method. Each iteration applies the damped update
///   u = sqrt(x . g(BW f(y))),  v = sqrt(y . psi(B^T N phi(x)))
/// (entrywise product and square root), renormalizes, and stops when
///   ||x' - x||/||x'|| + ||y' - y||/||y'|| < tol.
/// Throws PreconditionError on isolated nodes (positivity unattainable), on
/// invalid options, and on numeric breakdown (non-finite values or map
/// domain violations, naming the iteration). Hitting max_iter returns the
/// last iterate with converged = false.
CentralitySolution npm_solve(const Hypergraph& h, const CentralityModel& model,
                             const SolverOptions& opts = {});

/// Relative fixed-point residuals of the two equations at sol:
///   res_x = ||lambda x - g(BW f(y))|| / ||lambda x||,
///   res_y = ||mu y - psi(B^T N phi(x))|| / ||mu y||,
/// measured in sol's norm with the stored lambda, mu.
std::pair<double, double> residual(const Hypergraph& h, const CentralityModel& model,
                                   const CentralitySolution& sol);

/// Least-squares slope of log(change) vs iteration over the tail (second
/// half) of the change history; exp(slope) is the fitted per-iteration
/// contraction. nullopt when the history is shorter than 5 entries or a tail
/// change is zero.
std::optional<double> convergence_rate(const CentralitySolution& sol);

} // namespace hypercent

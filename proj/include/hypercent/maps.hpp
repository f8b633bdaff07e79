#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hypercent {

enum class MapKind { Power, Logarithm, Exponential };

// Scalar map applied entrywise. Power maps carry their exponent, which is
// also their homogeneity degree; logarithm and exponential are not
// homogeneous and report no degree.
class NonlinearMap {
public:
    static NonlinearMap power(double exponent);
    static NonlinearMap identity() { return power(1.0); }
    static NonlinearMap logarithm() { return NonlinearMap(MapKind::Logarithm, 0.0); }
    static NonlinearMap exponential() { return NonlinearMap(MapKind::Exponential, 0.0); }

    MapKind kind() const { return kind_; }
    /// Exponent of a power map; meaningless for the other kinds.
    double exponent() const { return exponent_; }
    /// Homogeneity degree, or nullopt for the non-homogeneous kinds.
    std::optional<double> homogeneity() const;
    bool is_identity() const { return kind_ == MapKind::Power && exponent_ == 1.0; }

    std::string describe() const;

private:
    NonlinearMap(MapKind k, double a) : kind_(k), exponent_(a) {}
    MapKind kind_;
    double exponent_;
};

/// Entrywise application with domain checking. Throws PreconditionError
/// naming the first offending index on log of a non-positive entry, zero
/// raised to a negative power, a negative entry under a non-integer
/// exponent, or a non-finite result.
std::vector<double> eval_map(const NonlinearMap& map, std::span<const double> v);

// The four maps of the centrality fixed-point system
//   lambda x = g(B W f(y)),  mu y = psi(B^T N phi(x)),
// together with homogeneity metadata.
struct CentralityModel {
    NonlinearMap f;
    NonlinearMap g;
    NonlinearMap phi;
    NonlinearMap psi;
    std::string name;

    /// (alpha, beta, gamma, delta) for f, g, phi, psi; nullopt marks a
    /// non-homogeneous map.
    std::array<std::optional<double>, 4> degrees() const {
        return {f.homogeneity(), g.homogeneity(), phi.homogeneity(), psi.homogeneity()};
    }
};

/// |alpha*beta*gamma*delta| when all four degrees exist, nullopt otherwise.
std::optional<double> model_rho(const CentralityModel& model);

/// f = g = phi = psi = identity.
CentralityModel make_linear();

/// f = id, g = t^(1/(p+1)), phi = ln, psi = exp; requires p >= 1.
CentralityModel make_logexp(double p);

/// f = g = id, phi = t^alpha, psi = t^(1/alpha); requires alpha >= 1.
CentralityModel make_max(double alpha);

} // namespace hypercent

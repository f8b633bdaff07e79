#include "hypercent/maps.hpp"

#include <cmath>
#include <sstream>

#include "hypercent/errors.hpp"

namespace hypercent {

NonlinearMap NonlinearMap::power(double exponent) {
    if (!std::isfinite(exponent) || exponent == 0.0)
        throw PreconditionError("NonlinearMap::power: exponent must be finite and nonzero");
    return NonlinearMap(MapKind::Power, exponent);
}

std::optional<double> NonlinearMap::homogeneity() const {
    if (kind_ == MapKind::Power)
        return exponent_;
    return std::nullopt;
}

std::string NonlinearMap::describe() const {
    switch (kind_) {
    case MapKind::Logarithm:
        return "log";
    case MapKind::Exponential:
        return "exp";
    case MapKind::Power:
        break;
    }
    if (exponent_ == 1.0)
        return "id";
    std::ostringstream os;
    os << "t^" << exponent_;
    return os.str();
}

std::vector<double> eval_map(const NonlinearMap& map, std::span<const double> v) {
    std::vector<double> out(v.size());
    const MapKind kind = map.kind();
    const double a = map.exponent();
    const bool integer_exponent = kind == MapKind::Power && a == std::floor(a);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = v[i];
        double r;
        switch (kind) {
        case MapKind::Power:
            if (t == 0.0 && a < 0.0)
                throw PreconditionError("eval_map: zero raised to negative power at index " +
                                        std::to_string(i));
            if (t < 0.0 && !integer_exponent)
                throw PreconditionError(
                    "eval_map: negative entry under non-integer exponent at index " +
                    std::to_string(i));
            r = (a == 1.0) ? t : std::pow(t, a);
            break;
        case MapKind::Logarithm:
            if (!(t > 0.0))
                throw PreconditionError("eval_map: logarithm of non-positive entry at index " +
                                        std::to_string(i));
            r = std::log(t);
            break;
        case MapKind::Exponential:
            r = std::exp(t);
            break;
        default:
            r = t;
        }
        if (!std::isfinite(r))
            throw PreconditionError("eval_map: non-finite result at index " + std::to_string(i));
        out[i] = r;
    }
    return out;
}

std::optional<double> model_rho(const CentralityModel& model) {
    double rho = 1.0;
    for (const auto& d : model.degrees()) {
        if (!d)
            return std::nullopt;
        rho *= std::abs(*d);
    }
    return rho;
}

CentralityModel make_linear() {
    return {NonlinearMap::identity(), NonlinearMap::identity(), NonlinearMap::identity(),
            NonlinearMap::identity(), "linear"};
}

CentralityModel make_logexp(double p) {
    if (!std::isfinite(p) || p < 1.0)
        throw PreconditionError("make_logexp: p must be >= 1");
    std::ostringstream name;
    name << "logexp(p=" << p << ")";
    return {NonlinearMap::identity(), NonlinearMap::power(1.0 / (p + 1.0)),
            NonlinearMap::logarithm(), NonlinearMap::exponential(), name.str()};
}

CentralityModel make_max(double alpha) {
    if (!std::isfinite(alpha) || alpha < 1.0)
        throw PreconditionError("make_max: alpha must be >= 1");
    std::ostringstream name;
    name << "max(alpha=" << alpha << ")";
    return {NonlinearMap::identity(), NonlinearMap::identity(), NonlinearMap::power(alpha),
            NonlinearMap::power(1.0 / alpha), name.str()};
}

} // namespace hypercent

#include "hscm/params.hpp"

#include "hscm/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hscm {

namespace {

// Round-off slack accepted at the closed endpoints of the supports.
constexpr double kEndpointSlack = 1e-12;

double sqrt_nu_n(const EnsembleParams& p)
{
    return std::sqrt(p.nu() * static_cast<double>(p.n()));
}

double to_exponential(const EnsembleParams& p, double x, Representation from)
{
    switch (from) {
    case Representation::Exponential:
        return x;
    case Representation::UnitInterval:
        return p.r_n() + std::log(x) / p.gamma();
    case Representation::Pareto:
        return std::log(sqrt_nu_n(p) / x);
    }
    return x;
}

double from_exponential(const EnsembleParams& p, double x, Representation to)
{
    switch (to) {
    case Representation::Exponential:
        return x;
    case Representation::UnitInterval:
        return std::min(1.0, std::exp(p.gamma() * (x - p.r_n())));
    case Representation::Pareto:
        return std::max(p.pareto_scale(), sqrt_nu_n(p) * std::exp(-x));
    }
    return x;
}

} // namespace

EnsembleParams derive_params(double gamma, double nu, std::int64_t n)
{
    if (!(gamma > 1.0) || !std::isfinite(gamma))
        throw DomainError("gamma must be a finite number > 1, got " + std::to_string(gamma));
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw DomainError("nu must be a finite number > 0, got " + std::to_string(nu));
    if (n < 1)
        throw DomainError("n must be >= 1, got " + std::to_string(n));

    EnsembleParams p;
    p.gamma_ = gamma;
    p.nu_ = nu;
    p.n_ = n;
    p.beta_ = 1.0 - 1.0 / gamma;
    p.r_n_ = 0.5 * std::log(static_cast<double>(n) / (p.beta_ * p.beta_ * nu));
    return p;
}

std::string_view to_string(Representation rep) noexcept
{
    switch (rep) {
    case Representation::Exponential:
        return "exponential";
    case Representation::UnitInterval:
        return "unit-interval";
    case Representation::Pareto:
        return "pareto";
    }
    return "unknown";
}

Representation representation_from_string(std::string_view name)
{
    if (name == "exponential")
        return Representation::Exponential;
    if (name == "unit-interval" || name == "unit")
        return Representation::UnitInterval;
    if (name == "pareto")
        return Representation::Pareto;
    throw DomainError("unknown representation '" + std::string(name) + "'");
}

double mu_n_log_density(const EnsembleParams& p, double x) noexcept
{
    if (x > p.r_n())
        return -std::numeric_limits<double>::infinity();
    return std::log(p.gamma()) + p.gamma() * (x - p.r_n());
}

double mu_n_density(const EnsembleParams& p, double x) noexcept
{
    if (x > p.r_n())
        return 0.0;
    return std::exp(mu_n_log_density(p, x));
}

double mu_n_cdf(const EnsembleParams& p, double x) noexcept
{
    if (x >= p.r_n())
        return 1.0;
    return std::exp(p.gamma() * (x - p.r_n()));
}

double mu_n_quantile(const EnsembleParams& p, double u)
{
    if (!(u > 0.0 && u <= 1.0))
        throw DomainError("mu_n quantile requires u in (0, 1], got " + std::to_string(u));
    return p.r_n() + std::log(u) / p.gamma();
}

double mu_n_negative_mass(const EnsembleParams& p) noexcept
{
    return mu_n_cdf(p, 0.0);
}

bool in_support(const EnsembleParams& p, double x, Representation rep) noexcept
{
    if (std::isnan(x))
        return false;
    switch (rep) {
    case Representation::Exponential:
        return x <= p.r_n() + kEndpointSlack * std::max(1.0, std::abs(p.r_n()));
    case Representation::UnitInterval:
        return x > 0.0 && x <= 1.0 + kEndpointSlack;
    case Representation::Pareto:
        return std::isfinite(x) && x >= p.pareto_scale() * (1.0 - kEndpointSlack);
    }
    return false;
}

double convert_coordinate(const EnsembleParams& p, double x, Representation from, Representation to)
{
    if (!in_support(p, x, from)) {
        throw DomainError("coordinate " + std::to_string(x) + " outside the " + std::string(to_string(from))
                          + " support");
    }
    if (from == to)
        return x;
    const double e = std::min(to_exponential(p, x, from), p.r_n());
    return from_exponential(p, e, to);
}

} // namespace hscm

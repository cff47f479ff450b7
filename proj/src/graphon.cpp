#include "hscm/graphon.hpp"

#include "hscm/error.hpp"
#include "hscm/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hscm {

std::string_view to_string(KernelKind kind) noexcept
{
    return kind == KernelKind::FermiDirac ? "fermi-dirac" : "classical";
}

KernelKind kernel_from_string(std::string_view name)
{
    if (name == "fermi-dirac" || name == "fd")
        return KernelKind::FermiDirac;
    if (name == "classical" || name == "classical-limit")
        return KernelKind::ClassicalLimit;
    throw DomainError("unknown kernel '" + std::string(name) + "'");
}

double w_fermi_dirac(double x, double y) noexcept
{
    return fermi_dirac_of_sum(x + y);
}

double w_classical(double x, double y) noexcept
{
    const double s = x + y;
    return s <= 0.0 ? 1.0 : std::exp(-s);
}

double kernel_value(KernelKind kind, double x, double y) noexcept
{
    return kind == KernelKind::FermiDirac ? w_fermi_dirac(x, y) : w_classical(x, y);
}

double w_unit_interval(const EnsembleParams& p, double x, double y)
{
    if (!(x > 0.0 && x <= 1.0) || !(y > 0.0 && y <= 1.0))
        throw DomainError("unit-interval graphon requires coordinates in (0, 1]");
    // n / (beta^2 nu) = e^{2 R_n}; work with the exponent to avoid overflow.
    const double s = 2.0 * p.r_n() + (std::log(x) + std::log(y)) / p.gamma();
    return fermi_dirac_of_sum(s);
}

double w_pareto(const EnsembleParams& p, double x, double y)
{
    const double lo = p.pareto_scale() * (1.0 - 1e-12);
    if (!(x >= lo) || !(y >= lo))
        throw DomainError("Pareto graphon requires coordinates >= beta * nu");
    const double s = std::log(p.nu()) + std::log(static_cast<double>(p.n())) - std::log(x) - std::log(y);
    return fermi_dirac_of_sum(s);
}

double bernoulli_entropy(double pr)
{
    if (!(pr >= 0.0 && pr <= 1.0))
        throw DomainError("Bernoulli entropy requires a probability in [0, 1], got " + std::to_string(pr));
    if (pr == 0.0 || pr == 1.0)
        return 0.0;
    return -pr * std::log(pr) - (1.0 - pr) * std::log1p(-pr);
}

double fermi_dirac_entropy_of_sum(double s) noexcept
{
    // H(W(s)) is even in s: log(1 + e^{-|s|}) + |s| W(|s|).
    const double a = std::abs(s);
    return std::log1p(std::exp(-a)) + a * fermi_dirac_of_sum(a);
}

double classical_entropy_of_sum(double s) noexcept
{
    if (s <= 0.0)
        return 0.0;
    const double w = std::exp(-s);
    // -w log w - (1 - w) log(1 - w) with log(1 - w) = log(-expm1(-s)).
    return s * w - (1.0 - w) * std::log(-std::expm1(-s));
}

double kernel_entropy(KernelKind kind, double x, double y) noexcept
{
    return kind == KernelKind::FermiDirac ? fermi_dirac_entropy_of_sum(x + y) : classical_entropy_of_sum(x + y);
}

double omega_n(const EnsembleParams& p)
{
    if (!(p.r_n() > 0.0))
        throw DomainError("omega_n requires R_n > 0 (n > beta^2 nu)");
    return -std::expm1(-(p.gamma() - 1.0) * p.r_n()) / (p.beta() * std::exp(p.r_n()));
}

double connection_mean(const EnsembleParams& p, double x)
{
    const double g = p.gamma();
    const double r = p.r_n();
    // Substitute u = mu_n((-inf, y]) so the measure becomes Lebesgue on (0, 1].
    auto integrand = [&](double u) { return fermi_dirac_of_sum(x + r + std::log(u) / g); };
    std::array<double, 2> breaks{};
    std::size_t nb = 0;
    if (r > 0.0)
        breaks[nb++] = std::exp(-g * r); // y = 0
    const double u_cross = -g * (x + r); // log u at y = -x
    if (u_cross < 0.0)
        breaks[nb++] = std::exp(u_cross);
    quad::Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-300;
    return quad::integrate(integrand, 0.0, 1.0, std::span<const double>(breaks.data(), nb), opt).value;
}

double expected_degree_fn(const EnsembleParams& p, double x, KernelKind kind)
{
    if (!in_support(p, x, Representation::Exponential))
        throw DomainError("expected_degree_fn requires x <= R_n");
    if (kind == KernelKind::ClassicalLimit) {
        if (x < 0.0)
            return 0.0;
        return static_cast<double>(p.n()) * omega_n(p) * std::exp(-x);
    }
    return static_cast<double>(p.n() - 1) * connection_mean(p, x);
}

} // namespace hscm

#pragma once

#include "hscm/params.hpp"

#include <cmath>
#include <string_view>

namespace hscm {

enum class KernelKind
{
    FermiDirac, ///< 1 / (e^{x+y} + 1)
    ClassicalLimit ///< min(e^{-(x+y)}, 1)
};

std::string_view to_string(KernelKind kind) noexcept;
KernelKind kernel_from_string(std::string_view name);

/// Fermi-Dirac connection probability as a function of s = x + y.
inline double fermi_dirac_of_sum(double s) noexcept;

/// Fermi-Dirac graphon W(x, y) = 1 / (e^{x+y} + 1).
double w_fermi_dirac(double x, double y) noexcept;

/// Classical-limit kernel min(e^{-(x+y)}, 1); dominates w_fermi_dirac.
double w_classical(double x, double y) noexcept;

double kernel_value(KernelKind kind, double x, double y) noexcept;

/// Unit-interval form 1 / ((n / (beta^2 nu)) (x y)^{1/gamma} + 1), x, y in (0, 1].
double w_unit_interval(const EnsembleParams& p, double x, double y);

/// Pareto form 1 / (nu n / (x y) + 1), x, y >= beta nu.
double w_pareto(const EnsembleParams& p, double x, double y);

/// Bernoulli entropy in nats; H(0) = H(1) = 0.
double bernoulli_entropy(double pr);

/// H(W(x, y)) written in terms of s = x + y; stays accurate where W
/// underflows relative to 1.
double fermi_dirac_entropy_of_sum(double s) noexcept;

/// H(min(e^{-s}, 1)).
double classical_entropy_of_sum(double s) noexcept;

double kernel_entropy(KernelKind kind, double x, double y) noexcept;

/// omega_n = (1 - e^{-(gamma-1) R_n}) / (beta e^{R_n}); requires R_n > 0.
double omega_n(const EnsembleParams& p);

/// Expected degree kappa_n(x) of a node at coordinate x <= R_n. FermiDirac
/// integrates (n-1) W(x, .) against mu_n adaptively; ClassicalLimit returns
/// the closed form n omega_n e^{-x} on [0, R_n] and 0 for x < 0.
double expected_degree_fn(const EnsembleParams& p, double x, KernelKind kind);

/// w_n(x) = integral of W(x, y) d mu_n(y) (Fermi-Dirac kernel).
double connection_mean(const EnsembleParams& p, double x);

// ---------------------------------------------------------------------------

inline double fermi_dirac_of_sum(double s) noexcept
{
    if (s > 0.0) {
        const double e = std::exp(-s);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(s));
}

} // namespace hscm

#pragma once

#include <cstdint>
#include <string_view>

namespace hscm {

/// Model parameters of the power-law hypersoft configuration model together
/// with the constants derived from them. Construct through derive_params();
/// every instance satisfies gamma > 1, nu > 0, n >= 1.
class EnsembleParams
{
public:
    double gamma() const noexcept { return gamma_; }
    double nu() const noexcept { return nu_; }
    std::int64_t n() const noexcept { return n_; }

    /// 1 - 1/gamma
    double beta() const noexcept { return beta_; }
    /// gamma + 1, the power-law exponent of the degree tail.
    double alpha() const noexcept { return gamma_ + 1.0; }
    /// Right end of the coordinate support, 0.5 * log(n / (beta^2 nu)).
    double r_n() const noexcept { return r_n_; }
    /// Point-process rate nu / 2 of the gamma = 2 growing construction.
    double delta() const noexcept { return nu_ / 2.0; }

    /// Left end beta * nu of the Pareto support.
    double pareto_scale() const noexcept { return beta_ * nu_; }

    friend EnsembleParams derive_params(double gamma, double nu, std::int64_t n);

    friend bool operator==(const EnsembleParams&, const EnsembleParams&) = default;

private:
    EnsembleParams() = default;

    double gamma_ = 2.0;
    double nu_ = 1.0;
    std::int64_t n_ = 1;
    double beta_ = 0.5;
    double r_n_ = 0.0;
};

/// Validates (gamma, nu, n) and computes the derived constants.
/// Throws DomainError when gamma <= 1, nu <= 0 or n < 1.
EnsembleParams derive_params(double gamma, double nu, std::int64_t n);

enum class Representation
{
    Exponential, ///< x in (-inf, R_n], density gamma e^{gamma (x - R_n)}
    UnitInterval, ///< x in (0, 1], uniform
    Pareto ///< y in [beta nu, inf), Pareto(gamma, beta nu)
};

std::string_view to_string(Representation rep) noexcept;
Representation representation_from_string(std::string_view name);

/// Density of the normalized measure mu_n. Zero right of R_n.
double mu_n_density(const EnsembleParams& p, double x) noexcept;

/// Log of the mu_n density; -inf right of R_n.
double mu_n_log_density(const EnsembleParams& p, double x) noexcept;

/// mu_n((-inf, x]) = e^{gamma (x - R_n)} clipped to [0, 1].
double mu_n_cdf(const EnsembleParams& p, double x) noexcept;

/// Inverse CDF of mu_n: R_n + log(u) / gamma for u in (0, 1].
double mu_n_quantile(const EnsembleParams& p, double u);

/// mu_n mass of the negative half-line, (beta^2 nu / n)^{gamma/2} when R_n >= 0.
double mu_n_negative_mass(const EnsembleParams& p) noexcept;

/// Maps a coordinate between the three equivalent representations. The
/// exponential/Pareto pair uses y = sqrt(nu n) e^{-x}, so that connection
/// probabilities agree exactly across representations.
double convert_coordinate(const EnsembleParams& p, double x, Representation from, Representation to);

/// True when x lies in the support of `rep` (with round-off slack at the
/// closed endpoint).
bool in_support(const EnsembleParams& p, double x, Representation rep) noexcept;

} // namespace hscm

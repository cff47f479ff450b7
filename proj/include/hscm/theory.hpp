#pragma once

#include "hscm/params.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace hscm {

/// Pareto(shape, scale) law of the limiting expected degree Y.
struct ParetoLaw
{
    double shape = 2.0;
    double scale = 1.0;

    double density(double y) const noexcept;
    double mean() const noexcept;
};

/// Mixing law Pareto(gamma, beta nu) of the ensemble; its mean is nu.
ParetoLaw pareto_mixing(const EnsembleParams& p) noexcept;

/// P(Y > y) = (scale / y)^shape for y >= scale, 1 below.
double pareto_tail(const ParetoLaw& law, double y) noexcept;

/// Limiting degree law: mixed Poisson with Pareto(gamma, beta nu) mixing,
/// P(k) = gamma (beta nu)^gamma Gamma(k - gamma, beta nu) / k!.
///
/// Values are memoized; the table is extended under a lock, so concurrent
/// callers (and copies, which share the table) see identical results. With `cross_check` every freshly
/// computed value is compared against the quadrature oracle and a
/// NumericalError is thrown when the two disagree by more than 1e-6.
class DegreeLaw
{
public:
    explicit DegreeLaw(const EnsembleParams& p, bool cross_check = false);

    const EnsembleParams& params() const noexcept { return params_; }
    const ParetoLaw& mixing() const noexcept { return mixing_; }

    double pmf(std::int64_t k) const;

    /// pmf(0..k_max).
    std::vector<double> pmf_table(std::int64_t k_max) const;

    /// Smallest K with gamma (beta nu)^gamma K^{-gamma} / gamma < bound; the
    /// probability mass above K is below that bound.
    std::int64_t normalization_truncation(double bound = 1e-7) const;

    /// sum_{k <= K} k pmf(k) plus the Pareto estimate of the remainder,
    /// gamma (beta nu)^gamma K^{1-gamma} / (gamma - 1).
    double mean(std::int64_t k_max) const;

private:
    void extend(std::int64_t k_max) const;

    struct Memo
    {
        std::mutex mutex;
        std::vector<double> values;
        double gamma_incomplete = 0.0; // Gamma(values.size() - gamma, beta nu)
    };

    EnsembleParams params_;
    ParetoLaw mixing_;
    bool cross_check_;
    double log_prefactor_;
    std::shared_ptr<Memo> memo_; // shared by copies
};

double degree_pmf(const DegreeLaw& law, std::int64_t k);

/// Brute-force E[Y^k e^{-Y} / k!] for Y ~ law, by adaptive quadrature of the
/// log-space integrand; independent of the incomplete-gamma route.
double mixed_poisson_pmf_oracle(const ParetoLaw& law, std::int64_t k);

/// E[D_n] = (n - 1) E[W(X, Y)] with X, Y ~ mu_n, by nested quadrature
/// (relative tolerance 1e-8).
double expected_avg_degree_finite_n(const EnsembleParams& p);

/// (n - 1) omega_n^2, the same expectation for the classical-limit kernel
/// restricted to [0, R_n]^2.
double expected_avg_degree_classical(const EnsembleParams& p);

/// e^{-(gamma-1) R_n} - e^{-2 gamma R_n}.
double finite_size_epsilon(const EnsembleParams& p) noexcept;

/// P(n w^_n(X) > t): 1 below beta nu (1 - eps_n), (beta nu / t)^gamma
/// (1 - eps_n)^gamma up to sqrt(nu n) (1 - eps_n), 0 above.
double finite_size_degree_tail(const EnsembleParams& p, double t);

/// Finite-n mixed-Poisson reference P_n(k) = int Pois(k; kappa_n(x)) d mu_n(x)
/// for k = 0..k_max, with kappa_n the Fermi-Dirac expected-degree function.
std::vector<double> finite_n_degree_pmf(const EnsembleParams& p, std::int64_t k_max);

} // namespace hscm

#pragma once

#include "hscm/sampler.hpp"

#include <cstdint>
#include <vector>

namespace hscm {

/// Soft configuration model with edge probabilities
/// p_ij = 1 / (e^{lambda_i + lambda_j} + 1) and per-node constraints
/// sum_{j != i} p_ij = k_i.
struct ScmInstance
{
    std::int64_t n = 0;
    std::vector<double> expected_degrees;
    std::vector<double> multipliers;
    double residual = 0.0; ///< max_i |k_i - sum_{j != i} p_ij|
    int iterations = 0;

    double edge_probability(std::size_t i, std::size_t j) const;
};

/// sum_{j != i} 1 / (e^{lambda_i + lambda_j} + 1) for every i.
std::vector<double> scm_expected_degrees(const std::vector<double>& multipliers);

struct ScmOptions
{
    double tol = 1e-10;
    int max_iterations = 100000;
    /// Newton polishing with a dense Jacobian is used up to this size.
    std::int64_t newton_limit = 4000;
};

/// Solves for the multipliers. Damped fixed-point sweeps
/// lambda_i += log(s_i / k_i) / 2, with per-coordinate bisection sweeps when
/// the residual oscillates, then Newton steps. Throws DomainError unless
/// 0 < k_i < n - 1, and NumericalError without convergence.
ScmInstance solve_scm(const std::vector<double>& k, const ScmOptions& opt = {});
ScmInstance solve_scm(const std::vector<double>& k, double tol);

/// Freezes HSCM coordinates: lambda_i = x_i, k_i = sum_{j != i} W(x_i, x_j).
ScmInstance hscm_to_scm(const CoordinateSample& c);

} // namespace hscm

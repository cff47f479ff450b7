#pragma once

#include "hscm/graphon.hpp"
#include "hscm/params.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace hscm {

/// sigma = int int H(K(x, y)) d mu_n d mu_n over A_n^2 (nats). The tail
/// below the mu_n-quantile 1e-12 is dropped; relative tolerance 1e-7.
double graphon_entropy(const EnsembleParams& p, KernelKind kind = KernelKind::FermiDirac);

/// int int H(w(x, y)) f(x) f(y) dx dy over [lo, hi]^2 for an arbitrary kernel
/// and density.
double entropy_integral(const std::function<double(double, double)>& kernel,
                        const std::function<double(double)>& density, double lo, double hi, double rel_tol = 1e-8);

struct RescaledEntropy
{
    std::int64_t n;
    double sigma;
    double rescaled; ///< n sigma / log n
};

std::vector<RescaledEntropy> rescaled_entropy_series(double gamma, double nu, const std::vector<std::int64_t>& sizes);

/// Least-squares slope of log|rescaled - nu| against log(log n).
double deviation_slope(const std::vector<RescaledEntropy>& series, double nu);

/// Intervals I_1 = (-inf, rho_1], I_t = (rho_{t-1}, rho_t] with rho_1 = -R_n
/// and equal widths up to rho_m = R_n.
struct PartitionSpec
{
    std::int64_t m = 0;
    std::vector<double> rho; ///< rho_1 .. rho_m

    double width() const noexcept { return m > 1 ? rho[1] - rho[0] : 0.0; }
};

/// m_n = ceil(log(n)^2) + 1 intervals. Requires R_n > 0.
PartitionSpec default_partition(const EnsembleParams& p);

/// Same construction with m intervals (m >= 1; m = 1 is the single box A_n).
PartitionSpec make_partition(const EnsembleParams& p, std::int64_t m);

/// Piecewise-constant average of W over the boxes I_s x I_t.
struct AveragedGraphon
{
    PartitionSpec partition;
    std::vector<double> masses; ///< mu_n(I_t)
    std::vector<double> values; ///< row-major m x m

    double at(std::size_t s, std::size_t t) const { return values[s * masses.size() + t]; }
    /// Interval index containing x.
    std::size_t interval(double x) const;
    double operator()(double x, double y) const { return at(interval(x), interval(y)); }
    /// sigma[W~] = sum_{s,t} mu(I_s) mu(I_t) H(W~_st).
    double entropy() const;
};

AveragedGraphon averaged_graphon(const EnsembleParams& p, const PartitionSpec& part);

/// -sum_t mu_n(I_t) log mu_n(I_t) from exact interval masses.
double membership_entropy(const EnsembleParams& p, const PartitionSpec& part);

struct EntropyReport
{
    EnsembleParams params;
    double sigma = 0.0;
    double sigma_rescaled = 0.0; ///< n sigma / log n
    double sigma_averaged = 0.0; ///< sigma[W~]
    double gibbs_lower = 0.0; ///< C(n, 2) sigma
    double gibbs_upper = 0.0; ///< n S[M] + C(n, 2) sigma[W~]
    double s_m = 0.0;
    PartitionSpec partition;

    /// 2 S / (n log n) for the two bounds.
    double lower_rescaled() const;
    double upper_rescaled() const;
};

EntropyReport gibbs_entropy_bounds(const EnsembleParams& p);
EntropyReport gibbs_entropy_bounds(const EnsembleParams& p, const PartitionSpec& part);

/// Contribution of the region {x < 0 or y < 0} to the graphon entropy.
double negative_region_entropy(const EnsembleParams& p, KernelKind kind = KernelKind::FermiDirac);

/// E|W(X, Y) - W^(X, Y)| and E|H(W) - H(W^)| for X, Y ~ mu_n.
double kernel_l1_gap(const EnsembleParams& p);
double kernel_entropy_gap(const EnsembleParams& p);

enum class PerturbationKind
{
    RankOne, ///< g g^T
    Dense ///< symmetric Gaussian matrix
};

/// Discrete concavity check around W on an N x N grid at mu_n quantiles
/// (i + 1/2) / N with equal weights. Each perturbation is P G P with
/// P = I - 11^T / N (zero row sums, so the expected-degree function is
/// preserved), scaled so that W + eps Delta stays inside (0, 1).
struct MaximalityReport
{
    int trials = 0;
    int grid = 0;
    std::vector<double> epsilons;
    /// decrease[trial][e] = sigma[W] - sigma[W + eps_e Delta].
    std::vector<std::vector<double>> decrease;
    int violations = 0;
    /// decrease(eps_0) / decrease(eps_1) per trial for the first two epsilons.
    std::vector<double> ratios;
    double max_marginal = 0.0; ///< largest |row sum of Delta| seen

    bool all_non_increasing() const noexcept { return violations == 0; }
};

MaximalityReport verify_graphon_maximality(const EnsembleParams& p, int trials, std::uint64_t seed,
                                           std::vector<double> epsilons = {1e-2, 1e-3, -1e-2, -1e-3},
                                           int grid = 200, PerturbationKind kind = PerturbationKind::RankOne);

} // namespace hscm

#include "hscm/scm.hpp"

#include "hscm/error.hpp"
#include "hscm/graphon.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hscm {

double ScmInstance::edge_probability(std::size_t i, std::size_t j) const
{
    if (i == j)
        return 0.0;
    return fermi_dirac_of_sum(multipliers.at(i) + multipliers.at(j));
}

std::vector<double> scm_expected_degrees(const std::vector<double>& multipliers)
{
    const std::size_t n = multipliers.size();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = fermi_dirac_of_sum(multipliers[i] + multipliers[j]);
            s[i] += p;
            s[j] += p;
        }
    }
    return s;
}

namespace {

double max_residual(const std::vector<double>& k, const std::vector<double>& s)
{
    double r = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        r = std::max(r, std::abs(k[i] - s[i]));
    return r;
}

// Degree of node i as a function of its own multiplier.
double row_sum(const std::vector<double>& lambda, std::size_t i, double li)
{
    double s = 0.0;
    for (std::size_t j = 0; j < lambda.size(); ++j)
        if (j != i)
            s += fermi_dirac_of_sum(li + lambda[j]);
    return s;
}

// One Gauss-Seidel sweep solving each coordinate exactly by bisection.
void bisection_sweep(const std::vector<double>& k, std::vector<double>& lambda)
{
    for (std::size_t i = 0; i < k.size(); ++i) {
        double lo = lambda[i] - 1.0;
        double hi = lambda[i] + 1.0;
        while (row_sum(lambda, i, lo) < k[i])
            lo -= 2.0 * (hi - lo);
        while (row_sum(lambda, i, hi) > k[i])
            hi += 2.0 * (hi - lo);
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (row_sum(lambda, i, mid) > k[i])
                lo = mid;
            else
                hi = mid;
        }
        lambda[i] = 0.5 * (lo + hi);
    }
}

bool newton_polish(const std::vector<double>& k, std::vector<double>& lambda, double tol, int& iterations)
{
    const auto n = static_cast<Eigen::Index>(k.size());
    auto s = scm_expected_degrees(lambda);
    double res = max_residual(k, s);
    for (int it = 0; it < 100 && res >= tol; ++it) {
        ++iterations;
        // A = -ds/dlambda: a_ij = p (1 - p), a_ii = sum_j a_ij.
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd rhs(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            rhs(i) = s[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(i)];
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double sum = lambda[static_cast<std::size_t>(i)] + lambda[static_cast<std::size_t>(j)];
                const double v = fermi_dirac_of_sum(sum) * fermi_dirac_of_sum(-sum);
                a(i, j) = v;
                a(j, i) = v;
                a(i, i) += v;
                a(j, j) += v;
            }
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        if (ldlt.info() != Eigen::Success)
            return false;
        const Eigen::VectorXd step = ldlt.solve(rhs);
        if (!step.allFinite())
            return false;
        double t = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            std::vector<double> trial(lambda);
            for (Eigen::Index i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] += t * step(i);
            auto s_trial = scm_expected_degrees(trial);
            const double r_trial = max_residual(k, s_trial);
            if (r_trial < res) {
                lambda = std::move(trial);
                s = std::move(s_trial);
                res = r_trial;
                improved = true;
                break;
            }
        }
        if (!improved)
            return res < tol;
    }
    return res < tol;
}

} // namespace

ScmInstance solve_scm(const std::vector<double>& k, const ScmOptions& opt)
{
    const std::size_t n = k.size();
    if (n < 2)
        throw DomainError("the soft configuration model needs at least two nodes");
    const double top = static_cast<double>(n) - 1.0;
    for (std::size_t i = 0; i < n; ++i)
        if (!(k[i] > 0.0 && k[i] < top))
            throw DomainError("expected degree k[" + std::to_string(i) + "] = " + std::to_string(k[i])
                              + " outside (0, n - 1)");

    ScmInstance inst;
    inst.n = static_cast<std::int64_t>(n);
    inst.expected_degrees = k;

    if (n == 2) {
        if (std::abs(k[0] - k[1]) > opt.tol)
            throw DomainError("two-node instance requires k_1 = k_2");
        const double kk = 0.5 * (k[0] + k[1]);
        const double l = 0.5 * std::log((1.0 - kk) / kk);
        inst.multipliers = {l, l};
        inst.residual = max_residual(k, scm_expected_degrees(inst.multipliers));
        return inst;
    }

    const double total = std::accumulate(k.begin(), k.end(), 0.0);
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i)
        lambda[i] = -std::log(k[i] / std::sqrt(total));

    auto s = scm_expected_degrees(lambda);
    double res = max_residual(k, s);
    int rising = 0;
    bool bisect = false;
    const bool use_newton = static_cast<std::int64_t>(n) <= opt.newton_limit;
    const double handoff = use_newton ? std::max(opt.tol, 1e-4) : opt.tol;
    int it = 0;
    for (; it < opt.max_iterations && res >= handoff; ++it) {
        if (bisect) {
            bisection_sweep(k, lambda);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                lambda[i] += 0.5 * std::log(s[i] / k[i]);
        }
        s = scm_expected_degrees(lambda);
        const double next = max_residual(k, s);
        rising = next > res ? rising + 1 : 0;
        if (rising >= 3)
            bisect = true;
        res = next;
        if (use_newton && it >= 200)
            break;
    }
    inst.iterations = it;
    if (res >= opt.tol && use_newton) {
        if (!newton_polish(k, lambda, opt.tol, inst.iterations)) {
            // Fall back to coordinate sweeps from wherever Newton stopped.
            for (; inst.iterations < opt.max_iterations; ++inst.iterations) {
                bisection_sweep(k, lambda);
                if (max_residual(k, scm_expected_degrees(lambda)) < opt.tol)
                    break;
            }
        }
        s = scm_expected_degrees(lambda);
        res = max_residual(k, s);
    }
    inst.multipliers = std::move(lambda);
    inst.residual = res;
    if (!(res < opt.tol))
        throw NumericalError("soft configuration model solver did not converge: residual "
                             + std::to_string(res) + " after " + std::to_string(inst.iterations) + " iterations");
    return inst;
}

ScmInstance solve_scm(const std::vector<double>& k, double tol)
{
    ScmOptions opt;
    opt.tol = tol;
    return solve_scm(k, opt);
}

ScmInstance hscm_to_scm(const CoordinateSample& c)
{
    if (c.rep != Representation::Exponential)
        throw DomainError("hscm_to_scm expects exponential coordinates");
    ScmInstance inst;
    inst.n = static_cast<std::int64_t>(c.coords.size());
    inst.multipliers = c.coords;
    inst.expected_degrees = scm_expected_degrees(inst.multipliers);
    inst.residual = 0.0;
    return inst;
}

} // namespace hscm

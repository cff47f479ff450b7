#include "hscm/entropy.hpp"

#include "hscm/error.hpp"
#include "hscm/quadrature.hpp"
#include "hscm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hscm {

namespace {

// Lower cut-off of coordinate integrals: the mu_n quantile `mass`.
double lower_cut(const EnsembleParams& p, double mass)
{
    return p.r_n() + std::log(mass) / p.gamma();
}

double entropy_of_sum(KernelKind kind, double s)
{
    return kind == KernelKind::FermiDirac ? fermi_dirac_entropy_of_sum(s) : classical_entropy_of_sum(s);
}

// int int f(x + y) dmu_n(x) dmu_n(y) over [xa, xb] x [ya, yb], split where
// x + y crosses 0 and at x = -R_n, 0.
template <class F>
double integrate_pair(const EnsembleParams& p, F&& f, double xa, double xb, double ya, double yb, double outer_tol,
                      double inner_tol)
{
    const double g = p.gamma();
    const double r = p.r_n();
    auto integrand = [&](double x, double y) { return f(x + y) * g * g * std::exp(g * (x + y - 2.0 * r)); };
    const std::vector<double> outer_breaks{-r, 0.0};
    quad::Options outer;
    outer.rel_tol = outer_tol;
    outer.max_intervals = 10000;
    quad::Options inner;
    inner.rel_tol = inner_tol;
    inner.abs_tol = 1e-300;
    inner.max_intervals = 10000;
    return quad::integrate_2d(
               integrand, xa, xb, std::span<const double>(outer_breaks), [ya](double) { return ya; },
               [yb](double) { return yb; }, [](double x) { return std::vector<double>{-x, 0.0}; }, outer, inner)
        .value;
}

} // namespace

double graphon_entropy(const EnsembleParams& p, KernelKind kind)
{
    const double lo = lower_cut(p, 1e-12);
    const double r = p.r_n();
    return integrate_pair(p, [kind](double s) { return entropy_of_sum(kind, s); }, lo, r, lo, r, 1e-9, 1e-11);
}

double entropy_integral(const std::function<double(double, double)>& kernel,
                        const std::function<double(double)>& density, double lo, double hi, double rel_tol)
{
    auto integrand = [&](double x, double y) { return bernoulli_entropy(kernel(x, y)) * density(x) * density(y); };
    quad::Options outer;
    outer.rel_tol = rel_tol;
    quad::Options inner;
    inner.rel_tol = rel_tol * 1e-2;
    inner.abs_tol = 1e-300;
    return quad::integrate_box(integrand, lo, hi, lo, hi, {}, {}, outer, inner).value;
}

std::vector<RescaledEntropy> rescaled_entropy_series(double gamma, double nu, const std::vector<std::int64_t>& sizes)
{
    std::vector<RescaledEntropy> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i > 0 && sizes[i] <= sizes[i - 1])
            throw DomainError("sizes must be strictly increasing");
        if (sizes[i] < 2)
            throw DomainError("sizes must be at least 2");
        const auto p = derive_params(gamma, nu, sizes[i]);
        const double sigma = graphon_entropy(p);
        const auto n = static_cast<double>(sizes[i]);
        out.push_back({sizes[i], sigma, n * sigma / std::log(n)});
    }
    return out;
}

double deviation_slope(const std::vector<RescaledEntropy>& series, double nu)
{
    if (series.size() < 2)
        throw DomainError("slope needs at least two sizes");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& e : series) {
        const double lx = std::log(std::log(static_cast<double>(e.n)));
        const double ly = std::log(std::abs(e.rescaled - nu));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const auto m = static_cast<double>(series.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

PartitionSpec default_partition(const EnsembleParams& p)
{
    const double l = std::log(static_cast<double>(p.n()));
    return make_partition(p, static_cast<std::int64_t>(std::ceil(l * l)) + 1);
}

PartitionSpec make_partition(const EnsembleParams& p, std::int64_t m)
{
    if (m < 1)
        throw DomainError("partition needs at least one interval");
    const double r = p.r_n();
    if (m > 1 && !(r > 0.0))
        throw DomainError("partition requires R_n > 0");
    PartitionSpec part;
    part.m = m;
    if (m == 1) {
        part.rho = {r};
        return part;
    }
    const double w = 2.0 * r / static_cast<double>(m - 1);
    part.rho.resize(static_cast<std::size_t>(m));
    for (std::int64_t t = 0; t < m; ++t)
        part.rho[static_cast<std::size_t>(t)] = -r + w * static_cast<double>(t);
    part.rho.back() = r;
    return part;
}

namespace {

// mu_n CDF at the interval boundaries: 0, U(rho_1), ..., U(rho_m) = 1.
std::vector<double> cdf_edges(const EnsembleParams& p, const PartitionSpec& part)
{
    std::vector<double> u{0.0};
    for (double rho : part.rho)
        u.push_back(mu_n_cdf(p, rho));
    u.back() = 1.0;
    return u;
}

} // namespace

std::size_t AveragedGraphon::interval(double x) const
{
    const auto& rho = partition.rho;
    const auto it = std::lower_bound(rho.begin(), rho.end(), x);
    if (it == rho.end())
        throw DomainError("coordinate beyond R_n");
    return static_cast<std::size_t>(it - rho.begin());
}

double AveragedGraphon::entropy() const
{
    const std::size_t m = masses.size();
    double total = 0.0;
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = 0; t < m; ++t)
            total += masses[s] * masses[t] * bernoulli_entropy(at(s, t));
    return total;
}

AveragedGraphon averaged_graphon(const EnsembleParams& p, const PartitionSpec& part)
{
    const double g = p.gamma();
    const double r = p.r_n();
    const auto u = cdf_edges(p, part);
    const auto m = static_cast<std::size_t>(part.m);

    AveragedGraphon avg;
    avg.partition = part;
    avg.masses.resize(m);
    for (std::size_t t = 0; t < m; ++t)
        avg.masses[t] = u[t + 1] - u[t];
    avg.values.assign(m * m, 0.0);

    // W in CDF coordinates: x = R_n + log(u) / gamma.
    auto w = [&](double a, double b) { return fermi_dirac_of_sum(2.0 * r + (std::log(a) + std::log(b)) / g); };
    const double cross = std::exp(-2.0 * g * r); // u v at x + y = 0
    quad::Options outer;
    outer.rel_tol = 1e-10;
    outer.max_intervals = 10000;
    quad::Options inner;
    inner.rel_tol = 1e-12;
    inner.abs_tol = 1e-300;
    inner.max_intervals = 10000;
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = s; t < m; ++t) {
            const double ya = u[t];
            const double yb = u[t + 1];
            const std::vector<double> outer_breaks{cross / yb, cross / std::max(ya, 1e-300)};
            const double integral
                = quad::integrate_2d(
                      w, u[s], u[s + 1], std::span<const double>(outer_breaks), [ya](double) { return ya; },
                      [yb](double) { return yb; }, [cross](double a) { return std::vector<double>{cross / a}; },
                      outer, inner)
                      .value;
            double value = integral / (avg.masses[s] * avg.masses[t]);
            value = std::clamp(value, 0.0, 1.0);
            avg.values[s * m + t] = value;
            avg.values[t * m + s] = value;
        }
    }
    return avg;
}

double membership_entropy(const EnsembleParams& p, const PartitionSpec& part)
{
    const auto u = cdf_edges(p, part);
    double total = 0.0;
    for (std::size_t t = 0; t + 1 < u.size(); ++t) {
        const double mass = u[t + 1] - u[t];
        if (mass > 0.0)
            total -= mass * std::log(mass);
    }
    return total;
}

double EntropyReport::lower_rescaled() const
{
    const auto n = static_cast<double>(params.n());
    return 2.0 * gibbs_lower / (n * std::log(n));
}

double EntropyReport::upper_rescaled() const
{
    const auto n = static_cast<double>(params.n());
    return 2.0 * gibbs_upper / (n * std::log(n));
}

EntropyReport gibbs_entropy_bounds(const EnsembleParams& p)
{
    return gibbs_entropy_bounds(p, default_partition(p));
}

EntropyReport gibbs_entropy_bounds(const EnsembleParams& p, const PartitionSpec& part)
{
    const auto n = static_cast<double>(p.n());
    const double pairs = 0.5 * n * (n - 1.0);
    EntropyReport rep{p, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, part};
    rep.sigma = graphon_entropy(p);
    rep.sigma_rescaled = n * rep.sigma / std::log(n);
    rep.sigma_averaged = averaged_graphon(p, part).entropy();
    rep.s_m = membership_entropy(p, part);
    rep.gibbs_lower = pairs * rep.sigma;
    rep.gibbs_upper = n * rep.s_m + pairs * rep.sigma_averaged;
    return rep;
}

double negative_region_entropy(const EnsembleParams& p, KernelKind kind)
{
    if (!(p.r_n() > 0.0))
        throw DomainError("negative-region entropy requires R_n > 0");
    const double lo = lower_cut(p, 1e-15);
    const double r = p.r_n();
    auto h = [kind](double s) { return entropy_of_sum(kind, s); };
    // {x < 0} x A_n plus {x >= 0} x {y < 0}
    return integrate_pair(p, h, lo, 0.0, lo, r, 1e-9, 1e-11) + integrate_pair(p, h, 0.0, r, lo, 0.0, 1e-9, 1e-11);
}

double kernel_l1_gap(const EnsembleParams& p)
{
    const double lo = lower_cut(p, 1e-15);
    auto gap = [](double s) {
        if (s > 0.0) {
            const double e = std::exp(-s);
            return e * e / (1.0 + e);
        }
        return fermi_dirac_of_sum(-s);
    };
    return integrate_pair(p, gap, lo, p.r_n(), lo, p.r_n(), 1e-9, 1e-11);
}

double kernel_entropy_gap(const EnsembleParams& p)
{
    const double lo = lower_cut(p, 1e-15);
    auto gap = [](double s) {
        const double q = std::exp(-s);
        if (s <= 0.0 || q > 1e-3)
            return std::abs(fermi_dirac_entropy_of_sum(s) - classical_entropy_of_sum(s));
        // H(W^) - H(W) = s q^2 / (1 + q) - q^3 / 2 + q^4 / 6 - q^5 / 4 + ...
        const double q2 = q * q;
        return s * q2 / (1.0 + q) - q2 * q * (0.5 - q * (1.0 / 6.0 - q * (0.25 - q * 2.0 / 15.0)));
    };
    return integrate_pair(p, gap, lo, p.r_n(), lo, p.r_n(), 1e-9, 1e-11);
}

namespace {

// (1 + r) log(1 + r) - r, accurate for small |r|.
double phi(double r)
{
    if (std::abs(r) < 1e-4)
        return r * r * (0.5 - r * (1.0 / 6.0 - r * (1.0 / 12.0 - r / 20.0)));
    return (1.0 + r) * std::log1p(r) - r;
}

} // namespace

MaximalityReport verify_graphon_maximality(const EnsembleParams& p, int trials, std::uint64_t seed,
                                           std::vector<double> epsilons, int grid, PerturbationKind kind)
{
    if (trials < 1)
        throw DomainError("trials must be at least 1");
    if (grid < 2)
        throw DomainError("grid must have at least two points");
    const auto n = static_cast<std::size_t>(grid);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = mu_n_quantile(p, (static_cast<double>(i) + 0.5) / static_cast<double>(n));
    std::vector<double> w(n * n), wc(n * n), s(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s[i * n + j] = x[i] + x[j];
            w[i * n + j] = fermi_dirac_of_sum(s[i * n + j]);
            wc[i * n + j] = fermi_dirac_of_sum(-s[i * n + j]);
        }
    }

    MaximalityReport rep;
    rep.trials = trials;
    rep.grid = grid;
    rep.epsilons = epsilons;
    std::vector<double> delta(n * n);
    const double weight = 1.0 / static_cast<double>(n * n);
    for (int trial = 0; trial < trials; ++trial) {
        rng::Stream stream(seed, rng::Domain::Perturbation, static_cast<std::uint32_t>(trial));
        if (kind == PerturbationKind::RankOne) {
            std::vector<double> h(n);
            double mean = 0.0;
            for (auto& v : h) {
                v = stream.normal();
                mean += v;
            }
            mean /= static_cast<double>(n);
            for (auto& v : h)
                v -= mean;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    delta[i * n + j] = h[i] * h[j];
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    delta[i * n + j] = delta[j * n + i] = stream.normal();
            std::vector<double> row(n, 0.0);
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j)
                    row[i] += delta[i * n + j];
                total += row[i];
                row[i] /= static_cast<double>(n);
            }
            total /= static_cast<double>(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    delta[i * n + j] += total - row[i] - row[j];
        }
        double scale = 0.0;
        for (std::size_t k = 0; k < n * n; ++k)
            scale = std::max(scale, std::abs(delta[k]) / std::min(w[k], wc[k]));
        if (scale > 0.0)
            for (auto& d : delta)
                d /= scale;
        double dmax = 0.0;
        for (double d : delta)
            dmax = std::max(dmax, std::abs(d));
        for (std::size_t i = 0; i < n && dmax > 0.0; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                row += delta[i * n + j];
            rep.max_marginal = std::max(rep.max_marginal, std::abs(row) / dmax);
        }

        std::vector<double> dec;
        for (double eps : epsilons) {
            // H(w) - H(w + d) = -d s + w phi(d / w) + (1 - w) phi(-d / (1 - w)),
            // where s = log((1 - w) / w) = x_i + x_j.
            double first = 0.0;
            double second = 0.0;
            for (std::size_t k = 0; k < n * n; ++k) {
                const double d = eps * delta[k];
                first -= d * s[k];
                second += w[k] * phi(d / w[k]) + wc[k] * phi(-d / wc[k]);
            }
            const double value = (first + second) * weight;
            if (value < 0.0)
                ++rep.violations;
            dec.push_back(value);
        }
        if (dec.size() >= 2 && dec[1] != 0.0)
            rep.ratios.push_back(dec[0] / dec[1]);
        rep.decrease.push_back(std::move(dec));
    }
    return rep;
}

} // namespace hscm

#include "hscm/theory.hpp"

#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/quadrature.hpp"
#include "hscm/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace hscm {

double ParetoLaw::density(double y) const noexcept
{
    if (y < scale)
        return 0.0;
    return shape * std::pow(scale, shape) * std::pow(y, -shape - 1.0);
}

double ParetoLaw::mean() const noexcept
{
    return shape * scale / (shape - 1.0);
}

ParetoLaw pareto_mixing(const EnsembleParams& p) noexcept
{
    return {p.gamma(), p.pareto_scale()};
}

double pareto_tail(const ParetoLaw& law, double y) noexcept
{
    if (y <= law.scale)
        return 1.0;
    return std::pow(law.scale / y, law.shape);
}

namespace {

// Above this first argument the regularized-gamma form is used instead of
// the upward recurrence.
constexpr double kRecurrenceLimit = 30.0;

} // namespace

DegreeLaw::DegreeLaw(const EnsembleParams& p, bool cross_check)
    : params_(p),
      mixing_(pareto_mixing(p)),
      cross_check_(cross_check),
      log_prefactor_(std::log(p.gamma()) + p.gamma() * std::log(p.pareto_scale())),
      memo_(std::make_shared<Memo>())
{
}

void DegreeLaw::extend(std::int64_t k_max) const
{
    const double g = params_.gamma();
    const double x = mixing_.scale;
    auto& values = memo_->values;
    if (values.empty())
        memo_->gamma_incomplete = special::upper_gamma_quadrature(-g, x);
    values.reserve(static_cast<std::size_t>(k_max) + 1);
    for (auto k = static_cast<std::int64_t>(values.size()); k <= k_max; ++k) {
        const double a = static_cast<double>(k) - g;
        const double log_kfact = special::log_factorial(k);
        double value;
        if (a <= kRecurrenceLimit) {
            double& upper = memo_->gamma_incomplete;
            if (!(upper > 0.0) || !std::isfinite(upper))
                throw NumericalError("incomplete gamma recurrence lost positivity at k = " + std::to_string(k));
            value = std::exp(log_prefactor_ + std::log(upper) - log_kfact);
            upper = a * upper + std::exp(a * std::log(x) - x);
        } else {
            value = std::exp(log_prefactor_ + std::lgamma(a) - log_kfact) * special::regularized_upper_gamma(a, x);
        }
        if (cross_check_) {
            const double oracle = mixed_poisson_pmf_oracle(mixing_, k);
            if (std::abs(value - oracle) > 1e-6 * std::max(oracle, 1e-300))
                throw NumericalError("degree pmf routes disagree at k = " + std::to_string(k) + ": "
                                     + std::to_string(value) + " vs " + std::to_string(oracle));
        }
        values.push_back(value);
    }
}

double DegreeLaw::pmf(std::int64_t k) const
{
    if (k < 0)
        throw DomainError("degree must be non-negative");
    std::lock_guard lock(memo_->mutex);
    if (static_cast<std::int64_t>(memo_->values.size()) <= k)
        extend(k);
    return memo_->values[static_cast<std::size_t>(k)];
}

std::vector<double> DegreeLaw::pmf_table(std::int64_t k_max) const
{
    if (k_max < 0)
        throw DomainError("k_max must be non-negative");
    std::lock_guard lock(memo_->mutex);
    if (static_cast<std::int64_t>(memo_->values.size()) <= k_max)
        extend(k_max);
    return {memo_->values.begin(), memo_->values.begin() + k_max + 1};
}

std::int64_t DegreeLaw::normalization_truncation(double bound) const
{
    if (!(bound > 0.0))
        throw DomainError("truncation bound must be positive");
    const double g = params_.gamma();
    // gamma s^gamma K^{-gamma} / gamma = (s / K)^gamma < bound
    const double k = mixing_.scale * std::pow(bound, -1.0 / g);
    return static_cast<std::int64_t>(std::floor(k)) + 1;
}

double DegreeLaw::mean(std::int64_t k_max) const
{
    const auto table = pmf_table(k_max);
    double sum = 0.0;
    for (std::size_t k = table.size(); k-- > 1;)
        sum += static_cast<double>(k) * table[k];
    const double g = params_.gamma();
    const double remainder
        = std::exp(log_prefactor_ + (1.0 - g) * std::log(static_cast<double>(k_max))) / (g - 1.0);
    return sum + remainder;
}

double degree_pmf(const DegreeLaw& law, std::int64_t k)
{
    return law.pmf(k);
}

double mixed_poisson_pmf_oracle(const ParetoLaw& law, std::int64_t k)
{
    if (k < 0)
        throw DomainError("degree must be non-negative");
    const double g = law.shape;
    const double s = law.scale;
    const double kd = static_cast<double>(k);
    const double log_const = std::log(g) + g * std::log(s) - std::lgamma(kd + 1.0);
    const double a = kd - g - 1.0; // exponent of y in y^k e^{-y} y^{-gamma-1}
    auto log_f = [&](double y) { return a * std::log(y) - y; };

    const double peak = std::max(s, a);
    const double width = std::sqrt(std::max(a, 1.0));
    const double log_peak = log_f(peak);
    const double top = peak + 60.0 * width + 60.0;

    std::vector<double> breaks;
    for (double m : {1.0, 4.0, 10.0, 25.0}) {
        breaks.push_back(peak - m * width);
        breaks.push_back(peak + m * width);
    }
    breaks.push_back(peak);

    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.max_intervals = 20000;
    auto body = [&](double y) { return std::exp(log_f(y) - log_peak); };
    double total = quad::integrate(body, s, top, std::span<const double>(breaks), opt).value;
    // Remaining tail through y = top + v / (1 - v).
    auto tail = [&](double v) {
        const double d = 1.0 - v;
        return std::exp(log_f(top + v / d) - log_peak) / (d * d);
    };
    opt.abs_tol = total * 1e-15;
    total += quad::integrate(tail, 0.0, 1.0, opt).value;
    return std::exp(log_const + log_peak) * total;
}

double expected_avg_degree_finite_n(const EnsembleParams& p)
{
    if (p.n() < 2)
        return 0.0;
    const double g = p.gamma();
    const double r = p.r_n();
    auto outer = [&](double u) { return connection_mean(p, r + std::log(u) / g); };
    std::vector<double> breaks;
    if (r > 0.0) {
        breaks.push_back(std::exp(-2.0 * g * r)); // x = -R_n
        breaks.push_back(std::exp(-g * r)); // x = 0
    }
    quad::Options opt;
    opt.rel_tol = 1e-9;
    const double mean_w = quad::integrate(outer, 0.0, 1.0, std::span<const double>(breaks), opt).value;
    return static_cast<double>(p.n() - 1) * mean_w;
}

double expected_avg_degree_classical(const EnsembleParams& p)
{
    const double w = omega_n(p);
    return static_cast<double>(p.n() - 1) * w * w;
}

double finite_size_epsilon(const EnsembleParams& p) noexcept
{
    const double r = p.r_n();
    return std::exp(-(p.gamma() - 1.0) * r) - std::exp(-2.0 * p.gamma() * r);
}

double finite_size_degree_tail(const EnsembleParams& p, double t)
{
    if (!(t > 0.0))
        throw DomainError("finite_size_degree_tail requires t > 0");
    const double shrink = 1.0 - finite_size_epsilon(p);
    const double lo = p.pareto_scale() * shrink;
    const double hi = std::sqrt(p.nu() * static_cast<double>(p.n())) * shrink;
    if (t < lo)
        return 1.0;
    if (t > hi)
        return 0.0;
    return std::pow(p.pareto_scale() / t, p.gamma()) * std::pow(shrink, p.gamma());
}

std::vector<double> finite_n_degree_pmf(const EnsembleParams& p, std::int64_t k_max)
{
    if (k_max < 0)
        throw DomainError("k_max must be non-negative");
    using K = quad::Kronrod15;
    const double g = p.gamma();
    const double r = p.r_n();
    const double lo = r + std::log(1e-12) / g;
    const auto panels = static_cast<int>(std::ceil((r - lo) / 0.01));
    const double h = (r - lo) / panels;

    std::vector<double> log_fact(static_cast<std::size_t>(k_max) + 1);
    for (std::int64_t k = 0; k <= k_max; ++k)
        log_fact[static_cast<std::size_t>(k)] = special::log_factorial(k);

    std::vector<double> pmf(static_cast<std::size_t>(k_max) + 1, 0.0);
    auto accumulate = [&](double x, double weight) {
        const double lambda = expected_degree_fn(p, x, KernelKind::FermiDirac);
        const double w = weight * mu_n_density(p, x);
        const double log_lambda = std::log(lambda);
        for (std::int64_t k = 0; k <= k_max; ++k) {
            const double kd = static_cast<double>(k);
            pmf[static_cast<std::size_t>(k)]
                += w * std::exp(kd * log_lambda - lambda - log_fact[static_cast<std::size_t>(k)]);
        }
    };
    for (int i = 0; i < panels; ++i) {
        const double a = lo + i * h;
        const double centre = a + 0.5 * h;
        const double half = 0.5 * h;
        accumulate(centre, half * K::kronrod_weights[7]);
        for (std::size_t j = 0; j < 7; ++j) {
            accumulate(centre - half * K::nodes[j], half * K::kronrod_weights[j]);
            accumulate(centre + half * K::nodes[j], half * K::kronrod_weights[j]);
        }
    }
    return pmf;
}

} // namespace hscm

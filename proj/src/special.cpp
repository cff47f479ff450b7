#include "hscm/special.hpp"

#include "hscm/error.hpp"
#include "hscm/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

namespace hscm::special {

double upper_gamma_quadrature(double a, double x)
{
    if (!(x > 0.0))
        throw DomainError("upper incomplete gamma requires x > 0");
    // t = x (1 + v), then w = 1 - e^{-x v} turns the tail into (0, 1).
    auto f = [a, x](double w) { return std::pow(1.0 - std::log1p(-w) / x, a - 1.0); };
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.max_intervals = 20000;
    const double integral = quad::integrate(f, 0.0, 1.0, opt).value;
    return std::exp((a - 1.0) * std::log(x) - x) * integral;
}

double regularized_upper_gamma(double a, double x)
{
    if (!(a > 0.0) || x < 0.0)
        throw DomainError("regularized gamma requires a > 0 and x >= 0");
    if (x == 0.0)
        return 1.0;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    constexpr double eps = 1e-17;
    if (x < a + 1.0) {
        // P(a, x) = x^a e^{-x} / Gamma(a + 1) * sum_k x^k / ((a+1)...(a+k))
        double term = 1.0 / a;
        double sum = term;
        for (int k = 1; k < 100000; ++k) {
            term *= x / (a + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps)
                return -std::expm1(log_prefactor + std::log(sum));
        }
        throw NumericalError("regularized gamma series did not converge");
    }
    // Modified Lentz evaluation of the continued fraction for Q(a, x).
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps)
            return std::exp(log_prefactor) * h;
    }
    throw NumericalError("regularized gamma continued fraction did not converge");
}

double hurwitz_zeta(double s, double q)
{
    if (!(s > 1.0) || !(q > 0.0))
        throw DomainError("Hurwitz zeta requires s > 1 and q > 0");
    constexpr int direct = 24;
    double sum = 0.0;
    for (int k = 0; k < direct; ++k)
        sum += std::pow(k + q, -s);
    const double m = q + direct;
    // Tail via Euler-Maclaurin with Bernoulli numbers B2..B12.
    sum += std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
    constexpr std::array<double, 6> bernoulli = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                                 -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double rising = s; // s (s+1) ... (s + 2j - 2)
    double fact = 2.0; // (2j)!
    double mpow = std::pow(m, -s - 1.0);
    for (int j = 1; j <= 6; ++j) {
        sum += bernoulli[j - 1] / fact * rising * mpow;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        mpow /= m * m;
    }
    return sum;
}

double log_factorial(long long k)
{
    if (k < 0)
        throw DomainError("log_factorial requires k >= 0");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

} // namespace hscm::special

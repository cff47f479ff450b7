#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/theory.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <thread>

using namespace hscm;

namespace {

double expected_avg_degree_reference(const EnsembleParams& p)
{
    return (double)(oracle::pair_sum_mean(p, oracle::fd) * (long double)(p.n() - 1));
}

} // namespace

TEST_CASE("Pareto tail")
{
    const ParetoLaw law{2.0, 5.0};
    CHECK(pareto_tail(law, 10.0) == doctest::Approx(0.25));
    CHECK(pareto_tail(law, 5.0) == 1.0);
    CHECK(pareto_tail(law, 1.0) == 1.0);
    const auto mix = pareto_mixing(derive_params(1.1, 4.92, 100));
    CHECK(mix.mean() == doctest::Approx(4.92).epsilon(1e-14));
    const auto mass = oracle::integrate([&](long double y) { return (long double)mix.density((double)y); },
                                        (long double)mix.scale, std::numeric_limits<long double>::infinity(), 1e-12L);
    CHECK((double)mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degree pmf at k = 0 against the mixing integral")
{
    const DegreeLaw law(derive_params(2.0, 10.0, 1000));
    const auto ref = oracle::integrate([](long double t) { return 50.0L * std::pow(t, -3.0L) * std::exp(-t); }, 5.0L,
                                       std::numeric_limits<long double>::infinity());
    CHECK(law.pmf(0) == doctest::Approx((double)ref).epsilon(1e-12));
}

TEST_CASE("closed form and quadrature oracle agree")
{
    for (auto [g, nu] : {std::pair{1.1, 4.92}, std::pair{2.0, 10.0}, std::pair{3.5, 2.0}}) {
        const DegreeLaw law(derive_params(g, nu, 1000));
        for (std::int64_t k = 0; k <= 100; ++k) {
            const double oracle_value = mixed_poisson_pmf_oracle(law.mixing(), k);
            CHECK(std::abs(law.pmf(k) - oracle_value) <= 1e-8 * oracle_value);
        }
    }
}

TEST_CASE("cross-checked law computes the same table")
{
    const auto p = derive_params(2.0, 10.0, 1000);
    const auto plain = DegreeLaw(p).pmf_table(120);
    CHECK(DegreeLaw(p, true).pmf_table(120) == plain);
}

TEST_CASE("power-law tail of the pmf")
{
    const DegreeLaw law(derive_params(2.0, 10.0, 1000));
    const double k = 1000.0;
    const double ratio = law.pmf(1000) / (2.0 * 25.0 * std::pow(k, -3.0));
    CHECK(std::abs(ratio - 1.0) <= 0.02);
    const double far = law.pmf(10000);
    CHECK(std::isfinite(far));
    CHECK(mixed_poisson_pmf_oracle(law.mixing(), 10000) == doctest::Approx(far).epsilon(1e-8));
}

TEST_CASE("normalization and mean")
{
    const DegreeLaw law(derive_params(2.0, 10.0, 1000));
    CHECK(law.normalization_truncation() == 15812);
    const auto table = law.pmf_table(100000);
    double total = 0.0;
    for (double v : table) {
        CHECK_UNARY(v >= 0.0);
        total += v;
    }
    CHECK(std::abs(total - 1.0) <= 1e-6);
    CHECK(std::abs(law.mean(100000) - 10.0) <= 1e-4);
    CHECK_THROWS_AS(law.pmf(-1), DomainError);
}

TEST_CASE("memo table is shared safely")
{
    const DegreeLaw law(derive_params(1.5, 3.0, 1000));
    std::vector<double> a, b;
    std::thread t1([&] { a = law.pmf_table(400); });
    const DegreeLaw copy = law;
    std::thread t2([&] { b = copy.pmf_table(300); });
    t1.join();
    t2.join();
    b.resize(401);
    for (std::size_t k = 301; k <= 400; ++k)
        b[k] = copy.pmf(static_cast<std::int64_t>(k));
    CHECK(a == b);
    CHECK(a == DegreeLaw(derive_params(1.5, 3.0, 1000)).pmf_table(400));
}

TEST_CASE("finite-n expected average degree against the one-dimensional reduction")
{
    for (auto [g, nu] : {std::pair{2.0, 10.0}, std::pair{1.1, 4.92}, std::pair{3.0, 5.0}})
        for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
            const auto p = derive_params(g, nu, n);
            CHECK(expected_avg_degree_finite_n(p) == doctest::Approx(expected_avg_degree_reference(p)).epsilon(1e-8));
        }
}

TEST_CASE("finite-n expected average degree, gamma = 2, nu = 10")
{
    CHECK(std::abs(expected_avg_degree_finite_n(derive_params(2.0, 10.0, 10000)) - 9.96) <= 0.05);
    CHECK(std::abs(expected_avg_degree_finite_n(derive_params(2.0, 10.0, 100000)) - 9.98) <= 0.05);
    CHECK(std::abs(expected_avg_degree_finite_n(derive_params(2.0, 10.0, 1000000)) - 10.0) <= 0.05);
}

TEST_CASE("finite-n expected average degree, gamma = 1.1, nu = 4.92")
{
    double prev = 0.0;
    const double targets[] = {1.73, 2.16, 2.51};
    int i = 0;
    for (std::int64_t n : {10000, 100000, 1000000}) {
        const double v = expected_avg_degree_finite_n(derive_params(1.1, 4.92, n));
        CHECK(std::abs(v - targets[i++]) <= 0.05);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("classical closed form tracks the Fermi-Dirac value")
{
    std::vector<double> gaps;
    for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
        const auto p = derive_params(2.0, 10.0, n);
        const double w = omega_n(p);
        const double closed = (n - 1.0) / (p.beta() * p.beta()) * std::exp(-2.0 * p.r_n())
                              * std::pow(1.0 - std::exp(-(p.gamma() - 1.0) * p.r_n()), 2.0);
        CHECK(expected_avg_degree_classical(p) == doctest::Approx((n - 1.0) * w * w).epsilon(1e-14));
        CHECK(expected_avg_degree_classical(p) == doctest::Approx(closed).epsilon(1e-13));
        gaps.push_back(std::abs(expected_avg_degree_finite_n(p) - expected_avg_degree_classical(p)));
    }
    for (std::size_t i = 1; i < gaps.size(); ++i)
        CHECK(gaps[i] < gaps[i - 1]);
    // n^{-1/2} up to a logarithmic factor
    const double slope = std::log10(gaps[3] / gaps[2]);
    CHECK(slope <= -0.35);
    CHECK(slope >= -0.75);
}

TEST_CASE("finite-size tail of the expected degree")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    const double eps = finite_size_epsilon(p);
    CHECK(eps == doctest::Approx(std::exp(-p.r_n()) - std::exp(-4.0 * p.r_n())).epsilon(1e-14));
    CHECK(eps == doctest::Approx(0.015811).epsilon(1e-4));
    CHECK(finite_size_degree_tail(p, 10.0) == doctest::Approx(0.24215).epsilon(1e-4));
    CHECK(finite_size_degree_tail(p, 4.0) == 1.0);
    CHECK(finite_size_degree_tail(p, 400.0) == 0.0);
    CHECK_THROWS_AS(finite_size_degree_tail(p, 0.0), DomainError);

    // the tail approaches the Pareto tail uniformly
    for (std::int64_t n : {1000, 100000, 10000000}) {
        const auto q = derive_params(2.0, 10.0, n);
        const double bound = 1.0 - std::pow(1.0 - finite_size_epsilon(q), q.gamma());
        const auto law = pareto_mixing(q);
        double sup = 0.0;
        for (double t = 1.0; t < 4.0 * std::sqrt(10.0 * n); t *= 1.01)
            sup = std::max(sup, std::abs(finite_size_degree_tail(q, t) - pareto_tail(law, t)));
        CHECK(sup <= bound);
    }
}

TEST_CASE("finite-n degree pmf")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    const auto pmf = finite_n_degree_pmf(p, 100);
    double total = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        total += pmf[k];
        mean += k * pmf[k];
    }
    CHECK(total <= 1.0);
    CHECK(total > 0.99);
    // matches the Poisson mixture computed by brute force at a few k
    for (std::int64_t k : {0, 5, 10, 40}) {
        auto f = [&](long double u) {
            const double x = p.r_n() + std::log((double)u) / p.gamma();
            const double lam = expected_degree_fn(p, x, KernelKind::FermiDirac);
            return std::exp(k * std::log(lam) - lam - std::lgamma(k + 1.0));
        };
        const auto ref = oracle::integrate(f, 1e-12L, 1.0L, 1e-10L);
        CHECK(pmf[static_cast<std::size_t>(k)] == doctest::Approx((double)ref).epsilon(1e-6));
    }
}

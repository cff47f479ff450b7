#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/params.hpp"
#include "hscm/rng.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hscm;

TEST_CASE("derive_params examples")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    CHECK(p.r_n() == doctest::Approx(4.147023).epsilon(1e-6));
    CHECK(std::abs(std::exp(2.0 * p.r_n()) * 2.5 / 1e4 - 1.0) < 1e-12);
    CHECK(p.beta() == 0.5);
    CHECK(p.alpha() == 3.0);
    CHECK(p.delta() == 5.0);

    CHECK(derive_params(2.0, 4.0, 1).r_n() == 0.0);

    const auto q = derive_params(1.1, 4.92, 10000);
    CHECK(q.beta() == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
    const double direct = 0.5 * std::log(1e4 / (q.beta() * q.beta() * 4.92));
    CHECK(q.r_n() == doctest::Approx(direct).epsilon(1e-14));
    CHECK(q.r_n() == doctest::Approx(6.2064).epsilon(1e-4));
    const auto mass = oracle::integrate([&](long double x) { return (long double)mu_n_density(q, (double)x); },
                                        -200.0L, (long double)q.r_n());
    CHECK(std::abs((double)mass - 1.0) < 1e-10);
}

TEST_CASE("derive_params rejects invalid input")
{
    CHECK_THROWS_AS(derive_params(1.0, 10.0, 10), DomainError);
    CHECK_THROWS_AS(derive_params(0.5, 10.0, 10), DomainError);
    CHECK_THROWS_AS(derive_params(2.0, 0.0, 10), DomainError);
    CHECK_THROWS_AS(derive_params(2.0, -1.0, 10), DomainError);
    CHECK_THROWS_AS(derive_params(2.0, 10.0, 0), DomainError);
    CHECK_THROWS_AS(derive_params(std::nan(""), 10.0, 10), DomainError);
}

TEST_CASE("mu_n density")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    CHECK(mu_n_density(p, p.r_n()) == doctest::Approx(2.0));
    CHECK(mu_n_density(p, p.r_n() - 1.0) == doctest::Approx(0.270671).epsilon(1e-6));
    CHECK(mu_n_density(p, p.r_n() + 1e-9) == 0.0);
    const auto mass = oracle::integrate([&](long double x) { return (long double)mu_n_density(p, (double)x); },
                                        -100.0L, (long double)p.r_n());
    CHECK(std::abs((double)mass - 1.0) < 1e-10);
    CHECK(mu_n_log_density(p, -1e4) == doctest::Approx(std::log(2.0) + 2.0 * (-1e4 - p.r_n())));
}

TEST_CASE("mu_n quantile")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    CHECK(mu_n_quantile(p, 1.0) == p.r_n());
    CHECK(mu_n_quantile(p, std::exp(-2.0)) == doctest::Approx(p.r_n() - 1.0).epsilon(1e-14));
    CHECK_THROWS_AS(mu_n_quantile(p, 0.0), DomainError);
    CHECK_THROWS_AS(mu_n_quantile(p, 1.0 + 1e-12), DomainError);
    CHECK_THROWS_AS(mu_n_quantile(p, -0.5), DomainError);

    double worst = 0.0;
    for (std::uint32_t i = 0; i < 10000; ++i) {
        const double u = rng::to_unit_open0(rng::hash_bits(1, rng::Domain::Test, i, 0));
        worst = std::max(worst, std::abs(mu_n_cdf(p, mu_n_quantile(p, u)) - u));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("quantile samples follow the analytic CDF")
{
    const auto p = derive_params(1.5, 4.0, 5000);
    std::vector<double> xs;
    for (std::uint32_t i = 0; i < 100000; ++i)
        xs.push_back(mu_n_quantile(p, rng::to_unit_open0(rng::hash_bits(3, rng::Domain::Test, i, 0))));
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = std::exp(p.gamma() * (xs[i] - p.r_n()));
        ks = std::max({ks, std::abs(f - i / m), std::abs(f - (i + 1) / m)});
    }
    CHECK(ks <= 0.01);
}

TEST_CASE("coordinate conversions")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    using R = Representation;
    CHECK(convert_coordinate(p, p.r_n(), R::Exponential, R::UnitInterval) == doctest::Approx(1.0));
    CHECK(convert_coordinate(p, p.r_n(), R::Exponential, R::Pareto) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK_THROWS_AS(convert_coordinate(p, p.r_n() + 0.1, R::Exponential, R::Pareto), DomainError);
    CHECK_THROWS_AS(convert_coordinate(p, 0.0, R::UnitInterval, R::Exponential), DomainError);
    CHECK_THROWS_AS(convert_coordinate(p, 4.0, R::Pareto, R::Exponential), DomainError);

    const R reps[] = {R::Exponential, R::UnitInterval, R::Pareto};
    double worst = 0.0;
    for (std::uint32_t i = 0; i < 1000; ++i) {
        const double x = mu_n_quantile(p, rng::to_unit_open0(rng::hash_bits(5, rng::Domain::Test, i, 0)));
        for (R a : reps) {
            const double xa = convert_coordinate(p, x, R::Exponential, a);
            for (R b : reps) {
                const double xb = convert_coordinate(p, xa, a, b);
                const double back = convert_coordinate(p, convert_coordinate(p, xb, b, a), a, R::Exponential);
                worst = std::max(worst, std::abs(back - x) / std::max(1.0, std::abs(x)));
            }
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("conversions preserve connection probabilities")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    using R = Representation;
    double worst_unit = 0.0, worst_pareto = 0.0;
    for (std::uint32_t i = 0; i < 1000; ++i) {
        const double x = mu_n_quantile(p, rng::to_unit_open0(rng::hash_bits(6, rng::Domain::Test, i, 0)));
        const double y = mu_n_quantile(p, rng::to_unit_open0(rng::hash_bits(6, rng::Domain::Test, i, 1)));
        const double w = w_fermi_dirac(x, y);
        worst_unit = std::max(worst_unit, std::abs(w - w_unit_interval(p, convert_coordinate(p, x, R::Exponential, R::UnitInterval),
                                                                      convert_coordinate(p, y, R::Exponential, R::UnitInterval))));
        worst_pareto = std::max(worst_pareto, std::abs(w - w_pareto(p, convert_coordinate(p, x, R::Exponential, R::Pareto),
                                                                  convert_coordinate(p, y, R::Exponential, R::Pareto))));
    }
    CHECK(worst_unit <= 1e-12);
    CHECK(worst_pareto <= 1e-12);
}

TEST_CASE("negative half-line mass")
{
    for (double g : {1.5, 2.0, 3.0}) {
        const auto p = derive_params(g, 10.0, 100000);
        const double closed = std::pow(p.beta() * p.beta() * 10.0 / 1e5, g / 2.0);
        CHECK(mu_n_negative_mass(p) == doctest::Approx(closed).epsilon(1e-12));
        const auto quad = oracle::integrate([&](long double x) { return (long double)mu_n_density(p, (double)x); },
                                            -60.0L, 0.0L);
        CHECK(std::abs((double)quad - closed) < 1e-10);
        CHECK(mu_n_cdf(p, 0.0) == doctest::Approx(closed).epsilon(1e-12));
    }
}

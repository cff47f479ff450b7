#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/sampler.hpp"
#include "hscm/stats.hpp"
#include "hscm/theory.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace hscm;

namespace {

struct Moments
{
    double sum = 0.0, sq = 0.0;
    int count = 0;

    void add(double v)
    {
        sum += v;
        sq += v * v;
        ++count;
    }
    double mean() const { return sum / count; }
    double se() const { return std::sqrt((sq / count - mean() * mean()) / (count - 1.0)); }
};

CoordinateSample fixed_coords(const EnsembleParams& p, std::vector<double> xs)
{
    return CoordinateSample{p, Representation::Exponential, std::move(xs), 0};
}

bool is_canonical(const Graph& g)
{
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto [u, v] = g.edges[i];
        if (!(u < v) || v >= g.n)
            return false;
        if (i > 0 && !(g.edges[i - 1] < g.edges[i]))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("coordinates are reproducible and prefix-stable")
{
    const auto p = derive_params(2.0, 10.0, 1000);
    const auto a = sample_coordinates(p, 5);
    const auto b = sample_coordinates(p, 5);
    CHECK(a.coords == b.coords);
    CHECK(a.coords != sample_coordinates(p, 6).coords);
    for (double x : a.coords)
        CHECK(x <= p.r_n());
    const auto unit = sample_coordinates(p, 5, Representation::UnitInterval);
    for (std::size_t i = 0; i < unit.coords.size(); ++i)
        CHECK(unit.coords[i] == doctest::Approx(std::exp(2.0 * (a.coords[i] - p.r_n()))).epsilon(1e-12));
    const auto back = exponential_coords(unit);
    for (std::size_t i = 0; i < back.size(); ++i)
        CHECK(back[i] == doctest::Approx(a.coords[i]).epsilon(1e-10));
}

TEST_CASE("fraction of negative coordinates")
{
    const auto p = derive_params(2.0, 10.0, 100000);
    const double mass = mu_n_negative_mass(p);
    double negatives = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s)
        for (double x : sample_coordinates(p, 1000 + s).coords)
            negatives += x < 0.0;
    const double draws = seeds * 1e5;
    CHECK(std::abs(negatives / draws - mass) <= 3.0 * std::sqrt(mass * (1.0 - mass) / draws));
}

TEST_CASE("mean classical expected degree of sampled nodes")
{
    const auto p = derive_params(2.0, 10.0, 100000);
    const auto c = sample_coordinates(p, 77);
    Moments m;
    for (double x : c.coords)
        m.add(expected_degree_fn(p, x, KernelKind::ClassicalLimit));
    const double w = omega_n(p);
    CHECK(std::abs(m.mean() - p.n() * w * w) <= 3.0 * m.se());
}

TEST_CASE("naive sampler on a single pair")
{
    const auto p = derive_params(2.0, 10.0, 10);
    const auto c = fixed_coords(p, {p.r_n(), p.r_n()});
    const double prob = 1.0 / (10.0 / 2.5 + 1.0);
    int hits = 0;
    const int trials = 20000;
    for (int s = 0; s < trials; ++s)
        hits += static_cast<int>(sample_graph_naive(c, s).edge_count());
    CHECK(std::abs(hits / double(trials) - prob) <= 4.0 * std::sqrt(prob * (1 - prob) / trials));

    const auto far = fixed_coords(derive_params(2.0, 10.0, 1e9), {400.0, 400.0, 400.0});
    CHECK(sample_graph_naive(far, 1).edge_count() == 0);
    CHECK(sample_graph_fast(far, 1).edge_count() == 0);
}

TEST_CASE("naive sampler size guard")
{
    const auto p = derive_params(2.0, 10.0, kNaiveSizeLimit + 1);
    const auto c = fixed_coords(p, std::vector<double>(static_cast<std::size_t>(kNaiveSizeLimit + 1), 0.0));
    CHECK_THROWS_AS(sample_graph_naive(c, 1), SizeGuardError);
}

TEST_CASE("mean edge count matches the quadrature oracle")
{
    const auto p = derive_params(2.0, 10.0, 1000);
    const double expected = expected_avg_degree_finite_n(p) * p.n() / 2.0;
    Moments naive, fast;
    for (int r = 0; r < 200; ++r) {
        const auto c = sample_coordinates(p, 500 + r);
        const auto g = sample_graph_naive(c, 500 + r);
        CHECK(is_canonical(g));
        naive.add(static_cast<double>(g.edge_count()));
    }
    for (int r = 0; r < 500; ++r) {
        const auto c = sample_coordinates(p, 9000 + r);
        const auto g = sample_graph_fast(c, 9000 + r);
        CHECK(is_canonical(g));
        fast.add(static_cast<double>(g.edge_count()));
    }
    CHECK(std::abs(naive.mean() - expected) <= 3.0 * naive.se());
    CHECK(std::abs(fast.mean() - expected) <= 3.0 * fast.se());

    const auto big = derive_params(2.0, 10.0, 100000);
    Moments large;
    for (int r = 0; r < 10; ++r)
        large.add(static_cast<double>(sample_graph_fast(sample_coordinates(big, r), r).edge_count()));
    CHECK(std::abs(large.mean() - expected_avg_degree_finite_n(big) * big.n() / 2.0) <= 3.0 * large.se());
}

TEST_CASE("fast sampler is deterministic across thread counts")
{
    const auto p = derive_params(2.0, 10.0, 20000);
    const auto c = sample_coordinates(p, 3);
    const auto g1 = sample_graph_fast(c, 3, 1);
    CHECK(g1 == sample_graph_fast(c, 3, 1));
    CHECK(g1 == sample_graph_fast(c, 3, 3));
    CHECK(g1 == sample_graph_fast(c, 3, 8));
    CHECK(g1.n == 20000);
}

TEST_CASE("fast sampler per-pair acceptance frequency")
{
    const auto p = derive_params(2.0, 0.5, 5);
    const std::vector<double> xs{-1.0, -0.2, 0.3, 1.0, 1.8};
    const auto c = fixed_coords(p, xs);
    const int trials = 100000;
    std::vector<int> hits(25, 0);
    for (int s = 0; s < trials; ++s)
        for (const auto& [u, v] : sample_graph_fast(c, 1000000 + s).edges)
            ++hits[u * 5 + v];
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            const double w = w_fermi_dirac(xs[i], xs[j]);
            CHECK(std::abs(hits[i * 5 + j] / double(trials) - w) <= 4.0 * std::sqrt(w * (1 - w) / trials));
        }
}

TEST_CASE("labels are exchangeable")
{
    const auto p = derive_params(2.0, 5.0, 100);
    for (bool fast : {false, true}) {
        Moments diff;
        for (int r = 0; r < 1000; ++r) {
            const auto c = sample_coordinates(p, 40000 + r);
            const auto g = fast ? sample_graph_fast(c, 40000 + r) : sample_graph_naive(c, 40000 + r);
            const auto d = g.degrees();
            const double lo = std::accumulate(d.begin(), d.begin() + 50, 0.0);
            const double hi = std::accumulate(d.begin() + 50, d.end(), 0.0);
            diff.add((lo - hi) / 50.0);
        }
        CHECK(std::abs(diff.mean()) <= 4.0 * diff.se());
    }
}

TEST_CASE("degree of a node follows its expected-degree function")
{
    const auto p = derive_params(2.0, 10.0, 10000);
    // log kappa_n is smooth; interpolate it on a grid
    const double lo = p.r_n() + std::log(1e-6) / p.gamma();
    const int grid = 400;
    std::vector<double> log_kappa(grid + 1);
    for (int i = 0; i <= grid; ++i)
        log_kappa[i] = std::log(expected_degree_fn(p, lo + (p.r_n() - lo) * i / grid, KernelKind::FermiDirac));
    auto kappa = [&](double x) {
        const double t = std::clamp((x - lo) / (p.r_n() - lo) * grid, 0.0, double(grid) - 1e-9);
        const int i = static_cast<int>(t);
        return std::exp(log_kappa[i] + (t - i) * (log_kappa[i + 1] - log_kappa[i]));
    };
    // Degrees within one graph are correlated, so the error bar comes from
    // the spread of per-replica bucket residuals.
    const int buckets = 8;
    const int replicas = 30;
    std::vector<std::vector<double>> resid(buckets, std::vector<double>(replicas, 0.0));
    std::vector<double> observed(buckets, 0.0), expected(buckets, 0.0);
    for (int r = 0; r < replicas; ++r) {
        const auto c = sample_coordinates(p, 700 + r);
        const auto d = sample_graph_fast(c, 700 + r).degrees();
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double x = c.coords[i];
            if (x < lo)
                continue;
            const double u = std::exp(p.gamma() * (x - p.r_n()));
            const int b = std::min(buckets - 1, static_cast<int>(-std::log10(u)));
            const double k = kappa(x);
            observed[b] += d[i];
            expected[b] += k;
            resid[b][r] += d[i] - k;
        }
    }
    for (int b = 0; b < buckets; ++b) {
        if (expected[b] == 0.0)
            continue;
        double mean = 0.0, var = 0.0;
        for (double v : resid[b])
            mean += v / replicas;
        for (double v : resid[b])
            var += (v - mean) * (v - mean) / (replicas - 1);
        CHECK(std::abs(mean) <= 4.0 * std::sqrt(var / replicas));
        CHECK(std::abs(observed[b] / expected[b] - 1.0) <= 0.02);
    }
}

TEST_CASE("growing sampler is projective")
{
    for (auto method : {EdgeMethod::Fast, EdgeMethod::Naive}) {
        const auto big = sample_graph_growing(2.0, 10.0, 99, 2000, GrowthVariant::PoissonExact, method);
        const auto small = sample_graph_growing(2.0, 10.0, 99, 1000, GrowthVariant::PoissonExact, method);
        CHECK(big.graph.prefix(1000) == small.graph);
        CHECK(std::equal(small.coords.coords.begin(), small.coords.coords.end(), big.coords.coords.begin()));
    }
    CHECK_THROWS_AS(sample_graph_growing(1.5, 10.0, 1, 100, GrowthVariant::PoissonExact), DomainError);
}

TEST_CASE("growing sampler: node-by-node state matches the batch run")
{
    GrowthState state(2.0, 10.0, 5, GrowthVariant::PoissonExact);
    double prev = -1.0;
    for (int i = 0; i < 300; ++i) {
        state.add_node();
        CHECK(state.position() > prev);
        prev = state.position();
    }
    const auto batch = sample_graph_growing(2.0, 10.0, 5, 300, GrowthVariant::PoissonExact, EdgeMethod::Naive);
    CHECK(state.graph() == batch.graph);
    CHECK(state.coords() == batch.coords.coords);
}

TEST_CASE("growing sampler: Poisson process position")
{
    const int n = 1000;
    Moments v;
    for (int r = 0; r < 300; ++r) {
        const auto res = sample_graph_growing(2.0, 10.0, 3000 + r, n);
        v.add(0.5 * std::exp(2.0 * res.coords.coords.back()));
    }
    CHECK(std::abs(v.mean() - n / 5.0) <= 3.0 * v.se());
}

TEST_CASE("increment variant for general gamma")
{
    const auto res = sample_graph_growing(1.5, 4.0, 8, 3000, GrowthVariant::Increment);
    CHECK(std::is_sorted(res.coords.coords.begin(), res.coords.coords.end()));
    const auto p = derive_params(1.5, 4.0, 3000);
    CHECK(res.coords.coords.back() <= p.r_n() + 1e-12);
    const auto prefix = sample_graph_growing(1.5, 4.0, 8, 1500, GrowthVariant::Increment);
    CHECK(res.graph.prefix(1500) == prefix.graph);
}

TEST_CASE("growing and equilibrium samplers agree")
{
    const auto p = derive_params(2.0, 10.0, 100000);
    DegreeHistogram grow(p.n()), equi(p.n());
    for (int r = 0; r < 20; ++r) {
        grow.add(sample_graph_growing(p, 100 + r, p.n()).graph);
        equi.add(sample_graph_fast(sample_coordinates(p, 200 + r), 200 + r));
    }
    CHECK(tv_distance(grow.pmf(), equi.pmf(), 50) <= 0.02);
    const double se = std::hypot(grow.average_degree_se(), equi.average_degree_se());
    CHECK(std::abs(grow.average_degree() - equi.average_degree()) <= 3.0 * se);
}

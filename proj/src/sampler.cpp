#include "hscm/sampler.hpp"

#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

namespace hscm {

std::vector<std::int64_t> Graph::degrees() const
{
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Graph Graph::prefix(std::int64_t m) const
{
    Graph g;
    g.n = std::min(m, n);
    for (const auto& e : edges)
        if (static_cast<std::int64_t>(e.second) < g.n)
            g.edges.push_back(e);
    return g;
}

std::size_t canonicalize(std::vector<Edge>& edges)
{
    const std::size_t before = edges.size();
    for (auto& e : edges)
        if (e.first > e.second)
            std::swap(e.first, e.second);
    std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return before - edges.size();
}

namespace {

void check_node_count(std::int64_t n)
{
    if (n < 0 || n >= (std::int64_t{1} << 31))
        throw DomainError("node count must be below 2^31");
}

} // namespace

CoordinateSample sample_coordinates(const EnsembleParams& p, std::uint64_t seed, Representation rep)
{
    check_node_count(p.n());
    CoordinateSample c{p, rep, {}, seed};
    c.coords.resize(static_cast<std::size_t>(p.n()));
    for (std::int64_t i = 0; i < p.n(); ++i) {
        const double u = rng::to_unit_open0(rng::hash_bits(seed, rng::Domain::Coordinates, static_cast<std::uint32_t>(i), 0));
        const double x = mu_n_quantile(p, u);
        c.coords[static_cast<std::size_t>(i)]
            = rep == Representation::Exponential ? x : convert_coordinate(p, x, Representation::Exponential, rep);
    }
    return c;
}

std::vector<double> exponential_coords(const CoordinateSample& c)
{
    if (c.rep == Representation::Exponential)
        return c.coords;
    std::vector<double> out(c.coords.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = convert_coordinate(c.params, c.coords[i], c.rep, Representation::Exponential);
    return out;
}

Graph sample_graph_naive(const CoordinateSample& c, std::uint64_t seed, bool allow_large)
{
    const auto n = static_cast<std::int64_t>(c.coords.size());
    check_node_count(n);
    if (n > kNaiveSizeLimit && !allow_large)
        throw SizeGuardError("naive sampler is quadratic; n = " + std::to_string(n) + " exceeds "
                             + std::to_string(kNaiveSizeLimit) + " (override to force)");
    const auto x = exponential_coords(c);
    Graph g;
    g.n = n;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = i + 1; j < n; ++j) {
            const auto a = static_cast<std::uint32_t>(i);
            const auto b = static_cast<std::uint32_t>(j);
            const double u = rng::to_unit(rng::hash_bits(seed, rng::Domain::NaivePair, a, b));
            if (u < w_fermi_dirac(x[i], x[j]))
                g.edges.emplace_back(a, b);
        }
    }
    return g;
}

namespace {

// Edges from the anchor at sorted position `a` to later positions. `order`
// lists node ids by increasing coordinate, so weights e^{-x} decrease.
void anchor_edges(std::size_t a, const std::vector<std::uint32_t>& order, const std::vector<double>& xs,
                  std::uint64_t seed, std::vector<Edge>& out)
{
    const std::size_t n = order.size();
    const std::uint32_t id = order[a];
    const double xa = xs[a];
    rng::Stream stream(seed, rng::Domain::FastAnchor, id);
    std::size_t b = a + 1;
    if (b >= n)
        return;
    double p = w_classical(xa, xs[b]);
    while (b < n) {
        if (p < 1.0) {
            const double log_q = std::log1p(-p);
            if (!(log_q < 0.0))
                return;
            const double skip = std::floor(std::log(stream.uniform()) / log_q);
            if (skip >= static_cast<double>(n - b))
                return;
            b += static_cast<std::size_t>(skip);
        }
        const double s = xa + xs[b];
        const double q = w_classical(xa, xs[b]);
        // Proposal accepted with q / p, then thinned to W / q.
        if (stream.uniform() * p <= fermi_dirac_of_sum(s)) {
            const std::uint32_t other = order[b];
            out.emplace_back(std::min(id, other), std::max(id, other));
        }
        p = q;
        ++b;
    }
}

} // namespace

Graph sample_graph_fast(const CoordinateSample& c, std::uint64_t seed, unsigned threads)
{
    const auto n = static_cast<std::int64_t>(c.coords.size());
    check_node_count(n);
    const auto x = exponential_coords(c);
    std::vector<std::uint32_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return x[a] < x[b] || (x[a] == x[b] && a < b);
    });
    std::vector<double> xs(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        xs[i] = x[order[i]];

    threads = std::max(1u, threads);
    std::vector<std::vector<Edge>> parts(threads);
    auto work = [&](unsigned t) {
        for (std::size_t a = t; a < order.size(); a += threads)
            anchor_edges(a, order, xs, seed, parts[t]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }

    Graph g;
    g.n = n;
    std::size_t total = 0;
    for (const auto& part : parts)
        total += part.size();
    g.edges.reserve(total);
    for (auto& part : parts) {
        g.edges.insert(g.edges.end(), part.begin(), part.end());
        part.clear();
        part.shrink_to_fit();
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

GrowthState::GrowthState(double gamma, double nu, std::uint64_t seed, GrowthVariant variant)
    : gamma_(gamma), nu_(nu), beta_(1.0 - 1.0 / gamma), seed_(seed), variant_(variant)
{
    (void)derive_params(gamma, nu, 1); // validates gamma and nu
    if (variant == GrowthVariant::PoissonExact && gamma != 2.0)
        throw DomainError("the exact Poisson-process growth requires gamma = 2, got " + std::to_string(gamma));
}

namespace {

double growth_coordinate(double gamma, double nu, double beta, std::uint64_t seed, GrowthVariant variant,
                         std::int64_t index, double v_prev, double& v_next)
{
    const double u = rng::to_unit_open0(rng::hash_bits(seed, rng::Domain::Growth, static_cast<std::uint32_t>(index), 0));
    if (variant == GrowthVariant::PoissonExact) {
        v_next = v_prev - std::log(u) / (nu / 2.0);
        return 0.5 * std::log(2.0 * v_next);
    }
    // mu restricted to (R_{m-1}, R_m] with e^{gamma R_m} = (m / (beta^2 nu))^{gamma/2}.
    const auto m = static_cast<double>(index + 1);
    const double log_hi = 0.5 * gamma * std::log(m / (beta * beta * nu));
    const double ratio = index == 0 ? 0.0 : std::pow((m - 1.0) / m, 0.5 * gamma);
    v_next = v_prev + 1.0;
    return (log_hi + std::log(ratio + u * (1.0 - ratio))) / gamma;
}

} // namespace

double GrowthState::next_coordinate() const
{
    double v_next = 0.0;
    return growth_coordinate(gamma_, nu_, beta_, seed_, variant_, size(), v_, v_next);
}

std::int64_t GrowthState::add_node()
{
    const std::int64_t m = size();
    check_node_count(m + 1);
    double v_next = 0.0;
    const double x = growth_coordinate(gamma_, nu_, beta_, seed_, variant_, m, v_, v_next);
    const auto b = static_cast<std::uint32_t>(m);
    for (std::uint32_t a = 0; a < b; ++a) {
        const double u = rng::to_unit(rng::hash_bits(seed_, rng::Domain::NaivePair, a, b));
        if (u < w_fermi_dirac(coords_[a], x))
            edges_.emplace_back(a, b);
    }
    coords_.push_back(x);
    v_ = v_next;
    return m;
}

Graph GrowthState::graph() const
{
    Graph g;
    g.n = size();
    g.edges = edges_;
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

GrowthResult sample_graph_growing(double gamma, double nu, std::uint64_t seed, std::int64_t target_n,
                                  GrowthVariant variant, EdgeMethod method)
{
    if (target_n < 1)
        throw DomainError("target_n must be at least 1");
    check_node_count(target_n);
    GrowthState state(gamma, nu, seed, variant);
    CoordinateSample c{derive_params(gamma, nu, target_n), Representation::Exponential, {}, seed};
    if (method == EdgeMethod::Naive) {
        for (std::int64_t i = 0; i < target_n; ++i)
            state.add_node();
        c.coords = state.coords();
        return {state.graph(), std::move(c)};
    }
    c.coords.reserve(static_cast<std::size_t>(target_n));
    const double beta = 1.0 - 1.0 / gamma;
    double v = 0.0;
    for (std::int64_t i = 0; i < target_n; ++i) {
        double v_next = 0.0;
        c.coords.push_back(growth_coordinate(gamma, nu, beta, seed, variant, i, v, v_next));
        v = v_next;
    }
    Graph g = sample_graph_fast(c, seed);
    return {std::move(g), std::move(c)};
}

GrowthResult sample_graph_growing(const EnsembleParams& p, std::uint64_t seed, std::int64_t target_n,
                                  GrowthVariant variant, EdgeMethod method)
{
    return sample_graph_growing(p.gamma(), p.nu(), seed, target_n, variant, method);
}

} // namespace hscm

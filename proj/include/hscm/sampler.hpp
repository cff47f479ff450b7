#pragma once

#include "hscm/graph.hpp"
#include "hscm/params.hpp"

#include <cstdint>
#include <vector>

namespace hscm {

/// Latent coordinates of n nodes in one representation, reproducible from
/// (params, seed).
struct CoordinateSample
{
    EnsembleParams params;
    Representation rep = Representation::Exponential;
    std::vector<double> coords;
    std::uint64_t seed = 0;
};

/// n i.i.d. draws from mu_n (inverse CDF), transformed to `rep`. Node i uses
/// the counter (seed, i), so any prefix of coordinates is stable in n.
CoordinateSample sample_coordinates(const EnsembleParams& p, std::uint64_t seed,
                                    Representation rep = Representation::Exponential);

/// Coordinates of `c` in the exponential representation.
std::vector<double> exponential_coords(const CoordinateSample& c);

/// Largest n accepted by sample_graph_naive without `allow_large`.
inline constexpr std::int64_t kNaiveSizeLimit = 30000;

/// Reference sampler: every pair (i, j) is an independent Bernoulli with
/// probability W(x_i, x_j), decided by a counter keyed (seed, i, j).
/// Throws SizeGuardError above kNaiveSizeLimit unless allow_large is set.
Graph sample_graph_naive(const CoordinateSample& c, std::uint64_t seed, bool allow_large = false);

/// Exact sampler in expected O(n + m) time: candidates are proposed under the
/// dominating kernel min(e^{-(x_i + x_j)}, 1) with geometric skips along the
/// coordinate order and thinned to W. Output is independent of `threads`.
Graph sample_graph_fast(const CoordinateSample& c, std::uint64_t seed, unsigned threads = 1);

enum class GrowthVariant
{
    /// gamma = 2 only: v_i = v_{i-1} + Exp(nu / 2), x_i = log(2 v_i) / 2.
    PoissonExact,
    /// Any gamma > 1: x_m ~ mu restricted to (R_{m-1}, R_m]. Equivalent to
    /// the equilibrium ensemble only asymptotically.
    Increment
};

enum class EdgeMethod
{
    Fast,
    Naive
};

/// Node-by-node construction. Coordinates increase with the label, so the
/// first m nodes of a run are exactly the run to size m with the same seed.
class GrowthState
{
public:
    GrowthState(double gamma, double nu, std::uint64_t seed, GrowthVariant variant);

    /// Adds one node, connects it to every existing node with probability
    /// W (naive pair counters) and returns its label.
    std::int64_t add_node();

    /// Coordinate of the next node without adding it.
    double next_coordinate() const;

    std::int64_t size() const noexcept { return static_cast<std::int64_t>(coords_.size()); }
    const std::vector<double>& coords() const noexcept { return coords_; }
    double position() const noexcept { return v_; }
    Graph graph() const;

private:
    double gamma_;
    double nu_;
    double beta_;
    std::uint64_t seed_;
    GrowthVariant variant_;
    double v_ = 0.0;
    std::vector<double> coords_;
    std::vector<Edge> edges_;
};

struct GrowthResult
{
    Graph graph;
    CoordinateSample coords;
};

/// Grows a graph to target_n nodes. Throws DomainError for PoissonExact when
/// gamma != 2.
GrowthResult sample_graph_growing(double gamma, double nu, std::uint64_t seed, std::int64_t target_n,
                                  GrowthVariant variant = GrowthVariant::PoissonExact,
                                  EdgeMethod method = EdgeMethod::Fast);

/// Same, with gamma and nu taken from `p` (its n is ignored).
GrowthResult sample_graph_growing(const EnsembleParams& p, std::uint64_t seed, std::int64_t target_n,
                                  GrowthVariant variant = GrowthVariant::PoissonExact,
                                  EdgeMethod method = EdgeMethod::Fast);

} // namespace hscm

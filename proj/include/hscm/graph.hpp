#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hscm {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Simple undirected graph on nodes 0..n-1. Edges are stored once with
/// first < second, sorted lexicographically.
struct Graph
{
    std::int64_t n = 0;
    std::vector<Edge> edges;

    std::size_t edge_count() const noexcept { return edges.size(); }
    std::vector<std::int64_t> degrees() const;

    /// Subgraph induced on nodes 0..m-1.
    Graph prefix(std::int64_t m) const;

    friend bool operator==(const Graph&, const Graph&) = default;
};

/// Normalizes an edge list: orients pairs, sorts, drops duplicates and
/// self-loops. Returns the number of dropped entries.
std::size_t canonicalize(std::vector<Edge>& edges);

} // namespace hscm

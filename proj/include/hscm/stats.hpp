#pragma once

#include "hscm/graph.hpp"
#include "hscm/params.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace hscm {

/// Degree counts pooled over graphs of a common size.
class DegreeHistogram
{
public:
    explicit DegreeHistogram(std::int64_t n = 0) : n_(n) {}

    void add(const Graph& g);
    void add_degrees(const std::vector<std::int64_t>& degrees);
    /// Associative, commutative merge.
    void merge(const DegreeHistogram& other);

    std::int64_t n() const noexcept { return n_; }
    std::int64_t graphs() const noexcept { return graphs_; }
    const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    std::int64_t count(std::int64_t k) const noexcept;
    std::int64_t total() const noexcept;
    std::int64_t max_degree() const noexcept { return static_cast<std::int64_t>(counts_.size()) - 1; }

    /// counts / total, indices 0..max_degree.
    std::vector<double> pmf() const;

    /// Average degree over all pooled nodes.
    double average_degree() const;
    /// Average degree of each graph.
    const std::vector<double>& graph_means() const noexcept { return graph_means_; }
    /// Standard error of the pooled average from the spread of graph_means.
    double average_degree_se() const;

private:
    std::int64_t n_;
    std::int64_t graphs_ = 0;
    std::vector<std::int64_t> counts_;
    std::vector<double> graph_means_;
};

/// Throws DomainError for graphs of different sizes.
DegreeHistogram degree_histogram(const std::vector<Graph>& graphs);

/// Total variation over k = 0..k_max plus one lumped bin for k > k_max, whose
/// mass is 1 minus the listed mass of each pmf.
double tv_distance(const std::vector<double>& a, const std::vector<double>& b, std::int64_t k_max = 100);

struct TailFit
{
    double alpha = 0.0;
    std::int64_t k_min = 0;
    std::int64_t tail_count = 0;
    double ks = 0.0;
    double standard_error = 0.0;
};

/// Discrete power-law MLE over k >= k_min. Throws InsufficientTailError with
/// fewer than 100 samples at or above k_min, or when the tail shows no
/// power-law decay (estimate at the search bound or KS distance >= 0.1).
TailFit tail_fit(const DegreeHistogram& h, std::int64_t k_min);
double tail_exponent(const DegreeHistogram& h, std::int64_t k_min);

/// k_min chosen to minimize the KS distance among candidates that keep at
/// least 100 tail samples.
TailFit tail_fit_auto(const DegreeHistogram& h, std::int64_t k_min_floor = 1);

struct ComparisonOptions
{
    std::int64_t k_max = 100;
    double tv_tolerance = 0.02;
    double tv_tolerance_finite_n = 0.01;
    bool with_finite_n = true;
    bool with_tail = true;
};

struct ComparisonReport
{
    std::int64_t k_max = 100;
    double tv_asymptotic = 0.0;
    double tv_finite_n = -1.0; ///< negative when not computed
    double avg_degree = 0.0;
    double avg_degree_se = 0.0;
    double avg_degree_finite_n = 0.0;
    double nu = 0.0;
    double tail_alpha = 0.0; ///< 0 when no tail fit was possible
    std::int64_t tail_k_min = 0;
    bool tv_pass = false;
    bool tv_finite_n_pass = false;
    bool avg_within_3se = false;
};

ComparisonReport compare_to_theory(const DegreeHistogram& h, const EnsembleParams& p,
                                   const ComparisonOptions& opt = {});

struct LogBin
{
    std::int64_t k_lo;
    std::int64_t k_hi; ///< inclusive
    double k_center; ///< geometric centre
    double density; ///< probability mass / number of integers in the bin
};

/// Logarithmic binning of a pmf (k >= 1), `per_decade` bins per factor 10.
std::vector<LogBin> log_binned(const std::vector<double>& pmf, int per_decade = 10);

struct IngestResult
{
    DegreeHistogram histogram;
    Graph graph;
    std::size_t duplicates = 0;
    std::size_t self_loops = 0;
    bool one_indexed = false;
};

/// Reads an undirected "u v" edge list. Ids are taken as 1-indexed when the
/// file has no hscm header and its smallest id is at least 1. Duplicate
/// edges and self-loops are dropped and counted.
IngestResult ingest_edge_list(const std::filesystem::path& path);

} // namespace hscm

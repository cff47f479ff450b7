#include "hscm/stats.hpp"

#include "hscm/error.hpp"
#include "hscm/io.hpp"
#include "hscm/special.hpp"
#include "hscm/theory.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hscm {

void DegreeHistogram::add(const Graph& g)
{
    if (graphs_ > 0 && g.n != n_)
        throw DomainError("histogram of size " + std::to_string(n_) + " cannot take a graph of size "
                          + std::to_string(g.n));
    add_degrees(g.degrees());
}

void DegreeHistogram::add_degrees(const std::vector<std::int64_t>& degrees)
{
    const auto size = static_cast<std::int64_t>(degrees.size());
    if (graphs_ > 0 && size != n_)
        throw DomainError("degree sequence of length " + std::to_string(size) + " does not match n = "
                          + std::to_string(n_));
    n_ = size;
    double sum = 0.0;
    for (std::int64_t d : degrees) {
        if (d < 0)
            throw DomainError("negative degree");
        if (d >= static_cast<std::int64_t>(counts_.size()))
            counts_.resize(static_cast<std::size_t>(d) + 1, 0);
        ++counts_[static_cast<std::size_t>(d)];
        sum += static_cast<double>(d);
    }
    ++graphs_;
    graph_means_.push_back(size > 0 ? sum / static_cast<double>(size) : 0.0);
}

void DegreeHistogram::merge(const DegreeHistogram& other)
{
    if (other.graphs_ == 0)
        return;
    if (graphs_ > 0 && other.n_ != n_)
        throw DomainError("cannot merge histograms of different graph sizes");
    n_ = other.n_;
    if (other.counts_.size() > counts_.size())
        counts_.resize(other.counts_.size(), 0);
    for (std::size_t k = 0; k < other.counts_.size(); ++k)
        counts_[k] += other.counts_[k];
    graphs_ += other.graphs_;
    graph_means_.insert(graph_means_.end(), other.graph_means_.begin(), other.graph_means_.end());
}

std::int64_t DegreeHistogram::count(std::int64_t k) const noexcept
{
    if (k < 0 || k >= static_cast<std::int64_t>(counts_.size()))
        return 0;
    return counts_[static_cast<std::size_t>(k)];
}

std::int64_t DegreeHistogram::total() const noexcept
{
    return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::vector<double> DegreeHistogram::pmf() const
{
    const auto t = static_cast<double>(total());
    std::vector<double> out(counts_.size(), 0.0);
    if (t > 0.0)
        for (std::size_t k = 0; k < counts_.size(); ++k)
            out[k] = static_cast<double>(counts_[k]) / t;
    return out;
}

double DegreeHistogram::average_degree() const
{
    const auto t = total();
    if (t == 0)
        return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < counts_.size(); ++k)
        sum += static_cast<double>(k) * static_cast<double>(counts_[k]);
    return sum / static_cast<double>(t);
}

double DegreeHistogram::average_degree_se() const
{
    if (graph_means_.size() >= 2) {
        const double m = std::accumulate(graph_means_.begin(), graph_means_.end(), 0.0)
                         / static_cast<double>(graph_means_.size());
        double ss = 0.0;
        for (double v : graph_means_)
            ss += (v - m) * (v - m);
        const auto g = static_cast<double>(graph_means_.size());
        return std::sqrt(ss / (g - 1.0) / g);
    }
    const auto t = static_cast<double>(total());
    if (t < 2.0)
        return 0.0;
    const double m = average_degree();
    double ss = 0.0;
    for (std::size_t k = 0; k < counts_.size(); ++k)
        ss += static_cast<double>(counts_[k]) * (static_cast<double>(k) - m) * (static_cast<double>(k) - m);
    return std::sqrt(ss / (t - 1.0) / t);
}

DegreeHistogram degree_histogram(const std::vector<Graph>& graphs)
{
    DegreeHistogram h(graphs.empty() ? 0 : graphs.front().n);
    for (const auto& g : graphs) {
        if (g.n != h.n())
            throw DomainError("degree_histogram requires graphs of equal size");
        h.add(g);
    }
    return h;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b, std::int64_t k_max)
{
    if (k_max < 0)
        throw DomainError("k_max must be non-negative");
    auto at = [](const std::vector<double>& v, std::int64_t k) {
        return k < static_cast<std::int64_t>(v.size()) ? v[static_cast<std::size_t>(k)] : 0.0;
    };
    double sum = 0.0;
    double mass_a = 0.0;
    double mass_b = 0.0;
    for (std::int64_t k = 0; k <= k_max; ++k) {
        const double pa = at(a, k);
        const double pb = at(b, k);
        sum += std::abs(pa - pb);
        mass_a += pa;
        mass_b += pb;
    }
    const double tail_a = std::max(0.0, 1.0 - mass_a);
    const double tail_b = std::max(0.0, 1.0 - mass_b);
    return std::clamp(0.5 * (sum + std::abs(tail_a - tail_b)), 0.0, 1.0);
}

namespace {

constexpr double kAlphaLo = 1.01;
constexpr double kAlphaHi = 10.0;
constexpr std::int64_t kMinTail = 100;

struct TailStats
{
    std::int64_t count = 0;
    double log_sum = 0.0;
};

TailStats tail_stats(const DegreeHistogram& h, std::int64_t k_min)
{
    TailStats st;
    for (std::int64_t k = k_min; k <= h.max_degree(); ++k) {
        const auto c = h.count(k);
        st.count += c;
        st.log_sum += static_cast<double>(c) * std::log(static_cast<double>(k));
    }
    return st;
}

double ks_distance(const DegreeHistogram& h, std::int64_t k_min, double alpha, std::int64_t n_tail)
{
    const double z0 = special::hurwitz_zeta(alpha, static_cast<double>(k_min));
    double z = z0; // zeta(alpha, k)
    std::int64_t cum = 0;
    double d = 0.0;
    for (std::int64_t k = k_min; k <= h.max_degree(); ++k) {
        z -= std::pow(static_cast<double>(k), -alpha);
        cum += h.count(k);
        const double model = 1.0 - std::max(z, 0.0) / z0;
        const double empirical = static_cast<double>(cum) / static_cast<double>(n_tail);
        d = std::max(d, std::abs(empirical - model));
    }
    return d;
}

TailFit fit_at(const DegreeHistogram& h, std::int64_t k_min)
{
    if (k_min < 1)
        throw DomainError("k_min must be at least 1");
    const auto st = tail_stats(h, k_min);
    if (st.count < kMinTail)
        throw InsufficientTailError("only " + std::to_string(st.count) + " samples at or above k_min = "
                                    + std::to_string(k_min) + " (need " + std::to_string(kMinTail) + ")");
    const auto nt = static_cast<double>(st.count);
    const double kmin = static_cast<double>(k_min);
    auto nll = [&](double a) { return a * st.log_sum + nt * std::log(special::hurwitz_zeta(a, kmin)); };
    const auto [alpha, value] = boost::math::tools::brent_find_minima(nll, kAlphaLo, kAlphaHi, 40);
    (void)value;
    TailFit fit;
    fit.alpha = alpha;
    fit.k_min = k_min;
    fit.tail_count = st.count;
    fit.standard_error = (alpha - 1.0) / std::sqrt(nt);
    fit.ks = ks_distance(h, k_min, alpha, st.count);
    return fit;
}

void check_fit(const TailFit& fit)
{
    if (fit.alpha - kAlphaLo < 1e-3 || kAlphaHi - fit.alpha < 1e-3)
        throw InsufficientTailError("tail exponent estimate " + std::to_string(fit.alpha)
                                    + " sits on the search bound; no power-law decay");
    if (fit.ks >= 0.1)
        throw InsufficientTailError("tail does not follow a power law (KS distance "
                                    + std::to_string(fit.ks) + ")");
}

} // namespace

TailFit tail_fit(const DegreeHistogram& h, std::int64_t k_min)
{
    auto fit = fit_at(h, k_min);
    check_fit(fit);
    return fit;
}

double tail_exponent(const DegreeHistogram& h, std::int64_t k_min)
{
    return tail_fit(h, k_min).alpha;
}

TailFit tail_fit_auto(const DegreeHistogram& h, std::int64_t k_min_floor)
{
    std::int64_t above = 0;
    std::int64_t last = 0; // largest k_min that keeps kMinTail samples
    for (std::int64_t k = h.max_degree(); k >= 1; --k) {
        above += h.count(k);
        if (above >= kMinTail) {
            last = k;
            break;
        }
    }
    if (last < std::max<std::int64_t>(1, k_min_floor))
        throw InsufficientTailError("fewer than 100 samples in any candidate tail");
    TailFit best;
    bool found = false;
    for (std::int64_t k = std::max<std::int64_t>(1, k_min_floor); k <= last; ++k) {
        if (h.count(k) == 0)
            continue;
        const auto fit = fit_at(h, k);
        if (!found || fit.ks < best.ks) {
            best = fit;
            found = true;
        }
    }
    if (!found)
        throw InsufficientTailError("no candidate k_min");
    check_fit(best);
    return best;
}

ComparisonReport compare_to_theory(const DegreeHistogram& h, const EnsembleParams& p, const ComparisonOptions& opt)
{
    ComparisonReport rep;
    rep.k_max = opt.k_max;
    const auto emp = h.pmf();
    const DegreeLaw law(p);
    rep.tv_asymptotic = tv_distance(emp, law.pmf_table(opt.k_max), opt.k_max);
    rep.tv_pass = rep.tv_asymptotic <= opt.tv_tolerance;
    if (opt.with_finite_n) {
        rep.tv_finite_n = tv_distance(emp, finite_n_degree_pmf(p, opt.k_max), opt.k_max);
        rep.tv_finite_n_pass = rep.tv_finite_n <= opt.tv_tolerance_finite_n;
    }
    rep.avg_degree = h.average_degree();
    rep.avg_degree_se = h.average_degree_se();
    rep.avg_degree_finite_n = expected_avg_degree_finite_n(p);
    rep.nu = p.nu();
    rep.avg_within_3se = std::abs(rep.avg_degree - rep.avg_degree_finite_n) <= 3.0 * rep.avg_degree_se;
    if (opt.with_tail) {
        try {
            const auto fit = tail_fit_auto(h);
            rep.tail_alpha = fit.alpha;
            rep.tail_k_min = fit.k_min;
        } catch (const InsufficientTailError&) {
            rep.tail_alpha = 0.0;
        }
    }
    return rep;
}

std::vector<LogBin> log_binned(const std::vector<double>& pmf, int per_decade)
{
    if (per_decade < 1)
        throw DomainError("per_decade must be positive");
    std::vector<LogBin> out;
    const auto kmax = static_cast<std::int64_t>(pmf.size()) - 1;
    std::int64_t lo = 1;
    for (int i = 1; lo <= kmax; ++i) {
        const auto edge = static_cast<std::int64_t>(std::ceil(std::pow(10.0, static_cast<double>(i) / per_decade) - 1e-9));
        const std::int64_t hi = std::min(edge - 1, kmax);
        if (hi < lo)
            continue;
        double mass = 0.0;
        for (std::int64_t k = lo; k <= hi; ++k)
            mass += pmf[static_cast<std::size_t>(k)];
        out.push_back({lo, hi, std::sqrt(static_cast<double>(lo) * static_cast<double>(hi)),
                       mass / static_cast<double>(hi - lo + 1)});
        lo = hi + 1;
    }
    return out;
}

IngestResult ingest_edge_list(const std::filesystem::path& path)
{
    auto file = io::parse_edge_list_file(path);
    IngestResult res;
    res.one_indexed = !file.header_n && file.min_id >= 1;
    const std::uint32_t shift = res.one_indexed ? 1u : 0u;
    std::int64_t n = file.header_n.value_or(file.max_id + 1 - shift);
    if (file.max_id >= 0 && file.max_id - shift >= n)
        throw ParseError("node id " + std::to_string(file.max_id) + " exceeds header n = " + std::to_string(n), 1);
    auto& edges = file.edges;
    for (auto& e : edges) {
        e.first -= shift;
        e.second -= shift;
    }
    res.self_loops = static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; }));
    const std::size_t dropped = canonicalize(edges);
    res.duplicates = dropped - res.self_loops;
    res.graph.n = n;
    res.graph.edges = std::move(edges);
    res.histogram = DegreeHistogram(n);
    res.histogram.add(res.graph);
    return res;
}

} // namespace hscm

#include "hscm/commands.hpp"

#include "hscm/entropy.hpp"
#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/io.hpp"
#include "hscm/rng.hpp"
#include "hscm/sampler.hpp"
#include "hscm/scm.hpp"
#include "hscm/stats.hpp"
#include "hscm/theory.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace hscm::cli {

using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

json to_json(const EnsembleConfig& e)
{
    return {{"gamma", e.gamma}, {"nu", e.nu}, {"n", e.n}};
}

json to_json(const GenerateConfig& c)
{
    return {{"ensemble", to_json(c.ensemble)}, {"replicas", c.replicas},     {"seed", c.seed},
            {"sampler", c.sampler},            {"growth", c.growth},         {"allow_large", c.allow_large},
            {"jobs", c.jobs},                  {"out_dir", c.out_dir.string()}};
}

json params_json(const EnsembleParams& p)
{
    return {{"gamma", p.gamma()}, {"nu", p.nu()}, {"n", p.n()}, {"beta", p.beta()}, {"alpha", p.alpha()},
            {"r_n", p.r_n()}};
}

EnsembleParams validate(const EnsembleConfig& e)
{
    return derive_params(e.gamma, e.nu, e.n);
}

void validate(const GenerateConfig& c)
{
    const auto p = validate(c.ensemble);
    if (c.replicas < 1)
        throw DomainError("replicas must be at least 1");
    if (c.jobs < 1)
        throw DomainError("jobs must be at least 1");
    if (c.sampler != "fast" && c.sampler != "naive" && c.sampler != "growing")
        throw DomainError("unknown sampler '" + c.sampler + "' (fast, naive, growing)");
    if (c.sampler == "naive" && p.n() > kNaiveSizeLimit && !c.allow_large)
        throw SizeGuardError("naive sampler limited to n <= " + std::to_string(kNaiveSizeLimit)
                             + " (use --allow-large)");
    if (c.sampler == "growing") {
        if (c.growth != "poisson" && c.growth != "increment")
            throw DomainError("unknown growth variant '" + c.growth + "' (poisson, increment)");
        if (c.growth == "poisson" && p.gamma() != 2.0)
            throw DomainError("the poisson growth variant requires gamma = 2");
    }
}

Graph sample_replica(const GenerateConfig& c, std::uint64_t seed)
{
    const auto p = validate(c.ensemble);
    if (c.sampler == "growing") {
        const auto variant = c.growth == "poisson" ? GrowthVariant::PoissonExact : GrowthVariant::Increment;
        return sample_graph_growing(p, seed, p.n(), variant).graph;
    }
    const auto coords = sample_coordinates(p, seed);
    if (c.sampler == "naive")
        return sample_graph_naive(coords, seed, c.allow_large);
    return sample_graph_fast(coords, seed);
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; the first
// exception is rethrown after all workers stop.
void parallel_for(int count, unsigned jobs, const std::function<void(int)>& fn)
{
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<unsigned>(jobs, static_cast<unsigned>(count)); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

std::string replica_name(int r)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "graph_%04d.edges", r);
    return buf;
}

std::filesystem::path sidecar(const std::filesystem::path& p)
{
    auto out = p;
    out += ".json";
    return out;
}

void write_json(const std::filesystem::path& path, const json& j)
{
    io::atomic_write(path, j.dump(2) + "\n");
}

} // namespace

std::string cmd_generate(const GenerateConfig& cfg)
{
    validate(cfg);
    const auto p = validate(cfg.ensemble);
    const auto t0 = Clock::now();
    std::vector<json> entries(static_cast<std::size_t>(cfg.replicas));
    parallel_for(cfg.replicas, cfg.jobs, [&](int r) {
        const auto t_rep = Clock::now();
        const std::uint64_t seed = rng::replica_seed(cfg.seed, static_cast<std::uint32_t>(r));
        const Graph g = sample_replica(cfg, seed);
        const auto name = replica_name(r);
        io::write_edge_list(cfg.out_dir / name, g, seed);
        entries[static_cast<std::size_t>(r)] = {{"index", r},
                                                {"file", name},
                                                {"seed", seed},
                                                {"edges", g.edge_count()},
                                                {"wall_time_s", seconds_since(t_rep)}};
    });
    json meta = {{"schema_version", kSchemaVersion},
                 {"command", "generate"},
                 {"config", to_json(cfg)},
                 {"params", params_json(p)},
                 {"representation", std::string(to_string(Representation::Exponential))},
                 {"replicas", entries},
                 {"wall_time_s", seconds_since(t0)}};
    write_json(cfg.out_dir / "meta.json", meta);
    return meta.dump(2);
}

std::string cmd_degrees(const DegreesConfig& cfg)
{
    if (cfg.k_max < 0)
        throw DomainError("k_max must be non-negative");
    DegreeHistogram hist;
    EnsembleConfig ens = cfg.generate.ensemble;
    if (cfg.inputs.empty()) {
        validate(cfg.generate);
        std::vector<DegreeHistogram> parts(static_cast<std::size_t>(cfg.generate.replicas));
        parallel_for(cfg.generate.replicas, cfg.generate.jobs, [&](int r) {
            const std::uint64_t seed = rng::replica_seed(cfg.generate.seed, static_cast<std::uint32_t>(r));
            parts[static_cast<std::size_t>(r)].add(sample_replica(cfg.generate, seed));
        });
        for (const auto& part : parts)
            hist.merge(part);
    } else {
        (void)derive_params(ens.gamma, ens.nu, 1);
        for (const auto& path : cfg.inputs) {
            const Graph g = io::read_edge_list(path);
            if (hist.graphs() > 0 && g.n != hist.n())
                throw DomainError("input graphs have different sizes");
            hist.add(g);
        }
        ens.n = hist.n();
    }
    const auto p = validate(ens);
    ComparisonOptions opt;
    opt.k_max = cfg.k_max;
    opt.with_finite_n = cfg.finite_n;
    const auto rep = compare_to_theory(hist, p, opt);

    const auto emp = hist.pmf();
    const auto theory = DegreeLaw(p).pmf_table(cfg.k_max);
    const auto finite = cfg.finite_n ? finite_n_degree_pmf(p, cfg.k_max) : std::vector<double>{};
    std::vector<std::vector<double>> rows;
    for (std::int64_t k = 0; k <= cfg.k_max; ++k) {
        const auto i = static_cast<std::size_t>(k);
        rows.push_back({static_cast<double>(k), i < emp.size() ? emp[i] : 0.0, theory[i],
                        cfg.finite_n ? finite[i] : std::nan("")});
    }
    io::atomic_write(cfg.out_csv,
                     io::format_csv({"k", "empirical_pmf", "theory_pmf_asymptotic", "theory_pmf_finite_n"}, rows));

    // Log-binned companion table for plotting.
    const auto theory_long = DegreeLaw(p).pmf_table(std::max<std::int64_t>(hist.max_degree(), 1));
    const auto emp_bins = log_binned(emp);
    const auto th_bins = log_binned(theory_long);
    std::vector<std::vector<double>> bin_rows;
    for (std::size_t b = 0; b < emp_bins.size(); ++b)
        bin_rows.push_back({static_cast<double>(emp_bins[b].k_lo), static_cast<double>(emp_bins[b].k_hi),
                            emp_bins[b].k_center, emp_bins[b].density,
                            b < th_bins.size() ? th_bins[b].density : 0.0});
    auto binned_path = cfg.out_csv;
    binned_path.replace_extension();
    binned_path += "_logbinned.csv";
    io::atomic_write(binned_path,
                     io::format_csv({"k_lo", "k_hi", "k_center", "empirical_density", "theory_density"}, bin_rows));

    std::vector<std::string> inputs;
    for (const auto& path : cfg.inputs)
        inputs.push_back(path.string());
    json summary = {{"schema_version", kSchemaVersion},
                    {"command", "degrees"},
                    {"config",
                     {{"generate", to_json(cfg.generate)},
                      {"inputs", inputs},
                      {"k_max", cfg.k_max},
                      {"finite_n", cfg.finite_n},
                      {"out_csv", cfg.out_csv.string()}}},
                    {"params", params_json(p)},
                    {"graphs", hist.graphs()},
                    {"avg_degree", rep.avg_degree},
                    {"avg_degree_se", rep.avg_degree_se},
                    {"avg_degree_finite_n", rep.avg_degree_finite_n},
                    {"nu", rep.nu},
                    {"tv_asymptotic", rep.tv_asymptotic},
                    {"tail_alpha", rep.tail_alpha},
                    {"tail_k_min", rep.tail_k_min},
                    {"avg_within_3se", rep.avg_within_3se}};
    if (cfg.finite_n)
        summary["tv_finite_n"] = rep.tv_finite_n;
    write_json(cfg.out_json, summary);
    return summary.dump(2);
}

std::string cmd_entropy(const EntropyConfig& cfg)
{
    if (cfg.sizes.empty())
        throw DomainError("sizes must not be empty");
    const auto kind = kernel_from_string(cfg.kernel);
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
        const auto p = derive_params(cfg.gamma, cfg.nu, cfg.sizes[i]);
        if (i > 0 && cfg.sizes[i] <= cfg.sizes[i - 1])
            throw DomainError("sizes must be strictly increasing");
        if (cfg.bounds && !(p.r_n() > 0.0))
            throw DomainError("Gibbs bounds need n > beta^2 nu");
    }
    std::vector<std::vector<double>> rows;
    std::vector<RescaledEntropy> series;
    for (const auto n : cfg.sizes) {
        const auto p = derive_params(cfg.gamma, cfg.nu, n);
        const double sigma = graphon_entropy(p, kind);
        const auto nd = static_cast<double>(n);
        const double rescaled = nd * sigma / std::log(nd);
        series.push_back({n, sigma, rescaled});
        if (cfg.bounds) {
            const auto rep = gibbs_entropy_bounds(p);
            rows.push_back({nd, sigma, rescaled, rep.lower_rescaled(), rep.upper_rescaled(), rep.s_m,
                            static_cast<double>(rep.partition.m)});
        } else {
            rows.push_back({nd, sigma, rescaled, std::nan(""), std::nan(""), std::nan(""), std::nan("")});
        }
    }
    io::atomic_write(cfg.out_csv, io::format_csv({"n", "sigma", "n_sigma_over_log_n", "gibbs_lower_rescaled",
                                                  "gibbs_upper_rescaled", "s_m", "m_n"},
                                                 rows));
    json summary = {{"schema_version", kSchemaVersion},
                    {"command", "entropy"},
                    {"config",
                     {{"gamma", cfg.gamma},
                      {"nu", cfg.nu},
                      {"sizes", cfg.sizes},
                      {"kernel", std::string(to_string(kind))},
                      {"bounds", cfg.bounds},
                      {"out_csv", cfg.out_csv.string()}}}};
    if (series.size() >= 2)
        summary["deviation_slope"] = deviation_slope(series, cfg.nu);
    write_json(sidecar(cfg.out_csv), summary);
    return summary.dump(2);
}

std::string cmd_theory(const TheoryConfig& cfg)
{
    const auto p = validate(cfg.ensemble);
    if (cfg.k_max < 0)
        throw DomainError("k_max must be non-negative");
    if (cfg.tail_points < 2)
        throw DomainError("tail_points must be at least 2");
    const DegreeLaw law(p);
    const auto pmf = law.pmf_table(cfg.k_max);
    std::vector<std::vector<double>> rows;
    double listed = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        rows.push_back({static_cast<double>(k), pmf[k]});
        listed += pmf[k];
    }
    io::atomic_write(cfg.out_dir / "theory_pmf.csv", io::format_csv({"k", "pmf"}, rows));

    const auto mixing = law.mixing();
    const double t_lo = 0.5 * p.pareto_scale();
    const double t_hi = 2.0 * std::sqrt(p.nu() * static_cast<double>(p.n()));
    std::vector<std::vector<double>> tail_rows;
    for (int i = 0; i < cfg.tail_points; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (cfg.tail_points - 1));
        tail_rows.push_back({t, finite_size_degree_tail(p, t), pareto_tail(mixing, t)});
    }
    io::atomic_write(cfg.out_dir / "theory_tail.csv",
                     io::format_csv({"t", "finite_size_tail", "pareto_tail"}, tail_rows));

    json summary = {{"schema_version", kSchemaVersion},
                    {"command", "theory"},
                    {"config",
                     {{"ensemble", to_json(cfg.ensemble)},
                      {"k_max", cfg.k_max},
                      {"tail_points", cfg.tail_points},
                      {"out_dir", cfg.out_dir.string()}}},
                    {"params", params_json(p)},
                    {"expected_avg_degree_finite_n", expected_avg_degree_finite_n(p)},
                    {"expected_avg_degree_classical", expected_avg_degree_classical(p)},
                    {"epsilon_n", finite_size_epsilon(p)},
                    {"pmf_listed_mass", listed},
                    {"normalization_truncation", law.normalization_truncation()}};
    if (p.r_n() > 0.0)
        summary["omega_n"] = omega_n(p);
    write_json(cfg.out_dir / "theory.json", summary);
    return summary.dump(2);
}

std::string cmd_scm_solve(const ScmSolveConfig& cfg)
{
    if (!(cfg.tol > 0.0))
        throw DomainError("tol must be positive");
    std::vector<double> k;
    std::vector<double> truth;
    if (!cfg.input.empty()) {
        std::ifstream in(cfg.input);
        if (!in)
            throw IoError("cannot open " + cfg.input.string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            std::string tok;
            if (!(ss >> tok) || tok.front() == '#')
                continue;
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw ParseError("expected a number, got '" + tok + "'", lineno);
            k.push_back(v);
        }
    } else {
        const auto p = validate(cfg.ensemble);
        const auto frozen = hscm_to_scm(sample_coordinates(p, cfg.seed));
        k = frozen.expected_degrees;
        truth = frozen.multipliers;
    }
    const auto inst = solve_scm(k, cfg.tol);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < k.size(); ++i)
        rows.push_back({static_cast<double>(i), k[i], inst.multipliers[i]});
    io::atomic_write(cfg.out_csv, io::format_csv({"i", "k", "lambda"}, rows));

    json summary = {{"schema_version", kSchemaVersion},
                    {"command", "scm-solve"},
                    {"config",
                     {{"input", cfg.input.string()},
                      {"ensemble", to_json(cfg.ensemble)},
                      {"seed", cfg.seed},
                      {"tol", cfg.tol},
                      {"out_csv", cfg.out_csv.string()}}},
                    {"n", inst.n},
                    {"residual", inst.residual},
                    {"iterations", inst.iterations}};
    if (!truth.empty()) {
        double err = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i)
            err = std::max(err, std::abs(truth[i] - inst.multipliers[i]));
        summary["max_multiplier_error"] = err;
    }
    write_json(sidecar(cfg.out_csv), summary);
    return summary.dump(2);
}

std::string cmd_ingest(const IngestConfig& cfg)
{
    const auto res = ingest_edge_list(cfg.input);
    const auto& h = res.histogram;
    const auto pmf = h.pmf();
    std::vector<std::vector<double>> rows;
    const std::int64_t top = std::max(cfg.k_max, h.max_degree());
    for (std::int64_t k = 0; k <= top; ++k)
        rows.push_back({static_cast<double>(k), static_cast<double>(h.count(k)),
                        k < static_cast<std::int64_t>(pmf.size()) ? pmf[static_cast<std::size_t>(k)] : 0.0});
    io::atomic_write(cfg.out_csv, io::format_csv({"k", "count", "pmf"}, rows));
    json summary = {{"schema_version", kSchemaVersion},
                    {"command", "ingest"},
                    {"config",
                     {{"input", cfg.input.string()},
                      {"k_max", cfg.k_max},
                      {"tail", cfg.tail},
                      {"out_csv", cfg.out_csv.string()}}},
                    {"n", res.graph.n},
                    {"edges", res.graph.edge_count()},
                    {"duplicates", res.duplicates},
                    {"self_loops", res.self_loops},
                    {"one_indexed", res.one_indexed},
                    {"avg_degree", h.average_degree()}};
    if (cfg.tail) {
        try {
            const auto fit = tail_fit_auto(h);
            summary["tail_alpha"] = fit.alpha;
            summary["tail_k_min"] = fit.k_min;
            summary["tail_ks"] = fit.ks;
        } catch (const InsufficientTailError& e) {
            summary["tail_error"] = e.what();
        }
    }
    write_json(cfg.out_json, summary);
    return summary.dump(2);
}

int exit_code_for(const std::exception& e) noexcept
{
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const std::filesystem::filesystem_error*>(&e))
        return 4;
    if (dynamic_cast<const NumericalError*>(&e))
        return 3;
    if (dynamic_cast<const DomainError*>(&e))
        return 2;
    return 1;
}

} // namespace hscm::cli

#include "hscm/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_ensemble(CLI::App* app, hscm::cli::EnsembleConfig& e)
{
    app->add_option("--gamma", e.gamma, "measure exponent (> 1)")->capture_default_str();
    app->add_option("--nu", e.nu, "target average degree (> 0)")->capture_default_str();
    app->add_option("--n", e.n, "number of nodes")->capture_default_str();
}

void add_generation(CLI::App* app, hscm::cli::GenerateConfig& g, bool seed_required)
{
    add_ensemble(app, g.ensemble);
    app->add_option("--replicas", g.replicas, "number of graphs")->capture_default_str();
    auto* seed = app->add_option("--seed", g.seed, "master seed");
    if (seed_required)
        seed->required();
    app->add_option("--sampler", g.sampler, "fast | naive | growing")->capture_default_str();
    app->add_option("--growth", g.growth, "poisson | increment (growing sampler)")->capture_default_str();
    app->add_flag("--allow-large", g.allow_large, "lift the naive sampler size guard");
    app->add_option("--jobs", g.jobs, "replicas generated in parallel")->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hypersoft configuration model toolkit"};
    app.require_subcommand(1);

    hscm::cli::GenerateConfig gen;
    auto* generate = app.add_subcommand("generate", "sample graphs and write edge lists");
    add_generation(generate, gen, true);
    generate->add_option("--out-dir", gen.out_dir, "output directory")->capture_default_str();

    hscm::cli::DegreesConfig deg;
    auto* degrees = app.add_subcommand("degrees", "empirical vs theoretical degree distribution");
    add_generation(degrees, deg.generate, false);
    degrees->add_option("--input", deg.inputs, "edge-list files (instead of sampling)");
    degrees->add_option("--k-max", deg.k_max, "largest degree in the table")->capture_default_str();
    degrees->add_flag("!--no-finite-n", deg.finite_n, "skip the finite-n reference column");
    degrees->add_option("--out-csv", deg.out_csv)->capture_default_str();
    degrees->add_option("--out-json", deg.out_json)->capture_default_str();

    hscm::cli::EntropyConfig ent;
    auto* entropy = app.add_subcommand("entropy", "graphon entropy series and Gibbs bounds");
    entropy->add_option("--gamma", ent.gamma)->capture_default_str();
    entropy->add_option("--nu", ent.nu)->capture_default_str();
    entropy->add_option("--sizes", ent.sizes, "increasing list of n")->delimiter(',')->capture_default_str();
    entropy->add_option("--kernel", ent.kernel, "fermi-dirac | classical")->capture_default_str();
    entropy->add_flag("!--no-bounds", ent.bounds, "skip the Gibbs bounds");
    entropy->add_option("--out-csv", ent.out_csv)->capture_default_str();

    hscm::cli::TheoryConfig th;
    auto* theory = app.add_subcommand("theory", "degree pmf, expected degree and tail curve");
    add_ensemble(theory, th.ensemble);
    theory->add_option("--k-max", th.k_max)->capture_default_str();
    theory->add_option("--tail-points", th.tail_points)->capture_default_str();
    theory->add_option("--out-dir", th.out_dir)->capture_default_str();

    hscm::cli::ScmSolveConfig scm;
    auto* scm_solve = app.add_subcommand("scm-solve", "solve for soft configuration model multipliers");
    scm_solve->add_option("--input", scm.input, "expected degrees, one per line");
    add_ensemble(scm_solve, scm.ensemble);
    scm_solve->add_option("--seed", scm.seed, "seed of the frozen sample (without --input)");
    scm_solve->add_option("--tol", scm.tol)->capture_default_str();
    scm_solve->add_option("--out-csv", scm.out_csv)->capture_default_str();

    hscm::cli::IngestConfig ing;
    auto* ingest = app.add_subcommand("ingest", "degree statistics of an external edge list");
    ingest->add_option("--input", ing.input)->required();
    ingest->add_option("--k-max", ing.k_max)->capture_default_str();
    ingest->add_flag("!--no-tail", ing.tail, "skip the tail-exponent fit");
    ingest->add_option("--out-csv", ing.out_csv)->capture_default_str();
    ingest->add_option("--out-json", ing.out_json)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::string summary;
        if (*generate)
            summary = hscm::cli::cmd_generate(gen);
        else if (*degrees)
            summary = hscm::cli::cmd_degrees(deg);
        else if (*entropy)
            summary = hscm::cli::cmd_entropy(ent);
        else if (*theory)
            summary = hscm::cli::cmd_theory(th);
        else if (*scm_solve)
            summary = hscm::cli::cmd_scm_solve(scm);
        else
            summary = hscm::cli::cmd_ingest(ing);
        std::cout << summary << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hscm::cli::exit_code_for(e);
    }
}

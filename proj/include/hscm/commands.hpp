#pragma once

// Experiment drivers behind the command-line tool. Each command validates its
// configuration before doing any work, writes its outputs atomically and
// returns a JSON summary (as text).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hscm::cli {

inline constexpr int kSchemaVersion = 1;

struct EnsembleConfig
{
    double gamma = 2.0;
    double nu = 10.0;
    std::int64_t n = 1000;
};

struct GenerateConfig
{
    EnsembleConfig ensemble;
    int replicas = 1;
    std::uint64_t seed = 0;
    std::string sampler = "fast"; ///< fast | naive | growing
    std::string growth = "poisson"; ///< poisson | increment (growing sampler)
    bool allow_large = false;
    unsigned jobs = 1;
    std::filesystem::path out_dir = ".";
};

struct DegreesConfig
{
    GenerateConfig generate; ///< used when `inputs` is empty
    std::vector<std::filesystem::path> inputs;
    std::int64_t k_max = 100;
    bool finite_n = true;
    std::filesystem::path out_csv = "degrees.csv";
    std::filesystem::path out_json = "degrees.json";
};

struct EntropyConfig
{
    double gamma = 2.0;
    double nu = 10.0;
    std::vector<std::int64_t> sizes{1000, 10000, 100000, 1000000};
    std::string kernel = "fermi-dirac";
    bool bounds = true;
    std::filesystem::path out_csv = "entropy.csv";
};

struct TheoryConfig
{
    EnsembleConfig ensemble;
    std::int64_t k_max = 200;
    int tail_points = 200;
    std::filesystem::path out_dir = ".";
};

struct ScmSolveConfig
{
    std::filesystem::path input; ///< one expected degree per line; empty to freeze an HSCM sample
    EnsembleConfig ensemble;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::filesystem::path out_csv = "scm.csv";
};

struct IngestConfig
{
    std::filesystem::path input;
    std::int64_t k_max = 100;
    bool tail = true;
    std::filesystem::path out_csv = "ingest.csv";
    std::filesystem::path out_json = "ingest.json";
};

std::string cmd_generate(const GenerateConfig& cfg);
std::string cmd_degrees(const DegreesConfig& cfg);
std::string cmd_entropy(const EntropyConfig& cfg);
std::string cmd_theory(const TheoryConfig& cfg);
std::string cmd_scm_solve(const ScmSolveConfig& cfg);
std::string cmd_ingest(const IngestConfig& cfg);

/// Process exit code for an exception thrown by a command: 2 configuration
/// or domain error, 3 numerical failure, 4 I/O or parse error, 1 otherwise.
int exit_code_for(const std::exception& e) noexcept;

} // namespace hscm::cli

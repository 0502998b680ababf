// Implementation of the CLI subcommands; each returns a process exit code
// (0 ok, 2 validation error, 3 cap exceeded, 4 partial sweep failure).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emergence::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitPartialFailure = 4;

struct AnalyzeOptions {
    std::string input;
    std::string out_dir;
    double epsilon = 1e-9;
    int max_states = 10;
    int sample_size = 1000;
    std::uint64_t seed = 0;
    std::string timestamp; // empty = now (UTC)
};

struct GreedyOptions {
    std::string input;
    std::string out_dir;
    double epsilon = 1e-9;
    int n_paths = 3;
    int sample_size = 1000;
    std::uint64_t seed = 0;
    bool random_ties = false;
    std::string timestamp;
};

struct GenerateOptions {
    std::string kind; // pa | pinpoint | garden
    std::string out;
    std::string timestamp;
    bool json = false;
    // pa
    int n_nodes = 40;
    int m = 1;
    double alpha = 1.0;
    std::uint64_t seed = 0;
    std::string orientation = "bidirectional";
    // pinpoint
    std::string cycles = "3,2,2";
    double stay = 0.2;
    // garden
    std::string name;
    bool list = false;
};

struct SweepOptions {
    std::string out;
    std::vector<double> alpha_grid{0.5, 1.0, 1.5, 2.0, 2.5};
    int replicates = 5;
    int n_nodes = 40;
    int m = 1;
    std::uint64_t seed = 0;
    int n_paths = 3;
    int sample_size = 100;
    double epsilon = 1e-9;
    bool independent_seeds = false;
    std::string timestamp;
};

int run_analyze(const AnalyzeOptions& opt);
int run_greedy(const GreedyOptions& opt);
int run_generate(const GenerateOptions& opt);
int run_sweep(const SweepOptions& opt);

// ISO-8601 UTC timestamp for manifests; fixed value passthrough when set.
std::string effective_timestamp(const std::string& requested);

} // namespace emergence::cli

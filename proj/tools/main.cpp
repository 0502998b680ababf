#include <CLI11.hpp>

#include "commands.hpp"
#include "emergence/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Causal contribution of every coarse-grained scale of a Markov system: "
                 "exact lattice apportioning, greedy estimation for large systems, "
                 "engineered TPM generators, and a sweep harness."};
    app.set_version_flag("--version", emergence::kToolVersion);
    app.require_subcommand(1);

    using namespace emergence::cli;

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand(
        "analyze", "Exact analysis over the full partition lattice of a TPM");
    analyze->add_option("-i,--input", analyze_opt.input, "TPM file (CSV, or JSON with .json)")
        ->required();
    analyze->add_option("-o,--out", analyze_opt.out_dir, "Output bundle directory")->required();
    analyze->add_option("--epsilon", analyze_opt.epsilon, "Emergence threshold on the gain");
    analyze->add_option("--max-states", analyze_opt.max_states,
                        "Refuse systems larger than this (exit 3)");
    analyze->add_option("--sample-size", analyze_opt.sample_size, "Path sample size for metrics");
    analyze->add_option("--seed", analyze_opt.seed, "Seed for path sampling");
    analyze->add_option("--timestamp", analyze_opt.timestamp,
                        "Fixed manifest timestamp (for reproducible bundles)");

    GreedyOptions greedy_opt;
    auto* greedy = app.add_subcommand(
        "greedy", "Branching greedy estimation of the emergent hierarchy");
    greedy->add_option("-i,--input", greedy_opt.input, "TPM file")->required();
    greedy->add_option("-o,--out", greedy_opt.out_dir, "Output bundle directory")->required();
    greedy->add_option("--n-paths", greedy_opt.n_paths, "Branches per level");
    greedy->add_option("--epsilon", greedy_opt.epsilon, "Emergence threshold on the gain");
    greedy->add_option("--sample-size", greedy_opt.sample_size, "Path sample size for metrics");
    greedy->add_option("--seed", greedy_opt.seed, "Seed (tie-breaking and path sampling)");
    greedy->add_flag("--random-ties", greedy_opt.random_ties,
                     "Break CP ties with a seeded hash instead of canonical order");
    greedy->add_option("--timestamp", greedy_opt.timestamp, "Fixed manifest timestamp");

    GenerateOptions gen_opt;
    auto* generate = app.add_subcommand("generate", "Generate TPM families");
    generate->add_option("kind", gen_opt.kind, "pa | pinpoint | garden")->required();
    generate->add_option("-o,--out", gen_opt.out, "Output TPM file (.csv or .json)");
    generate->add_flag("--json", gen_opt.json, "Write JSON regardless of extension");
    generate->add_option("--n,--nodes", gen_opt.n_nodes, "pa: number of states");
    generate->add_option("--m", gen_opt.m, "pa: edges per new node");
    generate->add_option("--alpha", gen_opt.alpha, "pa: attachment exponent");
    generate->add_option("--seed", gen_opt.seed, "pa: growth seed");
    generate->add_option("--orientation", gen_opt.orientation,
                         "pa: bidirectional | new-to-old");
    generate->add_option("--cycles", gen_opt.cycles, "pinpoint: cycle sizes, e.g. 3,2,2");
    generate->add_option("--stay", gen_opt.stay, "pinpoint: probability of staying");
    generate->add_option("--name", gen_opt.name, "garden: example name");
    generate->add_flag("--list", gen_opt.list, "garden: list available examples");
    generate->add_option("--timestamp", gen_opt.timestamp, "Fixed manifest timestamp");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand(
        "sweep", "Alpha sweep: generate, greedy-analyze, and aggregate metrics");
    sweep->add_option("-o,--out", sweep_opt.out, "Output CSV")->required();
    sweep->add_option("--alpha-grid", sweep_opt.alpha_grid, "Alpha values")->delimiter(',');
    sweep->add_option("--replicates", sweep_opt.replicates, "Networks per alpha");
    sweep->add_option("--n-nodes", sweep_opt.n_nodes, "Network size");
    sweep->add_option("--m", sweep_opt.m, "Edges per new node");
    sweep->add_option("--seed", sweep_opt.seed, "Base seed");
    sweep->add_option("--n-paths", sweep_opt.n_paths, "Greedy branches per level");
    sweep->add_option("--sample-size", sweep_opt.sample_size, "Paths sampled per hierarchy");
    sweep->add_option("--epsilon", sweep_opt.epsilon, "Emergence threshold");
    sweep->add_flag("--independent-seeds", sweep_opt.independent_seeds,
                    "Use a distinct seed per (alpha, replicate) instead of pairing");
    sweep->add_option("--timestamp", sweep_opt.timestamp, "Fixed manifest timestamp");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return run_analyze(analyze_opt);
    if (greedy->parsed()) return run_greedy(greedy_opt);
    if (generate->parsed()) return run_generate(gen_opt);
    if (sweep->parsed()) return run_sweep(sweep_opt);
    return kExitValidation;
}

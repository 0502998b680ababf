#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "emergence/apportion.hpp"
#include "emergence/errors.hpp"
#include "emergence/generators.hpp"
#include "emergence/greedy.hpp"
#include "emergence/io.hpp"
#include "emergence/metrics.hpp"
#include "emergence/version.hpp"

namespace emergence::cli {

namespace fs = std::filesystem;

std::string effective_timestamp(const std::string& requested) {
    if (!requested.empty()) return requested;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << content;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const CapExceededError*>(&e)) return kExitCapExceeded;
    return kExitValidation;
}

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

// Shared bundle writer for the exact and greedy pipelines.
void write_bundle(const fs::path& dir, const AnalysisResult& result,
                  const MetricsReport& metrics, const RunManifest& manifest,
                  const std::string& method) {
    fs::create_directories(dir);
    write_file(dir / "result.json", result_to_json(result, metrics, manifest, method));
    write_file(dir / "hierarchy.dot", export_dot(result.hierarchy));
    write_file(dir / "levels.csv", per_level_csv(result.hierarchy));
    std::string metrics_csv = metrics_csv_header(result.hierarchy.micro_dim);
    metrics_csv += metrics_csv_row("", std::stoull(manifest.config.at("seed")), metrics,
                                   result.hierarchy.emergent_count(),
                                   per_level_mean_delta(result.hierarchy));
    write_file(dir / "metrics.csv", metrics_csv);
    write_file(dir / "manifest.json", manifest_to_json(manifest));
}

// Gain-weighted mean level of the non-anchor members; the microscale state
// count when the hierarchy is empty.
double delta_mass_centroid(const EmergentHierarchy& h) {
    double mass = 0.0, weighted = 0.0;
    for (const auto& [level, members] : h.per_level) {
        for (const auto& [p, dv] : members) {
            if (p == h.anchor || dv <= 0.0) continue;
            mass += dv;
            weighted += dv * level;
        }
    }
    if (mass <= 0.0) return static_cast<double>(h.micro_dim);
    return weighted / mass;
}

} // namespace

int run_analyze(const AnalyzeOptions& opt) {
    try {
        const std::string bytes = read_file_bytes(opt.input);
        const Tpm t = read_tpm_file(opt.input);

        AnalysisConfig cfg;
        cfg.epsilon = opt.epsilon;
        cfg.max_states = opt.max_states;
        AnalysisResult result = analyze(t, cfg);

        MetricsConfig mcfg;
        mcfg.sample_size = opt.sample_size;
        mcfg.seed = opt.seed;
        const MetricsReport metrics = complexity(result.hierarchy, mcfg);

        RunManifest manifest;
        manifest.command = "analyze";
        manifest.tool_version = kToolVersion;
        manifest.timestamp = effective_timestamp(opt.timestamp);
        manifest.input_digest = digest_bytes(bytes);
        manifest.config = {{"epsilon", format_double(opt.epsilon)},
                           {"max_states", std::to_string(opt.max_states)},
                           {"sample_size", std::to_string(opt.sample_size)},
                           {"seed", u64_str(opt.seed)}};

        write_bundle(opt.out_dir, result, metrics, manifest, "exact");
        std::cout << "analyze: n=" << t.n() << " emergent_members="
                  << result.hierarchy.emergent_count() << " complexity="
                  << format_double(metrics.complexity) << "\n";
        return kExitOk;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n"
                  << "hint: `emergence greedy` estimates hierarchies for large systems\n";
        return kExitCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int run_greedy(const GreedyOptions& opt) {
    try {
        const std::string bytes = read_file_bytes(opt.input);
        const Tpm t = read_tpm_file(opt.input);

        GreedyConfig gcfg;
        gcfg.n_paths = opt.n_paths;
        gcfg.seed = opt.seed;
        gcfg.tie_break = opt.random_ties ? TieBreak::SeededRandom : TieBreak::DeterministicCanonical;
        AnalysisConfig cfg;
        cfg.epsilon = opt.epsilon;

        GreedyResult greedy = branching_greedy(t, gcfg, cfg);
        AnalysisResult result;
        result.diagram = std::move(greedy.diagram);
        result.cp = std::move(greedy.sampled_cp);
        result.delta = std::move(greedy.delta);
        result.hierarchy = std::move(greedy.hierarchy);

        MetricsConfig mcfg;
        mcfg.sample_size = opt.sample_size;
        mcfg.seed = opt.seed;
        const MetricsReport metrics = complexity(result.hierarchy, mcfg);

        RunManifest manifest;
        manifest.command = "greedy";
        manifest.tool_version = kToolVersion;
        manifest.timestamp = effective_timestamp(opt.timestamp);
        manifest.input_digest = digest_bytes(bytes);
        manifest.config = {{"epsilon", format_double(opt.epsilon)},
                           {"n_paths", std::to_string(opt.n_paths)},
                           {"sample_size", std::to_string(opt.sample_size)},
                           {"seed", u64_str(opt.seed)},
                           {"tie_break", opt.random_ties ? "seeded-random" : "deterministic-canonical"}};

        write_bundle(opt.out_dir, result, metrics, manifest, "greedy");
        std::cout << "greedy: n=" << t.n() << " sampled=" << result.diagram.node_count()
                  << " emergent_members=" << result.hierarchy.emergent_count()
                  << " complexity=" << format_double(metrics.complexity) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

namespace {

std::vector<int> parse_cycles(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw InvalidConfigError("invalid cycle size '" + tok + "'");
        }
    }
    return out;
}

} // namespace

int run_generate(const GenerateOptions& opt) {
    try {
        if (opt.kind == "garden" && opt.list) {
            for (const auto& ex : garden_examples())
                std::cout << ex.name << "  (n=" << ex.tpm.n() << ")  " << ex.description << "\n";
            return kExitOk;
        }
        if (opt.out.empty()) throw InvalidConfigError("--out is required");

        Tpm t;
        std::map<std::string, std::string> config;
        if (opt.kind == "pa") {
            GrowthConfig cfg;
            cfg.n_nodes = opt.n_nodes;
            cfg.m = opt.m;
            cfg.alpha = opt.alpha;
            cfg.seed = opt.seed;
            if (opt.orientation == "bidirectional")
                cfg.orientation = EdgeOrientation::Bidirectional;
            else if (opt.orientation == "new-to-old")
                cfg.orientation = EdgeOrientation::NewToOld;
            else
                throw InvalidConfigError("orientation must be 'bidirectional' or 'new-to-old'");
            t = grow_pa_tpm(cfg);
            config = {{"kind", "pa"},
                      {"n_nodes", std::to_string(opt.n_nodes)},
                      {"m", std::to_string(opt.m)},
                      {"alpha", format_double(opt.alpha)},
                      {"seed", u64_str(opt.seed)},
                      {"orientation", opt.orientation}};
        } else if (opt.kind == "pinpoint") {
            PinpointSpec spec;
            spec.cycle_sizes = parse_cycles(opt.cycles);
            spec.stay_prob = opt.stay;
            spec.step_prob = 1.0 - opt.stay;
            t = pinpoint_tpm(spec);
            config = {{"kind", "pinpoint"},
                      {"cycles", opt.cycles},
                      {"stay", format_double(opt.stay)},
                      {"target_level", std::to_string(spec.target_level())}};
        } else if (opt.kind == "garden") {
            if (opt.name.empty())
                throw InvalidConfigError("--name is required (or use --list)");
            GardenExample ex = garden_example(opt.name);
            t = ex.tpm;
            config = {{"kind", "garden"}, {"name", opt.name}};
        } else {
            throw InvalidConfigError("unknown generate kind '" + opt.kind + "'");
        }

        const bool as_json = opt.json || (opt.out.size() >= 5 && opt.out.substr(opt.out.size() - 5) == ".json");
        const std::string body = as_json ? write_tpm_json(t) : write_tpm_csv(t);
        if (fs::path(opt.out).has_parent_path())
            fs::create_directories(fs::path(opt.out).parent_path());
        write_file(opt.out, body);

        RunManifest manifest;
        manifest.command = "generate";
        manifest.tool_version = kToolVersion;
        manifest.timestamp = effective_timestamp(opt.timestamp);
        manifest.input_digest = digest_bytes(body);
        manifest.config = std::move(config);
        write_file(opt.out + ".manifest.json", manifest_to_json(manifest));

        std::cout << "generate: wrote " << opt.out << " (n=" << t.n() << ")\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int run_sweep(const SweepOptions& opt) {
    try {
        if (opt.out.empty()) throw InvalidConfigError("--out is required");
        if (opt.replicates < 1) throw InvalidConfigError("replicates must be >= 1");

        const int levels = opt.n_nodes;
        std::string csv = "kind,alpha,replicate,seed,status,s_path,s_row,row_negentropy,complexity,"
                          "n_emergent_nodes,centroid_level";
        for (int l = 1; l <= levels; ++l) csv += ",mean_dcp_l" + std::to_string(l);
        csv += "\n";

        struct RunRow {
            double s_path, s_row, negentropy, complexity, centroid;
            int emergent;
            std::vector<double> per_level;
            bool ok;
        };

        bool any_failed = false;
        for (double alpha : opt.alpha_grid) {
            std::vector<RunRow> rows;
            for (int rep = 0; rep < opt.replicates; ++rep) {
                // Paired seeding reuses the replicate seed across alphas so
                // curves differ only through alpha; independent seeding mixes
                // the alpha into the seed.
                std::uint64_t run_seed = opt.seed + static_cast<std::uint64_t>(rep);
                if (opt.independent_seeds)
                    run_seed = run_seed * 1000003ull + static_cast<std::uint64_t>(std::llround(alpha * 1000));
                RunRow row{};
                std::string status = "ok";
                try {
                    GrowthConfig gcfg;
                    gcfg.n_nodes = opt.n_nodes;
                    gcfg.m = opt.m;
                    gcfg.alpha = alpha;
                    gcfg.seed = run_seed;
                    const Tpm t = grow_pa_tpm(gcfg);

                    GreedyConfig greedy_cfg;
                    greedy_cfg.n_paths = opt.n_paths;
                    greedy_cfg.seed = run_seed;
                    AnalysisConfig acfg;
                    acfg.epsilon = opt.epsilon;
                    GreedyResult result = branching_greedy(t, greedy_cfg, acfg);

                    MetricsConfig mcfg;
                    mcfg.sample_size = opt.sample_size;
                    mcfg.seed = run_seed;
                    const MetricsReport metrics = complexity(result.hierarchy, mcfg);

                    row.s_path = metrics.s_path;
                    row.s_row = metrics.s_row;
                    row.negentropy = metrics.row_negentropy;
                    row.complexity = metrics.complexity;
                    row.centroid = delta_mass_centroid(result.hierarchy);
                    row.emergent = result.hierarchy.emergent_count();
                    row.per_level = per_level_mean_delta(result.hierarchy);
                    row.ok = true;
                } catch (const std::exception& e) {
                    row.ok = false;
                    status = "failed";
                    any_failed = true;
                    std::cerr << "sweep: alpha=" << alpha << " replicate=" << rep
                              << " failed: " << e.what() << "\n";
                }
                csv += "run," + format_double(alpha) + "," + std::to_string(rep) + "," +
                       u64_str(run_seed) + "," + status;
                if (row.ok) {
                    csv += "," + format_double(row.s_path) + "," + format_double(row.s_row) + "," +
                           format_double(row.negentropy) + "," + format_double(row.complexity) + "," +
                           std::to_string(row.emergent) + "," + format_double(row.centroid);
                    for (double v : row.per_level) csv += "," + format_double(v);
                } else {
                    for (int i = 0; i < 6 + levels; ++i) csv += ",";
                }
                csv += "\n";
                if (row.ok) rows.push_back(std::move(row));
            }

            // Aggregate mean and standard error over the successful runs.
            auto emit_aggregate = [&](const std::string& kind, auto&& extract) {
                csv += kind + "," + format_double(alpha) + ",,," +
                       std::to_string(rows.size()) + "_runs";
                const std::size_t k = rows.empty() ? 0 : 6 + rows.front().per_level.size();
                for (std::size_t field = 0; field < (rows.empty() ? std::size_t(6 + levels) : k); ++field) {
                    if (rows.empty()) {
                        csv += ",";
                        continue;
                    }
                    std::vector<double> values;
                    values.reserve(rows.size());
                    for (const auto& r : rows) values.push_back(extract(r, field));
                    double mean = 0.0;
                    for (double v : values) mean += v;
                    mean /= static_cast<double>(values.size());
                    if (kind == "mean") {
                        csv += "," + format_double(mean);
                    } else {
                        double var = 0.0;
                        for (double v : values) var += (v - mean) * (v - mean);
                        const double se = values.size() > 1
                            ? std::sqrt(var / (static_cast<double>(values.size()) - 1.0) /
                                        static_cast<double>(values.size()))
                            : 0.0;
                        csv += "," + format_double(se);
                    }
                }
                csv += "\n";
            };
            auto field_value = [](const RunRow& r, std::size_t field) -> double {
                switch (field) {
                    case 0: return r.s_path;
                    case 1: return r.s_row;
                    case 2: return r.negentropy;
                    case 3: return r.complexity;
                    case 4: return static_cast<double>(r.emergent);
                    case 5: return r.centroid;
                    default: return r.per_level[field - 6];
                }
            };
            emit_aggregate("mean", field_value);
            emit_aggregate("se", field_value);
        }

        if (fs::path(opt.out).has_parent_path())
            fs::create_directories(fs::path(opt.out).parent_path());
        write_file(opt.out, csv);

        RunManifest manifest;
        manifest.command = "sweep";
        manifest.tool_version = kToolVersion;
        manifest.timestamp = effective_timestamp(opt.timestamp);
        manifest.input_digest = "none";
        std::string grid;
        for (double a : opt.alpha_grid) grid += (grid.empty() ? "" : ",") + format_double(a);
        manifest.config = {{"alpha_grid", grid},
                           {"replicates", std::to_string(opt.replicates)},
                           {"n_nodes", std::to_string(opt.n_nodes)},
                           {"m", std::to_string(opt.m)},
                           {"seed", u64_str(opt.seed)},
                           {"n_paths", std::to_string(opt.n_paths)},
                           {"sample_size", std::to_string(opt.sample_size)},
                           {"epsilon", format_double(opt.epsilon)},
                           {"seeding", opt.independent_seeds ? "independent" : "paired"}};
        write_file(opt.out + ".manifest.json", manifest_to_json(manifest));

        std::cout << "sweep: wrote " << opt.out << (any_failed ? " (with failed runs)" : "") << "\n";
        return any_failed ? kExitPartialFailure : kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace emergence::cli

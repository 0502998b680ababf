#include "emergence/greedy.hpp"

#include <algorithm>
#include <unordered_set>

#include "emergence/errors.hpp"
#include "emergence/parallel.hpp"

namespace emergence {

void GreedyConfig::validate() const {
    if (n_paths < 1) throw InvalidConfigError("n_paths must be >= 1");
}

namespace {

// A candidate merge at one level of a descent.
struct Candidate {
    Partition partition; // merged partition of the microscale
    Tpm tpm;             // coarse TPM carrying block weights
    double cp_value = 0.0;
    std::uint64_t tie_key = 0;
};

std::uint64_t seeded_tie_key(const Partition& p, std::uint64_t seed) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
    for (int v : p.assignment()) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0x100000001b3ull;
    }
    return h;
}

bool candidate_before(const Candidate& a, const Candidate& b, TieBreak tie) {
    if (a.cp_value != b.cp_value) return a.cp_value > b.cp_value;
    if (tie == TieBreak::SeededRandom && a.tie_key != b.tie_key)
        return a.tie_key < b.tie_key;
    return a.partition < b.partition;
}

// All pairwise block merges of `current`, evaluated against the carried
// coarse TPM (exact by weight composition), sorted best-first.
std::vector<Candidate> evaluate_merges(const Partition& current, const Tpm& coarse,
                                       const GreedyConfig& cfg) {
    const int k = current.block_count();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    std::vector<Candidate> candidates(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        auto [i, j] = pairs[idx];
        Candidate c;
        c.partition = current.merge_blocks(i, j);
        c.tpm = merge_blocks(coarse, i, j);
        c.cp_value = cp(c.tpm);
        if (cfg.tie_break == TieBreak::SeededRandom)
            c.tie_key = seeded_tie_key(c.partition, cfg.seed);
        candidates[idx] = std::move(c);
    });
    std::sort(candidates.begin(), candidates.end(),
              [&](const Candidate& a, const Candidate& b) {
                  return candidate_before(a, b, cfg.tie_break);
              });
    return candidates;
}

std::pair<std::vector<Partition>, std::vector<double>>
complete_from(Partition start, Tpm coarse, const GreedyConfig& cfg) {
    std::vector<Partition> path{start};
    std::vector<double> cps{cp(coarse)};
    Partition current = std::move(start);
    while (current.block_count() > 1) {
        auto candidates = evaluate_merges(current, coarse, cfg);
        Candidate& best = candidates.front();
        path.push_back(best.partition);
        cps.push_back(best.cp_value);
        current = std::move(best.partition);
        coarse = std::move(best.tpm);
    }
    return {std::move(path), std::move(cps)};
}

} // namespace

std::pair<std::vector<Partition>, std::vector<double>>
greedy_completion(const Tpm& t, const Partition& start, const GreedyConfig& cfg) {
    cfg.validate();
    if (start.size() != t.n())
        throw InvalidPartitionError("start partition does not cover the TPM's states");
    return complete_from(start, coarse_grain(t, start), cfg);
}

GreedyResult branching_greedy(const Tpm& t, const GreedyConfig& cfg, const AnalysisConfig& analysis) {
    cfg.validate();
    analysis.validate();
    if (t.n() < 2) throw InvalidConfigError("branching greedy requires n >= 2");

    GreedyResult result;
    const Partition finest = Partition::finest(t.n());
    result.sampled_cp.emplace(finest, cp(t));

    // Completions are deterministic per start, so each start is run once.
    std::unordered_set<Partition, PartitionHash> completed;

    Partition current = finest;
    Tpm coarse = t;
    while (current.block_count() > 1) {
        auto candidates = evaluate_merges(current, coarse, cfg);
        const int take = std::min<int>(cfg.n_paths, static_cast<int>(candidates.size()));
        for (int c = 0; c < take; ++c) {
            if (!completed.insert(candidates[c].partition).second) continue;
            auto [path, cps] =
                complete_from(candidates[c].partition, candidates[c].tpm, cfg);
            for (std::size_t s = 0; s < path.size(); ++s)
                result.sampled_cp.emplace(path[s], cps[s]); // first seen wins
            result.paths.push_back(std::move(path));
        }
        current = candidates.front().partition;
        coarse = std::move(candidates.front().tpm);
    }

    std::vector<Partition> sampled;
    sampled.reserve(result.sampled_cp.size());
    for (const auto& [p, v] : result.sampled_cp) sampled.push_back(p);
    std::sort(sampled.begin(), sampled.end());

    AnalysisResult apportioned =
        apportion_over(build_hasse(std::move(sampled)), result.sampled_cp, analysis);
    result.diagram = std::move(apportioned.diagram);
    result.delta = std::move(apportioned.delta);
    result.hierarchy = std::move(apportioned.hierarchy);
    return result;
}

} // namespace emergence

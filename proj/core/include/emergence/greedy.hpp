// Branching greedy estimation of the emergent hierarchy for systems too
// large for full lattice enumeration. The heuristic approximates coverage of
// the lattice only: every CP value it reports is the exact CP of that
// partition.
#pragma once

#include <cstdint>
#include <vector>

#include "emergence/apportion.hpp"
#include "emergence/tpm.hpp"

namespace emergence {

enum class TieBreak {
    // Among equal-CP merges the lowest canonical restricted-growth string
    // wins; bit-reproducible regardless of seed.
    DeterministicCanonical,
    // Equal-CP merges ordered by a seeded hash; reproducible per seed.
    SeededRandom,
};

struct GreedyConfig {
    int n_paths = 3;
    std::uint64_t seed = 0;
    TieBreak tie_break = TieBreak::DeterministicCanonical;

    void validate() const;
};

struct GreedyResult {
    CpMap sampled_cp;
    HasseDiagram diagram;
    DeltaCpMap delta;
    EmergentHierarchy hierarchy;
    // Each completion path: a chain of covering merges from its start down to
    // a single block, in spawn order.
    std::vector<std::vector<Partition>> paths;
};

// One greedy coarsening sweep: repeatedly applies the pairwise block merge
// with the highest CP until a single block remains. Returns the visited
// partitions (including `start`) and their CP values.
std::pair<std::vector<Partition>, std::vector<double>>
greedy_completion(const Tpm& t, const Partition& start,
                  const GreedyConfig& cfg = {});

// The full branching estimator: at every level of the main descent the top
// n_paths merge candidates each seed a greedy completion, all sampled
// partitions are collected with their CP, and the apportioning steps run on
// the diagram over the sampled set.
GreedyResult branching_greedy(const Tpm& t, const GreedyConfig& cfg = {},
                              const AnalysisConfig& analysis = {});

} // namespace emergence

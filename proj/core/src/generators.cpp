#include "emergence/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "emergence/errors.hpp"

namespace emergence {

void GrowthConfig::validate() const {
    if (n_nodes < 2) throw InvalidConfigError("growth requires n_nodes >= 2");
    if (m < 1) throw InvalidConfigError("m must be >= 1");
    if (m >= n_nodes) throw InvalidConfigError("m must be smaller than n_nodes");
    if (!(alpha >= 0.0)) throw InvalidConfigError("alpha must be >= 0");
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Weighted draw without replacement from `candidates` with weight
// degree^alpha; removes the winner.
int draw_target(std::vector<int>& candidates, const std::vector<int>& degree,
                double alpha, std::mt19937_64& rng) {
    double total = 0.0;
    for (int c : candidates) total += std::pow(static_cast<double>(degree[c]), alpha);
    double r = uniform01(rng) * total;
    std::size_t chosen = candidates.size() - 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        r -= std::pow(static_cast<double>(degree[candidates[i]]), alpha);
        if (r <= 0.0) {
            chosen = i;
            break;
        }
    }
    const int target = candidates[chosen];
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(chosen));
    return target;
}

} // namespace

std::vector<std::vector<int>> grow_pa_adjacency(const GrowthConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_nodes;
    const bool directed = cfg.orientation == EdgeOrientation::NewToOld;
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    // Total degree, used for preferential attachment in both orientations.
    std::vector<int> degree(n, 0);

    auto link = [&](int from, int to) {
        adj[from][to] = 1;
        if (!directed) adj[to][from] = 1;
        ++degree[from];
        ++degree[to];
    };

    // Seed topology: two mutually connected nodes, so every node has nonzero
    // degree before the first preferential draw.
    if (directed) {
        link(0, 1);
        link(1, 0);
    } else {
        link(0, 1);
    }

    std::mt19937_64 rng(cfg.seed);
    for (int v = 2; v < n; ++v) {
        std::vector<int> candidates;
        candidates.reserve(v);
        for (int u = 0; u < v; ++u) candidates.push_back(u);
        const int edges = std::min(cfg.m, v);
        for (int e = 0; e < edges; ++e) {
            const int target = draw_target(candidates, degree, cfg.alpha, rng);
            link(v, target);
        }
    }
    return adj;
}

Tpm grow_pa_tpm(const GrowthConfig& cfg) {
    const auto adj = grow_pa_adjacency(cfg);
    const int n = cfg.n_nodes;
    std::vector<double> rows(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        int out = std::accumulate(adj[i].begin(), adj[i].end(), 0);
        if (out == 0)
            throw ComputeError("grown node has no out-transitions");
        for (int j = 0; j < n; ++j)
            if (adj[i][j]) rows[static_cast<std::size_t>(i) * n + j] = 1.0 / out;
    }
    return Tpm::trusted(std::move(rows), n, std::vector<std::int64_t>(n, 1));
}

int PinpointSpec::state_count() const {
    return std::accumulate(cycle_sizes.begin(), cycle_sizes.end(), 0);
}

void PinpointSpec::validate() const {
    if (cycle_sizes.empty()) throw InvalidConfigError("pinpoint spec needs at least one cycle");
    for (int c : cycle_sizes)
        if (c < 1) throw InvalidConfigError("cycle sizes must be >= 1");
    if (!(stay_prob >= 0.0) || !(step_prob >= 0.0) ||
        std::abs(stay_prob + step_prob - 1.0) > 1e-12)
        throw InvalidConfigError("stay_prob + step_prob must equal 1");
}

Partition PinpointSpec::target_partition() const {
    validate();
    std::vector<int> assignment;
    assignment.reserve(state_count());
    for (std::size_t b = 0; b < cycle_sizes.size(); ++b)
        assignment.insert(assignment.end(), cycle_sizes[b], static_cast<int>(b));
    return Partition(std::move(assignment));
}

Tpm pinpoint_tpm(const PinpointSpec& spec) {
    spec.validate();
    const int n = spec.state_count();
    std::vector<double> rows(static_cast<std::size_t>(n) * n, 0.0);
    int base = 0;
    for (int size : spec.cycle_sizes) {
        for (int k = 0; k < size; ++k) {
            const int s = base + k;
            const int next = base + (k + 1) % size;
            if (next == s) {
                rows[static_cast<std::size_t>(s) * n + s] = 1.0; // 1-cycle: fixed point
            } else {
                rows[static_cast<std::size_t>(s) * n + s] = spec.stay_prob;
                rows[static_cast<std::size_t>(s) * n + next] = spec.step_prob;
            }
        }
        base += size;
    }
    return Tpm::trusted(std::move(rows), n, std::vector<std::int64_t>(n, 1));
}

namespace {

Tpm from_rows(const std::vector<std::vector<double>>& rows) {
    return Tpm::validate(rows);
}

// Five states: a lingering source feeding a noisy two-state cycle that
// drains into a pair of mixing sinks. Tuned so the (source)(cycle)(sinks)
// scale carries the largest gain among proper coarse-grainings and the
// emergent member set has exactly five scales.
Tpm source_cycle_sinks() {
    return from_rows({
        {0.200, 0.480, 0.320, 0.000, 0.000},
        {0.000, 0.025, 0.475, 0.375, 0.125},
        {0.000, 0.475, 0.025, 0.125, 0.375},
        {0.000, 0.000, 0.000, 0.500, 0.500},
        {0.000, 0.000, 0.000, 0.500, 0.500},
    });
}

// Six states in three pairs; the pair-to-pair map is near-deterministic
// while states mix within their own pair, so pairing the states recovers a
// clean three-state cycle.
Tpm noisy_pairs() {
    auto pair_rows = [](int self, int next) {
        std::vector<double> r0(6, 0.0), r1(6, 0.0);
        // stay mass 0.05 split over the own pair, advance mass split 0.75/0.25
        r0[self * 2] = 0.025;
        r0[self * 2 + 1] = 0.025;
        r0[next * 2] = 0.7125;
        r0[next * 2 + 1] = 0.2375;
        r1[self * 2] = 0.025;
        r1[self * 2 + 1] = 0.025;
        r1[next * 2] = 0.2375;
        r1[next * 2 + 1] = 0.7125;
        return std::pair{r0, r1};
    };
    std::vector<std::vector<double>> rows;
    for (int p = 0; p < 3; ++p) {
        auto [r0, r1] = pair_rows(p, (p + 1) % 3);
        rows.push_back(r0);
        rows.push_back(r1);
    }
    return from_rows(rows);
}

// Eight states in two classes; every state of one class transitions
// uniformly into the other class.
Tpm equivalence_classes() {
    std::vector<std::vector<double>> rows(8, std::vector<double>(8, 0.0));
    for (int i = 0; i < 4; ++i)
        for (int j = 4; j < 8; ++j) rows[i][j] = 0.25;
    for (int i = 4; i < 8; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = 0.25;
    return from_rows(rows);
}

// Four noisy pairs arranged in a ring; contracting the pairs yields a clean
// four-state permutation, so the hierarchy peaks at the mesoscale.
Tpm mesoscale() {
    std::vector<std::vector<double>> rows(8, std::vector<double>(8, 0.0));
    for (int p = 0; p < 4; ++p) {
        const int next = (p + 1) % 4;
        for (int k = 0; k < 2; ++k) {
            rows[p * 2 + k][next * 2] = 0.5;
            rows[p * 2 + k][next * 2 + 1] = 0.5;
        }
    }
    return from_rows(rows);
}

// Deterministic halving tree: every transition is certain but the targets
// collide, so the transitions are fully deterministic yet degenerate.
Tpm deterministic_degenerate() {
    std::vector<std::vector<double>> rows(8, std::vector<double>(8, 0.0));
    for (int i = 0; i < 8; ++i) rows[i][i / 2] = 1.0;
    return from_rows(rows);
}

// Three sources feeding a three-state processing cycle that drains into two
// alternating sinks.
Tpm modular_pipeline() {
    std::vector<std::vector<double>> rows(8, std::vector<double>(8, 0.0));
    for (int s = 0; s < 3; ++s)
        for (int c = 3; c < 6; ++c) rows[s][c] = 1.0 / 3.0;
    for (int c = 3; c < 6; ++c) {
        const int next = c == 5 ? 3 : c + 1;
        rows[c][next] = 0.8;
        rows[c][6] = 0.1;
        rows[c][7] = 0.1;
    }
    rows[6][7] = 1.0;
    rows[7][6] = 1.0;
    return from_rows(rows);
}

} // namespace

std::vector<GardenExample> garden_examples() {
    std::vector<GardenExample> out;
    out.push_back({"source-cycle-sinks",
                   "5 states: a source, a noisy 2-state cycle, and 2 mixing sinks",
                   source_cycle_sinks()});
    out.push_back({"noisy-pairs",
                   "6 states in 3 pairs: within-pair mixing, near-deterministic pair map",
                   noisy_pairs()});
    out.push_back({"equivalence-classes",
                   "8 states in 2 classes transitioning uniformly into each other",
                   equivalence_classes()});
    out.push_back({"twin-cycles",
                   "8 states: two disjoint 4-state diffusion cycles (stay 0.2 / step 0.8)",
                   pinpoint_tpm({{4, 4}})});
    out.push_back({"mesoscale",
                   "8 states: 4 noisy pairs in a ring; pairing recovers a permutation",
                   mesoscale()});
    out.push_back({"deterministic-degenerate",
                   "8 states: deterministic halving tree with colliding targets",
                   deterministic_degenerate()});
    out.push_back({"modular-pipeline",
                   "8 states: 3 sources, a 3-cycle processor, 2 alternating sinks",
                   modular_pipeline()});
    return out;
}

GardenExample garden_example(const std::string& name) {
    for (auto& ex : garden_examples())
        if (ex.name == name) return ex;
    throw InvalidConfigError("unknown garden example '" + name + "'");
}

std::vector<std::string> garden_example_names() {
    std::vector<std::string> out;
    for (const auto& ex : garden_examples()) out.push_back(ex.name);
    return out;
}

} // namespace emergence

// TPM families with engineered emergence profiles: preferential-attachment
// growth, pinpoint-emergence cycle systems, and a set of small frozen
// example systems used as fixtures throughout the tests and docs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emergence/tpm.hpp"

namespace emergence {

enum class EdgeOrientation {
    // Grown edges are traversable in both directions before row
    // normalization; every node is guaranteed out-transitions (default).
    Bidirectional,
    // Grown edges run from the new node to its chosen targets; the two seed
    // nodes link mutually so no row is empty.
    NewToOld,
};

struct GrowthConfig {
    int n_nodes = 40;
    int m = 1;          // edges per new node
    double alpha = 1.0; // attachment probability ~ degree^alpha
    std::uint64_t seed = 0;
    EdgeOrientation orientation = EdgeOrientation::Bidirectional;

    void validate() const;
};

struct PinpointSpec {
    // Disjoint diffusion cycles; size-1 entries degenerate to deterministic
    // fixed points. The engineered macroscale contracts each cycle to one
    // state, so its level is the number of entries.
    std::vector<int> cycle_sizes;
    double stay_prob = 0.2;
    double step_prob = 0.8;

    int state_count() const;
    int target_level() const { return static_cast<int>(cycle_sizes.size()); }

    // The partition that contracts each cycle to a single state.
    Partition target_partition() const;

    void validate() const;
};

// Grows a network by preferential attachment (attachment probability
// proportional to degree^alpha) and converts it into a TPM by splitting each
// node's transition probability uniformly over its neighbors. alpha = 1 is
// classic scale-free growth; alpha > 1 congeals toward a star.
Tpm grow_pa_tpm(const GrowthConfig& cfg);

// Adjacency of the grown network, for structural checks.
std::vector<std::vector<int>> grow_pa_adjacency(const GrowthConfig& cfg);

// Block-diagonal diffusion-cycle TPM: each cycle has stay_prob on the
// diagonal and step_prob to the next state along the cycle.
Tpm pinpoint_tpm(const PinpointSpec& spec);

struct GardenExample {
    std::string name;
    std::string description;
    Tpm tpm;
};

// Frozen small systems exhibiting distinct hierarchy shapes. Probabilities
// are fixed constants; all claims in the tests are made against these exact
// instances.
std::vector<GardenExample> garden_examples();

// Lookup by name; throws InvalidConfig when unknown.
GardenExample garden_example(const std::string& name);

std::vector<std::string> garden_example_names();

} // namespace emergence

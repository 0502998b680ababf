// The causal apportioning pipeline: CP on every scale, gains relative to
// lattice ancestors, and extraction of the emergent hierarchy.
#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "emergence/lattice.hpp"
#include "emergence/partition.hpp"
#include "emergence/tpm.hpp"

namespace emergence {

struct AnalysisConfig {
    // A scale is emergent when its gain exceeds this threshold; separates
    // float noise from genuine gains.
    double epsilon = 1e-9;

    // Full-enumeration guard for analyze(); larger systems should use the
    // branching greedy estimator.
    int max_states = kDefaultEnumerationCap;

    void validate() const;
};

using CpMap = std::unordered_map<Partition, double, PartitionHash>;
using DeltaCpMap = std::unordered_map<Partition, double, PartitionHash>;

// The sublattice of scales with positive gains plus the finest node, which is
// always retained as the path anchor.
struct EmergentHierarchy {
    HasseDiagram diagram;
    DeltaCpMap delta;
    Partition anchor;
    int micro_dim = 0; // L, the microscale state count

    // Block count -> (partition, delta CP) for every member, anchor included.
    std::map<int, std::vector<std::pair<Partition, double>>> per_level;

    int member_count() const { return diagram.node_count(); }

    // Members beyond the anchor.
    int emergent_count() const { return diagram.node_count() - 1; }

    // Member count as reported in results: the anchor is included when its
    // own gain clears epsilon.
    int reported_member_count(double epsilon) const;
};

struct AnalysisResult {
    HasseDiagram diagram;
    CpMap cp;
    DeltaCpMap delta;
    EmergentHierarchy hierarchy;
};

// CP of the coarse-graining of `t` by every node. Evaluations are
// independent; runs across the configured worker count.
CpMap compute_cp_all(const Tpm& t, const std::vector<Partition>& nodes);

// Gain of each node relative to its ancestors: CP minus the maximum CP of
// any strictly finer node (0 baseline for the finest). Negative values are
// kept as-is.
DeltaCpMap delta_cp(const HasseDiagram& h, const CpMap& cps);

// Members are the nodes with delta above cfg.epsilon; the finest node of `h`
// is always retained as anchor. The sub-diagram is rebuilt over the members.
EmergentHierarchy emergent_set(const HasseDiagram& h, const DeltaCpMap& d, const AnalysisConfig& cfg);

// Full exact pipeline over the complete partition lattice of t's states.
AnalysisResult analyze(const Tpm& t, const AnalysisConfig& cfg = {});

// Shared by the exact and greedy pipelines: delta + hierarchy from an
// already-built diagram and CP map. The finest node must be present.
AnalysisResult apportion_over(HasseDiagram diagram, CpMap cps, const AnalysisConfig& cfg);

// Mean positive gain per level (1..micro_dim), the profile data behind the
// per-level plots; empty levels are 0.
std::vector<double> per_level_mean_delta(const EmergentHierarchy& h);

} // namespace emergence

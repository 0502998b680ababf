// Enumeration of set partitions, Bell/Stirling counts, and Hasse diagrams of
// the refinement order with ancestor queries and bottom-to-top path counting.
//
// Orientation: a partition is finer than another when each of its blocks is
// contained in a block of the other. Edges of a HasseDiagram run from the
// finer node to the coarser node, so "up" is toward fewer blocks.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>
#include <vector>

#include "emergence/partition.hpp"

namespace emergence {

// Guard for full-lattice enumeration; Bell(12) is ~4.2M.
inline constexpr int kDefaultEnumerationCap = 12;

// Exact Bell number; n <= 25 keeps the value inside 64 bits.
std::uint64_t bell(int n);

// Exact Stirling number of the second kind; same cap as bell().
std::uint64_t stirling2(int n, int k);

// Streams every set partition of {0..n-1} exactly once, in lexicographic
// restricted-growth order.
class PartitionEnumerator {
public:
    explicit PartitionEnumerator(int n, int cap = kDefaultEnumerationCap);

    // Returns false when exhausted.
    bool next(Partition& out);

private:
    int n_;
    bool done_ = false;
    bool first_ = true;
    std::vector<int> rgs_;
    std::vector<int> max_prefix_;
};

// Materializes the full lattice (all Bell(n) partitions, canonical order).
std::vector<Partition> enumerate_partitions(int n, int cap = kDefaultEnumerationCap);

class HasseDiagram {
public:
    HasseDiagram() = default;

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Partition>& nodes() const { return nodes_; }
    const Partition& node(int idx) const { return nodes_[idx]; }

    // Index lookup; throws NodeNotFound when absent.
    int index_of(const Partition& p) const;
    bool contains(const Partition& p) const;

    // Covering edges as (finer index, coarser index) adjacency.
    const std::vector<std::vector<int>>& up_edges() const { return up_; }
    const std::vector<std::vector<int>>& down_edges() const { return down_; }
    int edge_count() const { return edge_count_; }

    // Block count -> node indices, coarsest level (1 block) first.
    const std::map<int, std::vector<int>>& level_index() const { return levels_; }

    // Strictly finer nodes reachable downward from p.
    std::vector<Partition> ancestors(const Partition& p) const;
    std::vector<int> ancestor_indices(int idx) const;

    // Indices of nodes with no outgoing (coarsening) edge.
    std::vector<int> maximal_nodes() const;

    static HasseDiagram build(std::vector<Partition> nodes);

private:
    std::vector<Partition> nodes_;
    std::unordered_map<Partition, int, PartitionHash> index_;
    std::vector<std::vector<int>> up_;
    std::vector<std::vector<int>> down_;
    std::map<int, std::vector<int>> levels_;
    int edge_count_ = 0;

    void add_edge(int finer, int coarser);
    void build_full_lattice_edges();
    void build_subset_edges();
};

// Builds the diagram over the given node set. For the full lattice the
// covering edges are exactly the merge-two-blocks pairs; for arbitrary
// subsets they are the transitive reduction of the restricted order.
HasseDiagram build_hasse(std::vector<Partition> nodes);

// Exact path counting plus uniform sampling of bottom-to-top covering-edge
// paths. Built once per (diagram, bottom, top set) and then cheap to query.
class PathSystem {
public:
    // Paths from `bottom` to the single node `top`.
    PathSystem(const HasseDiagram& h, const Partition& bottom, const Partition& top);

    // Paths from `bottom` to every maximal node of the diagram.
    PathSystem(const HasseDiagram& h, const Partition& bottom);

    std::uint64_t count() const { return total_; }

    // Draws one path uniformly over all counted paths; returns node indices
    // from bottom to a top node. Deterministic given the rng state.
    std::vector<int> sample(std::mt19937_64& rng) const;

    // Enumerates all paths; only valid when count() is small.
    std::vector<std::vector<int>> enumerate_all(std::uint64_t limit) const;

    const HasseDiagram& diagram() const { return *h_; }

private:
    const HasseDiagram* h_;
    int bottom_ = -1;
    std::vector<char> is_top_;
    std::vector<std::uint64_t> paths_to_top_; // per node: paths from node to any top
    std::uint64_t total_ = 0;

    void init(const std::vector<int>& tops);
};

// Convenience matching the operation-level contract: exact count of
// bottom->top paths. Throws NoPath when none exists.
std::uint64_t count_paths(const HasseDiagram& h, const Partition& bottom, const Partition& top);

} // namespace emergence

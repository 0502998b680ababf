// Set partitions of {0..n-1} in restricted-growth-string canonical form.
// The assignment vector maps each state index to a block id such that the
// first occurrence of every block id appears in increasing order; this makes
// equality, hashing and ordering cheap and unique per partition.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace emergence {

class Partition {
public:
    Partition() = default;

    // Canonicalizes an arbitrary block-id labeling.
    explicit Partition(std::vector<int> assignment);

    // Finest partition: every state its own block.
    static Partition finest(int n);

    // Coarsest partition: one block.
    static Partition coarsest(int n);

    // Builds from explicit blocks; they must be disjoint and cover {0..n-1}.
    static Partition from_blocks(const std::vector<std::vector<int>>& blocks, int n);

    // Parses either the restricted-growth form ("00122" or "0,0,1,2,2")
    // or the block form "(0 1)(2)(3 4)".
    static Partition parse(const std::string& text);

    int size() const { return static_cast<int>(assignment_.size()); }
    int block_count() const { return block_count_; }
    int block_of(int state) const { return assignment_[state]; }
    const std::vector<int>& assignment() const { return assignment_; }

    // Blocks in canonical order (block id = position).
    std::vector<std::vector<int>> blocks() const;

    bool is_finest() const { return block_count_ == size(); }
    bool is_coarsest() const { return block_count_ == 1; }

    // Merges two blocks (by block id) and recanonicalizes.
    Partition merge_blocks(int block_a, int block_b) const;

    // Restricted-growth render: compact digits when every id fits one digit,
    // comma-separated otherwise. parse() accepts both, so round trips are
    // exact for any n.
    std::string to_string() const;

    // Block render, e.g. "(0 1)(2)(3 4)".
    std::string to_block_string() const;

    bool operator==(const Partition& other) const { return assignment_ == other.assignment_; }
    bool operator!=(const Partition& other) const { return assignment_ != other.assignment_; }

    // Lexicographic on the assignment; the canonical tie-break order.
    bool operator<(const Partition& other) const { return assignment_ < other.assignment_; }

private:
    std::vector<int> assignment_;
    int block_count_ = 0;

    void canonicalize();
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const noexcept {
        // FNV-1a over the assignment words.
        std::size_t h = 14695981039346656037ull;
        for (int v : p.assignment()) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// True iff `a` is finer than or equal to `b`: every block of `a` is contained
// in a block of `b`. Reflexive, antisymmetric, transitive.
bool refines(const Partition& a, const Partition& b);

// True iff `b` merges exactly two blocks of `a` (the covering relation of the
// full partition lattice).
bool covers(const Partition& a, const Partition& b);

// Applies a state relabeling sigma (new index = sigma[old index]).
Partition relabel(const Partition& p, const std::vector<int>& sigma);

} // namespace emergence

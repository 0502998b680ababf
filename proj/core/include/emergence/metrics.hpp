// Complexity of an emergent hierarchy: entropy of gains along bottom-to-top
// paths, differentiation of gains within levels (row negentropy), and their
// product, the emergent complexity.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emergence/apportion.hpp"

namespace emergence {

enum class PathAggregate {
    Mean, // average of per-path entropies (default)
    Sum,  // plain sum, for comparison
};

enum class UndefinedPaths {
    CountAsZero, // zero-total-gain paths contribute entropy 0 (default)
    Skip,        // drop them from the average
};

struct MetricsConfig {
    int sample_size = 100;
    std::uint64_t seed = 0;
    PathAggregate path_aggregate = PathAggregate::Mean;
    UndefinedPaths undefined_paths = UndefinedPaths::CountAsZero;

    void validate() const;
};

// Gains along one bottom-to-top path, normalized into a distribution.
struct PathDistribution {
    std::vector<int> levels; // block counts along the path
    std::vector<double> raw; // gain per step
    std::vector<double> p;   // raw normalized; empty when undefined
    bool defined = false;    // total raw gain > 0

    static PathDistribution from_gains(std::vector<int> levels, std::vector<double> raw);
};

struct MetricsReport {
    double s_path = 0.0;         // mean path entropy, bits
    std::uint64_t n_paths_used = 0;
    double s_row = 0.0;          // mean within-level entropy, bits
    double row_negentropy = 0.0; // log2(L) - s_row
    double complexity = 0.0;     // s_path * row_negentropy
    int micro_dim = 0;           // L
};

// Shannon entropy of a defined path distribution; throws
// UndefinedDistribution otherwise.
double path_entropy(const PathDistribution& d);

// Average path entropy over the hierarchy's bottom-to-top paths: exhaustive
// when the path count fits in sample_size, uniform sampling otherwise.
double s_path(const EmergentHierarchy& h, int sample_size, std::uint64_t seed,
              PathAggregate aggregate = PathAggregate::Mean,
              UndefinedPaths undefined = UndefinedPaths::CountAsZero);

// Per-level entropy of normalized gains averaged over all L levels (empty
// levels contribute 0), and its informational inverse.
struct RowEntropy {
    double s_row = 0.0;
    double negentropy = 0.0;
};
RowEntropy row_negentropy(const EmergentHierarchy& h);

// Assembles the full report.
MetricsReport complexity(const EmergentHierarchy& h, const MetricsConfig& cfg = {});

} // namespace emergence

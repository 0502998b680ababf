// Transition probability matrices treated as ground-truth causal models, the
// causal primitives computed on them (determinism, degeneracy, specificity,
// CP), and coarse-graining over partitions.
//
// Conventions used throughout:
//   - rows index the cause (state at t), columns the effect (state at t+1),
//   - the intervention prior is uniform over the states of the scale at hand,
//   - entropies are in bits and 0 * log 0 = 0,
//   - a 1-state scale has CP 0 by convention (its primitives are undefined).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emergence/partition.hpp"

namespace emergence {

// Row sums must match 1 within this tolerance on input.
inline constexpr double kRowSumTolerance = 1e-9;

// Probabilities below this threshold are treated as exact zeros in entropy
// terms, avoiding log underflow noise.
inline constexpr double kProbabilityFloor = 1e-15;

class Tpm {
public:
    Tpm() = default;

    int n() const { return n_; }
    std::span<const double> row(int c) const { return {data_.data() + static_cast<std::size_t>(c) * n_, static_cast<std::size_t>(n_)}; }
    double at(int c, int e) const { return data_[static_cast<std::size_t>(c) * n_ + e]; }
    const std::vector<double>& data() const { return data_; }

    // Number of microstates each state aggregates; all 1 at the microscale.
    const std::vector<std::int64_t>& block_weights() const { return block_weights_; }
    std::int64_t micro_states() const;
    bool is_microscale() const;

    const std::optional<std::vector<std::string>>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

    // Validated construction from a dense row-major matrix. Rows within
    // kRowSumTolerance of 1 are renormalized; anything worse is rejected.
    static Tpm validate(const std::vector<std::vector<double>>& matrix);
    static Tpm validate(std::vector<double> row_major, int n);

    // Trusted constructor for internally produced matrices (coarse-graining
    // output); still checks shape in debug builds.
    static Tpm trusted(std::vector<double> row_major, int n, std::vector<std::int64_t> block_weights);

private:
    int n_ = 0;
    std::vector<double> data_;
    std::vector<std::int64_t> block_weights_;
    std::optional<std::vector<std::string>> labels_;
};

// Front door used by the file loaders; same contract as Tpm::validate.
Tpm validate_tpm(const std::vector<std::vector<double>>& matrix);

// Certainty of effects given one cause: 1 - H(E|c)/log2(n).
double determinism_of_cause(const Tpm& t, int cause);

// System-wide determinism under the uniform intervention prior.
double determinism(const Tpm& t);

// Overlap among effects: 1 - H(E)/log2(n) with T_e averaged over causes.
double degeneracy(const Tpm& t);

// 1 - degeneracy.
double specificity(const Tpm& t);

// Causal primitives score: determinism + specificity - 1. Equals the mutual
// information I(C;E)/log2(n) under the uniform prior; 0 for a 1-state scale.
double cp(const Tpm& t);

// Coarse-grains over a partition of t's states. Rows of a block are averaged
// with weights proportional to the microstate counts they carry and columns
// are summed, so iterated coarse-grainings compose exactly.
Tpm coarse_grain(const Tpm& t, const Partition& p);

// Convenience form of coarse_grain merging exactly two states.
Tpm merge_blocks(const Tpm& t, int i, int j);

// Applies a state relabeling sigma (new index = sigma[old index]).
Tpm relabel(const Tpm& t, const std::vector<int>& sigma);

// x * log2(x) with the 0 log 0 = 0 convention and the probability floor.
double plog2p(double x);

// Shannon entropy of a distribution, in bits.
double entropy_bits(std::span<const double> p);

} // namespace emergence

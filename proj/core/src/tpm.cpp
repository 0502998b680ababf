#include "emergence/tpm.hpp"

#include <cassert>
#include <cmath>
#include <numeric>

#include "emergence/errors.hpp"

namespace emergence {

double plog2p(double x) {
    if (x < kProbabilityFloor) return 0.0;
    return x * std::log2(x);
}

double entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) h -= plog2p(x);
    return h;
}

std::int64_t Tpm::micro_states() const {
    return std::accumulate(block_weights_.begin(), block_weights_.end(), std::int64_t{0});
}

bool Tpm::is_microscale() const {
    for (auto w : block_weights_)
        if (w != 1) return false;
    return true;
}

void Tpm::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_)
        throw SizeMismatchError("label count does not match state count");
    labels_ = std::move(labels);
}

Tpm Tpm::validate(const std::vector<std::vector<double>>& matrix) {
    const int n = static_cast<int>(matrix.size());
    if (n < 1) throw NonSquareError("matrix is empty");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : matrix) {
        if (static_cast<int>(row.size()) != n)
            throw NonSquareError("matrix is not square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return validate(std::move(flat), n);
}

Tpm Tpm::validate(std::vector<double> row_major, int n) {
    if (n < 1 || row_major.size() != static_cast<std::size_t>(n) * n)
        throw NonSquareError("matrix is not square");
    for (std::size_t i = 0; i < row_major.size(); ++i) {
        if (!(row_major[i] >= 0.0))
            throw NegativeEntryError("negative or non-finite entry at flat index " + std::to_string(i));
    }
    for (int c = 0; c < n; ++c) {
        double* row = row_major.data() + static_cast<std::size_t>(c) * n;
        double sum = 0.0;
        for (int e = 0; e < n; ++e) sum += row[e];
        const double dev = sum - 1.0;
        if (std::abs(dev) > kRowSumTolerance)
            throw RowSumError(static_cast<std::size_t>(c), dev,
                              "row " + std::to_string(c) + " sums to " + std::to_string(sum));
        // Renormalize measurable drift only; sub-ulp-scale deviation is left
        // alone so parse -> serialize -> parse is idempotent.
        if (std::abs(dev) > 1e-14)
            for (int e = 0; e < n; ++e) row[e] /= sum;
    }
    Tpm t;
    t.n_ = n;
    t.data_ = std::move(row_major);
    t.block_weights_.assign(n, 1);
    return t;
}

Tpm Tpm::trusted(std::vector<double> row_major, int n, std::vector<std::int64_t> block_weights) {
    assert(row_major.size() == static_cast<std::size_t>(n) * n);
    assert(block_weights.size() == static_cast<std::size_t>(n));
    Tpm t;
    t.n_ = n;
    t.data_ = std::move(row_major);
    t.block_weights_ = std::move(block_weights);
    return t;
}

Tpm validate_tpm(const std::vector<std::vector<double>>& matrix) {
    return Tpm::validate(matrix);
}

namespace {

void require_multistate(const Tpm& t) {
    if (t.n() < 2)
        throw SingleStateScaleError("causal primitives are undefined for a 1-state scale");
}

} // namespace

double determinism_of_cause(const Tpm& t, int cause) {
    require_multistate(t);
    if (cause < 0 || cause >= t.n())
        throw IndexOutOfRangeError("cause index out of range");
    return 1.0 - entropy_bits(t.row(cause)) / std::log2(static_cast<double>(t.n()));
}

double determinism(const Tpm& t) {
    require_multistate(t);
    const double log_n = std::log2(static_cast<double>(t.n()));
    double h = 0.0; // H(E|C) under the uniform prior
    for (int c = 0; c < t.n(); ++c) h += entropy_bits(t.row(c));
    h /= t.n();
    return 1.0 - h / log_n;
}

double degeneracy(const Tpm& t) {
    require_multistate(t);
    const int n = t.n();
    std::vector<double> effect_marginal(n, 0.0); // T_e = sum_c p(c) T_ce
    for (int c = 0; c < n; ++c) {
        auto row = t.row(c);
        for (int e = 0; e < n; ++e) effect_marginal[e] += row[e];
    }
    for (double& x : effect_marginal) x /= n;
    return 1.0 - entropy_bits(effect_marginal) / std::log2(static_cast<double>(n));
}

double specificity(const Tpm& t) {
    return 1.0 - degeneracy(t);
}

double cp(const Tpm& t) {
    if (t.n() == 1) return 0.0;
    return determinism(t) - degeneracy(t);
}

Tpm coarse_grain(const Tpm& t, const Partition& p) {
    if (p.size() != t.n())
        throw InvalidPartitionError("partition does not cover the TPM's states");
    const int n = t.n();
    const int m = p.block_count();
    const auto& assign = p.assignment();
    const auto& w = t.block_weights();

    std::vector<std::int64_t> block_weight(m, 0);
    for (int i = 0; i < n; ++i) block_weight[assign[i]] += w[i];

    std::vector<double> out(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < n; ++i) {
        const double scale = static_cast<double>(w[i]) / static_cast<double>(block_weight[assign[i]]);
        double* out_row = out.data() + static_cast<std::size_t>(assign[i]) * m;
        auto row = t.row(i);
        for (int j = 0; j < n; ++j) out_row[assign[j]] += scale * row[j];
    }
    return Tpm::trusted(std::move(out), m, std::move(block_weight));
}

Tpm merge_blocks(const Tpm& t, int i, int j) {
    if (i == j) throw IndexOutOfRangeError("merge_blocks requires two distinct states");
    if (i < 0 || j < 0 || i >= t.n() || j >= t.n())
        throw IndexOutOfRangeError("merge_blocks state index out of range");
    std::vector<int> a(t.n());
    for (int s = 0; s < t.n(); ++s) a[s] = s;
    a[std::max(i, j)] = std::min(i, j);
    return coarse_grain(t, Partition(std::move(a)));
}

Tpm relabel(const Tpm& t, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != t.n())
        throw SizeMismatchError("relabel: sigma size mismatch");
    const int n = t.n();
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<std::int64_t> weights(n, 0);
    for (int c = 0; c < n; ++c) {
        weights[sigma[c]] = t.block_weights()[c];
        for (int e = 0; e < n; ++e)
            out[static_cast<std::size_t>(sigma[c]) * n + sigma[e]] = t.at(c, e);
    }
    return Tpm::trusted(std::move(out), n, std::move(weights));
}

} // namespace emergence

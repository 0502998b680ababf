#include "emergence/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "emergence/errors.hpp"

namespace emergence {

void MetricsConfig::validate() const {
    if (sample_size < 1) throw InvalidConfigError("sample_size must be >= 1");
}

PathDistribution PathDistribution::from_gains(std::vector<int> levels, std::vector<double> raw) {
    PathDistribution d;
    d.levels = std::move(levels);
    d.raw = std::move(raw);
    double total = 0.0;
    for (double g : d.raw) total += g;
    if (total > 0.0) {
        d.defined = true;
        d.p.reserve(d.raw.size());
        for (double g : d.raw) d.p.push_back(std::max(g, 0.0) / total);
    }
    return d;
}

double path_entropy(const PathDistribution& d) {
    if (!d.defined)
        throw UndefinedDistributionError("path has no positive total gain");
    return entropy_bits(d.p);
}

namespace {

PathDistribution distribution_of(const EmergentHierarchy& h, const std::vector<int>& path) {
    std::vector<int> levels;
    std::vector<double> raw;
    levels.reserve(path.size());
    raw.reserve(path.size());
    for (int idx : path) {
        const Partition& p = h.diagram.node(idx);
        levels.push_back(p.block_count());
        raw.push_back(h.delta.at(p));
    }
    return PathDistribution::from_gains(std::move(levels), std::move(raw));
}

} // namespace

double s_path(const EmergentHierarchy& h, int sample_size, std::uint64_t seed,
              PathAggregate aggregate, UndefinedPaths undefined) {
    if (sample_size < 1) throw InvalidConfigError("sample_size must be >= 1");
    PathSystem paths(h.diagram, h.anchor);

    double total = 0.0;
    std::uint64_t used = 0, defined_used = 0;
    auto accumulate = [&](const std::vector<int>& path) {
        PathDistribution d = distribution_of(h, path);
        ++used;
        if (d.defined) {
            ++defined_used;
            total += entropy_bits(d.p);
        }
    };

    if (paths.count() <= static_cast<std::uint64_t>(sample_size)) {
        for (const auto& path : paths.enumerate_all(paths.count())) accumulate(path);
    } else {
        std::mt19937_64 rng(seed);
        for (int i = 0; i < sample_size; ++i) accumulate(paths.sample(rng));
    }

    if (aggregate == PathAggregate::Sum) return total;
    const std::uint64_t denom = undefined == UndefinedPaths::Skip ? defined_used : used;
    return denom == 0 ? 0.0 : total / static_cast<double>(denom);
}

RowEntropy row_negentropy(const EmergentHierarchy& h) {
    const int levels = h.micro_dim;
    RowEntropy out;
    if (levels < 1) return out;
    double sum = 0.0;
    for (const auto& [level, members] : h.per_level) {
        std::vector<double> gains;
        for (const auto& [p, dv] : members)
            if (dv > 0.0) gains.push_back(dv);
        if (gains.empty()) continue; // empty level contributes 0
        double total = 0.0;
        for (double g : gains) total += g;
        for (double& g : gains) g /= total;
        sum += entropy_bits(gains);
    }
    out.s_row = sum / levels;
    out.negentropy = std::log2(static_cast<double>(levels)) - out.s_row;
    return out;
}

MetricsReport complexity(const EmergentHierarchy& h, const MetricsConfig& cfg) {
    cfg.validate();
    MetricsReport r;
    r.micro_dim = h.micro_dim;

    PathSystem paths(h.diagram, h.anchor);
    r.n_paths_used = std::min<std::uint64_t>(paths.count(),
                                             static_cast<std::uint64_t>(cfg.sample_size));
    r.s_path = s_path(h, cfg.sample_size, cfg.seed, cfg.path_aggregate, cfg.undefined_paths);

    const RowEntropy row = row_negentropy(h);
    r.s_row = row.s_row;
    r.row_negentropy = row.negentropy;
    r.complexity = r.s_path * r.row_negentropy;
    return r;
}

} // namespace emergence

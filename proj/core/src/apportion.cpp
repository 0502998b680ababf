#include "emergence/apportion.hpp"

#include <algorithm>

#include "emergence/errors.hpp"
#include "emergence/parallel.hpp"

namespace emergence {

void AnalysisConfig::validate() const {
    if (!(epsilon > 0.0) || !(epsilon < 1e-3))
        throw InvalidConfigError("epsilon must lie in (0, 1e-3)");
    if (max_states < 1)
        throw InvalidConfigError("max_states must be positive");
}

int EmergentHierarchy::reported_member_count(double epsilon) const {
    int count = emergent_count();
    auto it = delta.find(anchor);
    if (it != delta.end() && it->second > epsilon) ++count;
    return count;
}

CpMap compute_cp_all(const Tpm& t, const std::vector<Partition>& nodes) {
    std::vector<double> values(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
        values[i] = cp(coarse_grain(t, nodes[i]));
    });
    CpMap out;
    out.reserve(nodes.size() * 2);
    for (std::size_t i = 0; i < nodes.size(); ++i) out.emplace(nodes[i], values[i]);
    return out;
}

DeltaCpMap delta_cp(const HasseDiagram& h, const CpMap& cps) {
    const int m = h.node_count();
    std::vector<double> cp_of(m);
    for (int i = 0; i < m; ++i) {
        auto it = cps.find(h.node(i));
        if (it == cps.end())
            throw MissingCpError("no CP value for node " + h.node(i).to_string());
        cp_of[i] = it->second;
    }

    // Max CP over all strict ancestors via DP in finest-first order;
    // reachability over covering edges equals the restricted order.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return h.node(a).block_count() > h.node(b).block_count();
    });
    constexpr double kNone = -2.0; // below any possible CP
    std::vector<double> best_below(m, kNone);
    for (int v : order)
        for (int u : h.down_edges()[v])
            best_below[v] = std::max(best_below[v], std::max(best_below[u], cp_of[u]));

    DeltaCpMap out;
    out.reserve(m * 2);
    for (int i = 0; i < m; ++i) {
        const double baseline = best_below[i] == kNone ? 0.0 : best_below[i];
        out.emplace(h.node(i), cp_of[i] - baseline);
    }
    return out;
}

EmergentHierarchy emergent_set(const HasseDiagram& h, const DeltaCpMap& d, const AnalysisConfig& cfg) {
    cfg.validate();
    // The finest level of the diagram holds the anchor.
    const auto& levels = h.level_index();
    if (levels.empty()) throw NodeNotFoundError("empty diagram");
    const auto& finest_level = levels.rbegin()->second;
    if (finest_level.size() != 1)
        throw InvalidPartitionError("diagram has no unique finest node");
    const Partition anchor = h.node(finest_level.front());

    std::vector<Partition> members;
    for (const Partition& p : h.nodes()) {
        auto it = d.find(p);
        if (it == d.end())
            throw MissingCpError("no delta value for node " + p.to_string());
        if (p == anchor || it->second > cfg.epsilon) members.push_back(p);
    }

    EmergentHierarchy out;
    out.anchor = anchor;
    out.micro_dim = anchor.size();
    out.diagram = build_hasse(std::move(members));
    for (const Partition& p : out.diagram.nodes()) {
        const double dv = d.at(p);
        out.delta.emplace(p, dv);
        out.per_level[p.block_count()].emplace_back(p, dv);
    }
    for (auto& [level, list] : out.per_level)
        std::sort(list.begin(), list.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

AnalysisResult apportion_over(HasseDiagram diagram, CpMap cps, const AnalysisConfig& cfg) {
    cfg.validate();
    AnalysisResult r;
    r.diagram = std::move(diagram);
    r.cp = std::move(cps);
    r.delta = delta_cp(r.diagram, r.cp);
    r.hierarchy = emergent_set(r.diagram, r.delta, cfg);
    return r;
}

AnalysisResult analyze(const Tpm& t, const AnalysisConfig& cfg) {
    cfg.validate();
    if (!t.is_microscale())
        throw InvalidConfigError("analyze expects a microscale TPM (unit block weights)");
    if (t.n() > cfg.max_states)
        throw CapExceededError("state count " + std::to_string(t.n()) +
                               " exceeds the enumeration cap " + std::to_string(cfg.max_states) +
                               "; use the branching greedy estimator for large systems");
    std::vector<Partition> nodes = enumerate_partitions(t.n(), cfg.max_states);
    CpMap cps = compute_cp_all(t, nodes);
    return apportion_over(build_hasse(std::move(nodes)), std::move(cps), cfg);
}

std::vector<double> per_level_mean_delta(const EmergentHierarchy& h) {
    std::vector<double> out(static_cast<std::size_t>(h.micro_dim) + 1, 0.0);
    for (const auto& [level, list] : h.per_level) {
        double sum = 0.0;
        int count = 0;
        for (const auto& [p, dv] : list) {
            if (dv > 0.0) {
                sum += dv;
                ++count;
            }
        }
        if (count > 0) out[level] = sum / count;
    }
    out.erase(out.begin()); // levels are 1-based
    return out;
}

} // namespace emergence

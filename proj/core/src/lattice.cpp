#include "emergence/lattice.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "emergence/errors.hpp"

namespace emergence {

namespace {

constexpr int kExactCountCap = 25; // Bell(25) still fits in 64 bits

std::vector<std::vector<std::uint64_t>> stirling_table(int n_max) {
    std::vector<std::vector<std::uint64_t>> s(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        s[n].assign(n + 1, 0);
        if (n == 0) {
            s[0][0] = 1;
            continue;
        }
        for (int k = 1; k <= n; ++k)
            s[n][k] = (k < n ? k * s[n - 1][k] : 0) + s[n - 1][k - 1];
    }
    return s;
}

} // namespace

std::uint64_t stirling2(int n, int k) {
    if (n < 0 || n > kExactCountCap)
        throw CapExceededError("stirling2 supports 0 <= n <= 25");
    if (k < 0 || k > n) return 0;
    static const auto table = stirling_table(kExactCountCap);
    return table[n][k];
}

std::uint64_t bell(int n) {
    if (n < 0 || n > kExactCountCap)
        throw CapExceededError("bell supports 0 <= n <= 25");
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) total += stirling2(n, k);
    return total;
}

PartitionEnumerator::PartitionEnumerator(int n, int cap) : n_(n) {
    if (n < 1) throw InvalidPartitionError("enumeration requires n >= 1");
    if (n > cap)
        throw CapExceededError("partition enumeration capped at n = " + std::to_string(cap) +
                               " (Bell numbers grow superexponentially)");
    rgs_.assign(n, 0);
    max_prefix_.assign(n, 0);
}

bool PartitionEnumerator::next(Partition& out) {
    if (done_) return false;
    if (first_) {
        first_ = false;
        out = Partition(rgs_);
        return true;
    }
    // Standard successor rule for restricted growth strings.
    for (int i = n_ - 1; i > 0; --i) {
        if (rgs_[i] <= max_prefix_[i - 1]) {
            ++rgs_[i];
            max_prefix_[i] = std::max(max_prefix_[i - 1], rgs_[i]);
            for (int j = i + 1; j < n_; ++j) {
                rgs_[j] = 0;
                max_prefix_[j] = max_prefix_[i];
            }
            out = Partition(rgs_);
            return true;
        }
    }
    done_ = true;
    return false;
}

std::vector<Partition> enumerate_partitions(int n, int cap) {
    PartitionEnumerator en(n, cap);
    std::vector<Partition> out;
    if (n <= kExactCountCap) out.reserve(bell(n));
    Partition p;
    while (en.next(p)) out.push_back(p);
    return out;
}

int HasseDiagram::index_of(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
        throw NodeNotFoundError("partition not in diagram: " + p.to_string());
    return it->second;
}

bool HasseDiagram::contains(const Partition& p) const {
    return index_.find(p) != index_.end();
}

void HasseDiagram::add_edge(int finer, int coarser) {
    up_[finer].push_back(coarser);
    down_[coarser].push_back(finer);
    ++edge_count_;
}

void HasseDiagram::build_full_lattice_edges() {
    // In the full lattice the covering relation is exactly "merge two blocks",
    // so edge generation avoids the pairwise transitive reduction entirely.
    for (int idx = 0; idx < node_count(); ++idx) {
        const Partition& p = nodes_[idx];
        const int k = p.block_count();
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                add_edge(idx, index_of(p.merge_blocks(a, b)));
    }
}

void HasseDiagram::build_subset_edges() {
    const int m = node_count();
    const std::size_t words = (static_cast<std::size_t>(m) + 63) / 64;

    // finer_than[i] marks every node strictly finer than node i.
    std::vector<std::vector<std::uint64_t>> finer_than(m, std::vector<std::uint64_t>(words, 0));
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    // More blocks first; the relation only holds from later to earlier groups.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return nodes_[a].block_count() > nodes_[b].block_count();
    });

    for (int ai = 0; ai < m; ++ai) {
        for (int bi = ai + 1; bi < m; ++bi) {
            const int a = order[ai], b = order[bi];
            if (nodes_[a].block_count() <= nodes_[b].block_count()) continue;
            if (refines(nodes_[a], nodes_[b]))
                finer_than[b][static_cast<std::size_t>(a) / 64] |= 1ull << (a % 64);
        }
    }

    std::vector<std::uint64_t> dominated(words);
    for (int b = 0; b < m; ++b) {
        std::fill(dominated.begin(), dominated.end(), 0);
        const auto& below = finer_than[b];
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = below[w];
            while (bits) {
                const int c = static_cast<int>(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
                for (std::size_t v = 0; v < words; ++v) dominated[v] |= finer_than[c][v];
            }
        }
        // Covering edges: finer than b and not below any intermediate node.
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = below[w] & ~dominated[w];
            while (bits) {
                const int a = static_cast<int>(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
                add_edge(a, b);
            }
        }
    }
}

HasseDiagram HasseDiagram::build(std::vector<Partition> nodes) {
    if (nodes.empty()) throw InvalidPartitionError("cannot build a diagram over zero nodes");
    const int n_states = nodes.front().size();
    HasseDiagram h;
    h.nodes_ = std::move(nodes);
    h.index_.reserve(h.nodes_.size() * 2);
    for (int i = 0; i < h.node_count(); ++i) {
        const Partition& p = h.nodes_[i];
        if (p.size() != n_states)
            throw SizeMismatchError("diagram nodes partition different state counts");
        if (!h.index_.emplace(p, i).second)
            throw InvalidPartitionError("duplicate partition in node set");
        h.levels_[p.block_count()].push_back(i);
    }
    h.up_.assign(h.node_count(), {});
    h.down_.assign(h.node_count(), {});

    const bool full_lattice =
        n_states <= kDefaultEnumerationCap &&
        static_cast<std::uint64_t>(h.node_count()) == bell(n_states);
    if (full_lattice)
        h.build_full_lattice_edges();
    else
        h.build_subset_edges();

    for (auto& adj : h.up_) std::sort(adj.begin(), adj.end());
    for (auto& adj : h.down_) std::sort(adj.begin(), adj.end());
    return h;
}

HasseDiagram build_hasse(std::vector<Partition> nodes) {
    return HasseDiagram::build(std::move(nodes));
}

std::vector<int> HasseDiagram::ancestor_indices(int idx) const {
    std::vector<char> seen(node_count(), 0);
    std::vector<int> stack{idx}, out;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : down_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                out.push_back(u);
                stack.push_back(u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Partition> HasseDiagram::ancestors(const Partition& p) const {
    std::vector<Partition> out;
    for (int idx : ancestor_indices(index_of(p))) out.push_back(nodes_[idx]);
    return out;
}

std::vector<int> HasseDiagram::maximal_nodes() const {
    std::vector<int> out;
    for (int i = 0; i < node_count(); ++i)
        if (up_[i].empty()) out.push_back(i);
    return out;
}

void PathSystem::init(const std::vector<int>& tops) {
    const int m = h_->node_count();
    is_top_.assign(m, 0);
    for (int t : tops) is_top_[t] = 1;
    paths_to_top_.assign(m, 0);

    // Coarsest nodes first so every up-edge target is processed before its
    // sources.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return h_->node(a).block_count() < h_->node(b).block_count();
    });
    for (int v : order) {
        std::uint64_t c = is_top_[v] ? 1 : 0;
        for (int u : h_->up_edges()[v]) {
            const std::uint64_t add = paths_to_top_[u];
            if (add > std::numeric_limits<std::uint64_t>::max() - c)
                throw ComputeError("path count overflows 64 bits");
            c += add;
        }
        paths_to_top_[v] = c;
    }
    total_ = paths_to_top_[bottom_];
    if (total_ == 0) throw NoPathError("no bottom-to-top path in diagram");
}

PathSystem::PathSystem(const HasseDiagram& h, const Partition& bottom, const Partition& top)
    : h_(&h), bottom_(h.index_of(bottom)) {
    init({h.index_of(top)});
}

PathSystem::PathSystem(const HasseDiagram& h, const Partition& bottom)
    : h_(&h), bottom_(h.index_of(bottom)) {
    init(h.maximal_nodes());
}

std::vector<int> PathSystem::sample(std::mt19937_64& rng) const {
    std::vector<int> path{bottom_};
    int v = bottom_;
    while (true) {
        std::uint64_t branches = is_top_[v] ? 1 : 0;
        for (int u : h_->up_edges()[v]) branches += paths_to_top_[u];
        // `branches` == paths_to_top_[v] > 0 by construction.
        std::uniform_int_distribution<std::uint64_t> pick(0, paths_to_top_[v] - 1);
        std::uint64_t r = pick(rng);
        if (is_top_[v]) {
            if (r == 0) return path;
            r -= 1;
        }
        for (int u : h_->up_edges()[v]) {
            if (r < paths_to_top_[u]) {
                path.push_back(u);
                v = u;
                break;
            }
            r -= paths_to_top_[u];
        }
    }
}

std::vector<std::vector<int>> PathSystem::enumerate_all(std::uint64_t limit) const {
    if (total_ > limit)
        throw CapExceededError("path enumeration limit exceeded");
    std::vector<std::vector<int>> out;
    out.reserve(total_);
    std::vector<int> cur{bottom_};
    // Iterative DFS over up-edges, emitting at top nodes.
    std::vector<std::size_t> next_child{0};
    while (!cur.empty()) {
        const int v = cur.back();
        if (next_child.back() == 0 && is_top_[v] && paths_to_top_[v] >= 1)
            out.push_back(cur);
        const auto& ups = h_->up_edges()[v];
        bool descended = false;
        while (next_child.back() < ups.size()) {
            const int u = ups[next_child.back()++];
            if (paths_to_top_[u] > 0) {
                cur.push_back(u);
                next_child.push_back(0);
                descended = true;
                break;
            }
        }
        if (!descended) {
            cur.pop_back();
            next_child.pop_back();
        }
    }
    return out;
}

std::uint64_t count_paths(const HasseDiagram& h, const Partition& bottom, const Partition& top) {
    PathSystem ps(h, bottom, top);
    return ps.count();
}

} // namespace emergence

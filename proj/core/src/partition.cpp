#include "emergence/partition.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "emergence/errors.hpp"

namespace emergence {

Partition::Partition(std::vector<int> assignment) : assignment_(std::move(assignment)) {
    canonicalize();
}

void Partition::canonicalize() {
    std::vector<int> remap(assignment_.size(), -1);
    int next_id = 0;
    for (int& v : assignment_) {
        if (v < 0 || v >= static_cast<int>(assignment_.size()))
            throw InvalidPartitionError("block id out of range in partition assignment");
        if (remap[v] == -1) remap[v] = next_id++;
        v = remap[v];
    }
    block_count_ = next_id;
}

Partition Partition::finest(int n) {
    if (n < 1) throw InvalidPartitionError("partition requires n >= 1");
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i;
    return Partition(std::move(a));
}

Partition Partition::coarsest(int n) {
    if (n < 1) throw InvalidPartitionError("partition requires n >= 1");
    return Partition(std::vector<int>(n, 0));
}

Partition Partition::from_blocks(const std::vector<std::vector<int>>& blocks, int n) {
    std::vector<int> a(n, -1);
    int id = 0;
    for (const auto& block : blocks) {
        if (block.empty()) throw InvalidPartitionError("empty block");
        for (int state : block) {
            if (state < 0 || state >= n)
                throw InvalidPartitionError("block member out of range");
            if (a[state] != -1)
                throw InvalidPartitionError("blocks are not disjoint");
            a[state] = id;
        }
        ++id;
    }
    for (int i = 0; i < n; ++i)
        if (a[i] == -1) throw InvalidPartitionError("blocks do not cover all states");
    return Partition(std::move(a));
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(block_count_);
    for (int i = 0; i < size(); ++i) out[assignment_[i]].push_back(i);
    return out;
}

Partition Partition::merge_blocks(int block_a, int block_b) const {
    if (block_a == block_b)
        throw InvalidPartitionError("cannot merge a block with itself");
    if (block_a < 0 || block_a >= block_count_ || block_b < 0 || block_b >= block_count_)
        throw IndexOutOfRangeError("block id out of range in merge");
    int lo = std::min(block_a, block_b), hi = std::max(block_a, block_b);
    std::vector<int> a = assignment_;
    for (int& v : a)
        if (v == hi) v = lo;
    return Partition(std::move(a));
}

std::string Partition::to_string() const {
    bool compact = true;
    for (int v : assignment_)
        if (v > 9) { compact = false; break; }
    std::string out;
    if (compact) {
        out.reserve(assignment_.size());
        for (int v : assignment_) out.push_back(static_cast<char>('0' + v));
    } else {
        for (std::size_t i = 0; i < assignment_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(assignment_[i]);
        }
    }
    return out;
}

std::string Partition::to_block_string() const {
    std::string out;
    for (const auto& block : blocks()) {
        out.push_back('(');
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string(block[i]);
        }
        out.push_back(')');
    }
    return out;
}

Partition Partition::parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty partition string");
    if (text.front() == '(') {
        std::vector<std::vector<int>> blocks;
        std::size_t i = 0;
        int max_state = -1;
        while (i < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
            if (text[i] != '(') throw ParseError("expected '(' in partition block form");
            std::size_t close = text.find(')', i);
            if (close == std::string::npos) throw ParseError("unterminated block");
            std::istringstream iss(text.substr(i + 1, close - i - 1));
            std::vector<int> block;
            int v;
            while (iss >> v) {
                block.push_back(v);
                max_state = std::max(max_state, v);
            }
            if (!iss.eof()) throw ParseError("invalid state index in block");
            if (block.empty()) throw ParseError("empty block in partition");
            blocks.push_back(std::move(block));
            i = close + 1;
        }
        return from_blocks(blocks, max_state + 1);
    }
    std::vector<int> a;
    if (text.find(',') != std::string::npos) {
        std::istringstream iss(text);
        std::string tok;
        while (std::getline(iss, tok, ',')) {
            try {
                a.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("invalid block id '" + tok + "'");
            }
        }
    } else {
        a.reserve(text.size());
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError(std::string("invalid character '") + c + "' in partition string");
            a.push_back(c - '0');
        }
    }
    // Accept only canonical restricted-growth input (first occurrence of each
    // block id in increasing order) so digit and comma forms mean the same
    // partition and parse(render(p)) == p exactly.
    int max_seen = -1;
    for (int v : a) {
        if (v < 0 || v > max_seen + 1)
            throw ParseError("partition string is not in canonical restricted-growth form");
        max_seen = std::max(max_seen, v);
    }
    return Partition(std::move(a));
}

bool refines(const Partition& a, const Partition& b) {
    if (a.size() != b.size())
        throw SizeMismatchError("refines: partitions have different sizes");
    // a <= b iff states sharing a block in `a` share a block in `b`;
    // with canonical ids a single pass suffices.
    std::vector<int> image(a.block_count(), -1);
    for (int i = 0; i < a.size(); ++i) {
        int ab = a.block_of(i), bb = b.block_of(i);
        if (image[ab] == -1)
            image[ab] = bb;
        else if (image[ab] != bb)
            return false;
    }
    return true;
}

bool covers(const Partition& a, const Partition& b) {
    if (a.size() != b.size())
        throw SizeMismatchError("covers: partitions have different sizes");
    return a.block_count() == b.block_count() + 1 && refines(a, b);
}

Partition relabel(const Partition& p, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != p.size())
        throw SizeMismatchError("relabel: sigma size mismatch");
    std::vector<int> a(p.size());
    for (int i = 0; i < p.size(); ++i) a[sigma[i]] = p.block_of(i);
    return Partition(std::move(a));
}

} // namespace emergence

#include "emergence/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "emergence/errors.hpp"

namespace emergence {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Tpm read_tpm_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // Tolerate trailing carriage returns and skip blank lines.
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": invalid number '" + cell + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty TPM file");
    return Tpm::validate(rows);
}

std::string write_tpm_csv(const Tpm& t) {
    std::string out;
    for (int c = 0; c < t.n(); ++c) {
        for (int e = 0; e < t.n(); ++e) {
            if (e) out.push_back(',');
            out += format_double(t.at(c, e));
        }
        out.push_back('\n');
    }
    return out;
}

Tpm read_tpm_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid TPM JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw ParseError("TPM JSON requires fields 'n' and 'rows'");
    const int n = j.at("n").get<int>();
    auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != n)
        throw ParseError("TPM JSON: 'rows' count does not match 'n'");
    Tpm t = Tpm::validate(rows);
    if (j.contains("labels")) {
        auto labels = j.at("labels").get<std::vector<std::string>>();
        t.set_labels(std::move(labels));
    }
    return t;
}

std::string write_tpm_json(const Tpm& t) {
    json j;
    j["n"] = t.n();
    std::vector<std::vector<double>> rows(t.n());
    for (int c = 0; c < t.n(); ++c) rows[c].assign(t.row(c).begin(), t.row(c).end());
    j["rows"] = rows;
    if (t.labels()) j["labels"] = *t.labels();
    return j.dump(2) + "\n";
}

Tpm read_tpm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open TPM file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return read_tpm_json(in);
    return read_tpm_csv(in);
}

namespace {

json manifest_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["tool_version"] = m.tool_version;
    j["timestamp"] = m.timestamp;
    j["input_digest"] = m.input_digest;
    j["config"] = m.config;
    return j;
}

json metrics_json(const MetricsReport& m) {
    json j;
    j["s_path"] = m.s_path;
    j["n_paths_used"] = m.n_paths_used;
    j["s_row"] = m.s_row;
    j["row_negentropy"] = m.row_negentropy;
    j["complexity"] = m.complexity;
    j["micro_dim"] = m.micro_dim;
    return j;
}

} // namespace

std::string manifest_to_json(const RunManifest& m) {
    return manifest_json(m).dump(2) + "\n";
}

std::string result_to_json(const AnalysisResult& result, const MetricsReport& metrics,
                           const RunManifest& manifest, const std::string& method) {
    json j;
    j["schema"] = kResultSchema;
    j["method"] = method;
    j["n"] = result.hierarchy.micro_dim;
    j["manifest"] = manifest_json(manifest);

    json cp_map = json::object();
    for (const Partition& p : result.diagram.nodes()) cp_map[p.to_string()] = result.cp.at(p);
    j["cp"] = std::move(cp_map);

    json delta_map = json::object();
    for (const Partition& p : result.diagram.nodes()) delta_map[p.to_string()] = result.delta.at(p);
    j["delta_cp"] = std::move(delta_map);

    const auto& h = result.hierarchy;
    j["anchor"] = h.anchor.to_string();
    json members = json::array();
    for (const Partition& p : h.diagram.nodes())
        if (p != h.anchor) members.push_back(p.to_string());
    std::sort(members.begin(), members.end());
    j["emergent"] = std::move(members);

    json edges = json::array();
    for (int v = 0; v < h.diagram.node_count(); ++v)
        for (int u : h.diagram.up_edges()[v])
            edges.push_back(json::array({h.diagram.node(v).to_string(), h.diagram.node(u).to_string()}));
    j["hierarchy_edges"] = std::move(edges);

    j["per_level_mean_delta"] = per_level_mean_delta(h);
    j["metrics"] = metrics_json(metrics);
    return j.dump(2) + "\n";
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

// Deterministic node order: finer levels first, canonical order within one.
std::vector<int> dot_order(const HasseDiagram& h) {
    std::vector<int> order(h.node_count());
    for (int i = 0; i < h.node_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Partition& pa = h.node(a);
        const Partition& pb = h.node(b);
        if (pa.block_count() != pb.block_count()) return pa.block_count() > pb.block_count();
        return pa < pb;
    });
    return order;
}

std::string dot_body(const HasseDiagram& diagram,
                     const std::function<double(const Partition&)>& width_of,
                     const std::function<std::string(const Partition&)>& extra_attr) {
    std::string out = "digraph emergent_hierarchy {\n  rankdir=BT;\n  node [shape=circle fixedsize=true];\n";
    const auto order = dot_order(diagram);
    for (int idx : order) {
        const Partition& p = diagram.node(idx);
        const double w = width_of(p);
        out += "  \"" + dot_escape(p.to_string()) + "\" [label=\"" + dot_escape(p.to_block_string()) +
               "\" width=" + format_double(w) + " height=" + format_double(w) + extra_attr(p) + "];\n";
    }
    for (int idx : order) {
        for (int u : diagram.up_edges()[idx])
            out += "  \"" + dot_escape(diagram.node(idx).to_string()) + "\" -> \"" +
                   dot_escape(diagram.node(u).to_string()) + "\";\n";
    }
    out += "}\n";
    return out;
}

} // namespace

std::string export_dot(const EmergentHierarchy& h, const DotStyle& style) {
    double max_delta = 0.0;
    for (const auto& [p, dv] : h.delta) max_delta = std::max(max_delta, dv);
    auto width_of = [&](const Partition& p) {
        const double dv = std::max(h.delta.at(p), 0.0);
        if (max_delta <= 0.0) return style.min_width;
        return style.min_width + (style.max_width - style.min_width) * (dv / max_delta);
    };
    auto extra = [&](const Partition& p) {
        return " tooltip=\"dcp=" + format_double(h.delta.at(p)) + "\"";
    };
    return dot_body(h.diagram, width_of, extra);
}

std::string export_dot(const HasseDiagram& h, const DotStyle& style) {
    auto width_of = [&](const Partition&) { return style.min_width; };
    auto extra = [](const Partition&) { return std::string(); };
    return dot_body(h, width_of, extra);
}

std::string per_level_csv(const EmergentHierarchy& h) {
    std::string out = "level,n_members,mean_delta_cp\n";
    const auto means = per_level_mean_delta(h);
    for (int level = 1; level <= h.micro_dim; ++level) {
        int count = 0;
        auto it = h.per_level.find(level);
        if (it != h.per_level.end()) {
            for (const auto& [p, dv] : it->second)
                if (dv > 0.0) ++count;
        }
        out += std::to_string(level) + "," + std::to_string(count) + "," +
               format_double(means[level - 1]) + "\n";
    }
    return out;
}

std::string metrics_csv_header(int micro_dim) {
    std::string out = "alpha,seed,s_path,s_row,row_negentropy,complexity,n_emergent_nodes";
    for (int l = 1; l <= micro_dim; ++l) out += ",mean_dcp_l" + std::to_string(l);
    out += "\n";
    return out;
}

std::string metrics_csv_row(const std::string& alpha, std::uint64_t seed,
                            const MetricsReport& metrics, int n_emergent_nodes,
                            const std::vector<double>& per_level_mean) {
    std::string out = alpha + "," + std::to_string(seed) + "," + format_double(metrics.s_path) +
                      "," + format_double(metrics.s_row) + "," + format_double(metrics.row_negentropy) +
                      "," + format_double(metrics.complexity) + "," + std::to_string(n_emergent_nodes);
    for (double v : per_level_mean) out += "," + format_double(v);
    out += "\n";
    return out;
}

} // namespace emergence

// File formats and exporters: headerless CSV and JSON TPM interchange, the
// JSON result bundle, DOT export of hierarchies, per-level CSV profiles, and
// run manifests for bit-reproducible reruns.
#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "emergence/apportion.hpp"
#include "emergence/metrics.hpp"
#include "emergence/tpm.hpp"

namespace emergence {

inline constexpr const char* kResultSchema = "emergence-result-v1";

// Every output embeds its manifest; identical manifests replay to identical
// bytes. The timestamp is caller-supplied so reruns can pin it.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::string timestamp;
    std::string input_digest;
    std::map<std::string, std::string> config;
};

// FNV-1a 64-bit digest, rendered as "fnv1a64:<hex>".
std::string digest_bytes(const std::string& bytes);

// --- TPM files ------------------------------------------------------------

// Headerless CSV, n inferred from the row count. Values are written with 17
// significant digits so a round trip preserves every entry exactly.
Tpm read_tpm_csv(std::istream& in);
std::string write_tpm_csv(const Tpm& t);

// JSON object {"n": int, "rows": [[...]], "labels": [...]?}.
Tpm read_tpm_json(std::istream& in);
std::string write_tpm_json(const Tpm& t);

// Dispatch on extension: .json uses the JSON reader, anything else CSV.
Tpm read_tpm_file(const std::string& path);

// --- Result bundles ---------------------------------------------------------

std::string result_to_json(const AnalysisResult& result, const MetricsReport& metrics,
                           const RunManifest& manifest, const std::string& method);

// --- DOT export -------------------------------------------------------------

struct DotStyle {
    // Node widths scale linearly with the gain between these bounds.
    double min_width = 0.3;
    double max_width = 2.0;
};

std::string export_dot(const EmergentHierarchy& h, const DotStyle& style = {});
std::string export_dot(const HasseDiagram& h, const DotStyle& style = {});

// --- CSV projections ----------------------------------------------------------

// level,n_members,mean_delta_cp rows for levels 1..micro_dim.
std::string per_level_csv(const EmergentHierarchy& h);

// One row of sweep/metrics data; alpha is blank when not applicable.
std::string metrics_csv_header(int micro_dim);
std::string metrics_csv_row(const std::string& alpha, std::uint64_t seed,
                            const MetricsReport& metrics, int n_emergent_nodes,
                            const std::vector<double>& per_level_mean);

// Manifest as standalone JSON (sidecar files).
std::string manifest_to_json(const RunManifest& m);

// 17-significant-digit text for a double; the canonical number format of all
// CSV output.
std::string format_double(double v);

} // namespace emergence

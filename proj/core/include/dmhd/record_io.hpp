#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dmhd/diagnostics.hpp"

namespace dmhd {

/// One JSON object per line; doubles are written with round-trip precision.
[[nodiscard]] std::string to_ndjson_line(const DiagnosticsRecord& rec);
[[nodiscard]] DiagnosticsRecord from_ndjson_line(const std::string& line);

void write_ndjson(std::ostream& out, const std::vector<DiagnosticsRecord>& records);
[[nodiscard]] std::vector<DiagnosticsRecord> read_ndjson(std::istream& in);
[[nodiscard]] std::vector<DiagnosticsRecord> read_ndjson(const std::string& path);

/// CSV with the same fields; per-order norms become norm_a_s<order> and
/// vectors get _x/_y/_z suffixes.
[[nodiscard]] std::string csv_header(const std::vector<double>& orders);
[[nodiscard]] std::string csv_row(const DiagnosticsRecord& rec);
void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);

}  // namespace dmhd

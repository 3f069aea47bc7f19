#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace blochgeo {

/// Tabular output with run metadata. Missing values are empty CSV cells and
/// JSON nulls; numbers are written with 17 significant digits so that reading
/// them back reproduces the same doubles.
struct ExportRecord {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  void add_row(std::vector<std::optional<double>> row);
};

/// "%.17g"; NaN and infinities have no portable text form and are rejected.
std::string format_double(double v);

/// Header row, then one line per row, LF line endings. Metadata is not written.
void write_csv(std::ostream& os, const ExportRecord& record);
ExportRecord read_csv(std::istream& is);

/// {"metadata": ..., "columns": [...], "rows": [[...], ...]}.
nlohmann::json to_json(const ExportRecord& record);
ExportRecord from_json(const nlohmann::json& doc);

enum class ExportFormat { Csv, Json };

/// ".json" selects JSON, anything else CSV.
ExportFormat format_for_path(const std::string& path);

/// Writes `record` to `path` in the format chosen by its extension. Throws
/// std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const ExportRecord& record);

}  // namespace blochgeo

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "metasir/errors.hpp"

namespace metasir::cli {

/// Output could not be written.
class IoError : public Error
{
  public:
    using Error::Error;
};

enum class OutputFormat
{
    csv,
    json,
};

OutputFormat parse_format(const std::string& name);

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// CSV: a "# manifest: {...}" line, a header row, then one line per row
/// with 17 significant digits and LF endings. JSON: an object with keys
/// manifest, columns and rows. Throws InvalidArgument on ragged rows.
std::string render_table(const Table& table, const nlohmann::json& manifest, OutputFormat format);

/// Writes the rendered table to `path`, or to `fallback` when no path is
/// given. Throws IoError if the file cannot be written.
void emit_table(const Table& table, const nlohmann::json& manifest, OutputFormat format,
                const std::optional<std::filesystem::path>& path, std::ostream& fallback);

} // namespace metasir::cli

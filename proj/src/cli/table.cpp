#include "metasir/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace metasir::cli {

namespace {

std::string
format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

OutputFormat
parse_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "json")
        return OutputFormat::json;
    throw InvalidArgument("format must be csv or json, got '" + name + "'");
}

std::string
render_table(const Table& table, const nlohmann::json& manifest, OutputFormat format)
{
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw InvalidArgument("table row width does not match the column count");

    if (format == OutputFormat::json) {
        nlohmann::json doc;
        doc["manifest"] = manifest;
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        return doc.dump(2) + "\n";
    }

    std::string out = "# manifest: " + manifest.dump() + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += c ? "," : "";
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += c ? "," : "";
            out += format_double(row[c]);
        }
        out += "\n";
    }
    return out;
}

void
emit_table(const Table& table, const nlohmann::json& manifest, OutputFormat format,
           const std::optional<std::filesystem::path>& path, std::ostream& fallback)
{
    const std::string text = render_table(table, manifest, format);
    if (!path) {
        fallback << text;
        fallback.flush();
        return;
    }
    std::ofstream file(*path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open '" + path->string() + "' for writing");
    file << text;
    file.close();
    if (!file)
        throw IoError("failed writing '" + path->string() + "'");
}

} // namespace metasir::cli

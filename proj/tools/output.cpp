#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "mwht/errors.hpp"

namespace mwht::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json render_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    // JSON has no infinities; non-finite cells become their text form.
    for (double v : row) r.push_back(std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_number(v)));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::filesystem::path write_table(const std::filesystem::path& dir, const Table& table, TableFormat format) {
  const std::filesystem::path path = dir / (table.name + (format == TableFormat::csv ? ".csv" : ".json"));
  write_atomic(path, format == TableFormat::csv ? render_csv(table) : render_json(table).dump(2) + "\n");
  return path;
}

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& stem,
                                 const nlohmann::ordered_json& doc) {
  const std::filesystem::path path = dir / (stem + ".json");
  write_atomic(path, doc.dump(2) + "\n");
  return path;
}

}  // namespace mwht::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace mwht::cli {

enum class TableFormat { csv, json };

// Column-oriented numeric table; column names carry their unit, e.g. "frequency_GHz".
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string render_csv(const Table& table);
nlohmann::ordered_json render_json(const Table& table);

// Writes via a temporary file in the same directory and a rename. IoError on failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Returns the written path.
std::filesystem::path write_table(const std::filesystem::path& dir, const Table& table, TableFormat format);
std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& stem,
                                 const nlohmann::ordered_json& doc);

// Shortest round-trip text for a double; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

}  // namespace mwht::cli

#pragma once

#include "json.hpp"
#include <string>
#include <vector>

namespace catalynet::app {

// Named columns and rows kept in insertion order. Every cell is numeric.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);

// Creates missing parent directories. Throws std::runtime_error on failure.
void write_text(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const Table& t);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace catalynet::app

#pragma once

// Tabular results with a metadata block, rendered as CSV with '#' comment
// lines or as a JSON envelope {"metadata": ..., "rows": [...]}.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ghzt::cli {

using Cell = std::variant<std::monostate, bool, long long, std::uint64_t, double, std::string>;
using Json = nlohmann::ordered_json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

struct Metadata {
  std::string command;
  std::optional<std::uint64_t> seed;
  Json params = Json::object();
  std::vector<std::string> notes;
};

enum class Format { csv, json };

/// Shortest round-trip decimal form.
std::string format_number(double x);

Json metadata_json(const Metadata& meta);
std::string render(const Metadata& meta, const Table& table, Format format);

}  // namespace ghzt::cli

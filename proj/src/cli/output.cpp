#include "output.hpp"

#include "ghzt/rng.hpp"
#include "ghzt/errors.hpp"

#include <fmt/format.h>

#include <cmath>

#ifndef GHZT_VERSION
#define GHZT_VERSION "0.0.0"
#endif

namespace ghzt::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long v) const { return fmt::format("{}", v); }
    std::string operator()(std::uint64_t v) const { return fmt::format("{}", v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  };
  return std::visit(Visitor{}, c);
}

Json cell_json(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(bool b) const { return b; }
    Json operator()(long long v) const { return v; }
    Json operator()(std::uint64_t v) const { return v; }
    Json operator()(double v) const { return std::isfinite(v) ? Json(v) : Json(nullptr); }
    Json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ContractViolation(fmt::format("row has {} cells for {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

Json metadata_json(const Metadata& meta) {
  Json j;
  j["tool"] = "ghzt";
  j["version"] = GHZT_VERSION;
  j["command"] = meta.command;
  j["generator"] = {{"algorithm", kRngAlgorithm}, {"version", kRngVersion}};
  j["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
  j["params"] = meta.params;
  j["notes"] = meta.notes;
  return j;
}

std::string render(const Metadata& meta, const Table& table, Format format) {
  if (format == Format::json) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < r.size(); ++i) obj[table.columns[i]] = cell_json(r[i]);
      rows.push_back(std::move(obj));
    }
    Json doc;
    doc["metadata"] = metadata_json(meta);
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
  }

  std::string out;
  out += fmt::format("# tool: ghzt {}\n", GHZT_VERSION);
  out += fmt::format("# command: {}\n", meta.command);
  out += fmt::format("# generator: {} v{}\n", kRngAlgorithm, kRngVersion);
  out += fmt::format("# seed: {}\n", meta.seed ? fmt::format("{}", *meta.seed) : "none");
  out += fmt::format("# params: {}\n", meta.params.dump());
  for (const std::string& note : meta.notes) out += fmt::format("# note: {}\n", note);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(table.columns[i]);
  }
  out += "\n";
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out.push_back(',');
      out += cell_text(r[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace ghzt::cli

#include "evanesim/app/emit.hpp"

#include <cmath>
#include <fstream>

#include "evanesim/app/units.hpp"

namespace evanesim::app {

using nlohmann::json;

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  const double x = std::get<double>(c);
  if (!std::isfinite(x)) return format_number(x);
  return x;
}

Cell cell_from_json(const json& v, bool text) {
  if (text) return v.get<std::string>();
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

std::string banner() { return std::string("# evanesim v") + EVANESIM_VERSION; }

std::string table_to_csv(const Table& table) {
  std::string out = banner() + "\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out += ',';
    out += table.columns[j].header();
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += cell_text(row[j]);
    }
    out += '\n';
  }
  return out;
}

json bundle_to_json(const ResultBundle& bundle) {
  json doc;
  doc["version"] = EVANESIM_VERSION;
  doc["config"] = to_json(bundle.config);
  json prov = json::array();
  for (const auto& [k, v] : bundle.provenance) prov.push_back({k, v});
  doc["provenance"] = prov;
  json tables = json::array();
  for (const auto& t : bundle.tables) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = json::array();
      for (const auto& c : r) row.push_back(cell_json(c));
      rows.push_back(std::move(row));
    }
    tables.push_back({{"name", t.name}, {"columns", cols}, {"rows", rows}});
  }
  doc["tables"] = tables;
  return doc;
}

ResultBundle bundle_from_json(const json& doc) {
  ResultBundle b;
  b.config = parse_config(doc.at("config"));
  for (const auto& kv : doc.at("provenance")) {
    b.provenance.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
  }
  for (const auto& jt : doc.at("tables")) {
    Table t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& c : jt.at("columns")) {
      t.columns.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>()});
    }
    for (const auto& jr : jt.at("rows")) {
      std::vector<Cell> row;
      for (std::size_t j = 0; j < jr.size(); ++j) {
        row.push_back(cell_from_json(jr[j], j < t.columns.size() && t.columns[j].unit.empty()));
      }
      t.rows.push_back(std::move(row));
    }
    b.tables.push_back(std::move(t));
  }
  return b;
}

std::vector<std::filesystem::path> emit(const ResultBundle& bundle, Format format,
                                        const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError(directory, ec.message());

  std::vector<std::filesystem::path> written;
  if (format == Format::Json) {
    const auto path = directory / "bundle.json";
    write_file(path, bundle_to_json(bundle).dump(1) + "\n");
    written.push_back(path);
    return written;
  }
  for (const auto& t : bundle.tables) {
    const auto path = directory / (t.name + ".csv");
    write_file(path, table_to_csv(t));
    written.push_back(path);
  }
  std::string prov = banner() + "\nkey,value\n";
  for (const auto& [k, v] : bundle.provenance) prov += k + "," + v + "\n";
  write_file(directory / "provenance.csv", prov);
  written.push_back(directory / "provenance.csv");
  write_file(directory / "config.json", dump_config(bundle.config) + "\n");
  written.push_back(directory / "config.json");
  return written;
}

}  // namespace evanesim::app

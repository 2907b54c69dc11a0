#pragma once

// Execution of a RunConfig: sweep points are evaluated independently on a
// worker pool and merged into tables in sweep-index order.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evanesim/app/config.hpp"

namespace evanesim::app {

using Cell = std::variant<double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "-" for dimensionless, "" for text columns

  std::string header() const { return unit.empty() ? name : name + "[" + unit + "]"; }
  friend bool operator==(const Column&, const Column&) = default;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

/// NaN cells compare equal to NaN cells.
bool operator==(const Table& a, const Table& b);

struct ResultBundle {
  RunConfig config;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<Table> tables;

  const Table* find(std::string_view name) const;
};

bool operator==(const ResultBundle& a, const ResultBundle& b);

/// Runs every requested output at every sweep point. `workers` <= 0 picks the
/// hardware concurrency. A failing point rethrows its DomainError with the
/// sweep point prepended to the message.
ResultBundle run(const RunConfig& config, int workers = 1);

}  // namespace evanesim::app

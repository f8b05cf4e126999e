// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace portsim::cli {

/// Numeric result labeled with the module and operation it came from.
struct ResultValue {
  double value = 0.0;
  std::string module;
  std::string op;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells pre-formatted
};

/// Machine-readable run report. Field order is emission order, so identical
/// configs produce byte-identical output.
struct Report {
  std::string version;
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, ResultValue>> results;
  std::vector<Table> tables;
  std::vector<std::string> warnings;

  void add_input(const std::string& key, const std::string& value) { inputs.emplace_back(key, value); }
  void add_result(const std::string& name, double value, const std::string& module,
                  const std::string& op) {
    results.push_back({name, ResultValue{value, module, op}});
  }
};

/// Doubles rendered with 17 significant digits.
std::string format_double(double v);

std::string to_json(const Report& report);

/// CSV of one table: header line, then rows.
std::string table_to_csv(const Table& table);

/// Minimal structural JSON-schema check (type / required / properties / items /
/// enum / additionalProperties), enough for the shipped report schema.
bool validate_against_schema(const std::string& document_json, const std::string& schema_json,
                             std::string* error);

}  // namespace portsim::cli

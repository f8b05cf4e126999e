// SPDX-License-Identifier: Apache-2.0
#include "portsim/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace portsim::cli {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const Report& report) {
  std::string out;
  out += "{\n  \"version\": ";
  append_escaped(out, report.version);
  out += ",\n  \"subcommand\": ";
  append_escaped(out, report.subcommand);
  out += ",\n  \"inputs\": {";
  for (size_t i = 0; i < report.inputs.size(); ++i) {
    if (i) out += ", ";
    append_escaped(out, report.inputs[i].first);
    out += ": ";
    append_escaped(out, report.inputs[i].second);
  }
  out += "},\n  \"results\": {";
  for (size_t i = 0; i < report.results.size(); ++i) {
    if (i) out += ", ";
    out += "\n    ";
    append_escaped(out, report.results[i].first);
    const ResultValue& rv = report.results[i].second;
    out += ": {\"value\": " + format_double(rv.value) + ", \"module\": ";
    append_escaped(out, rv.module);
    out += ", \"op\": ";
    append_escaped(out, rv.op);
    out += "}";
  }
  out += report.results.empty() ? "},\n" : "\n  },\n";
  out += "  \"tables\": [";
  for (size_t t = 0; t < report.tables.size(); ++t) {
    const Table& tab = report.tables[t];
    if (t) out += ", ";
    out += "\n    {\"name\": ";
    append_escaped(out, tab.name);
    out += ", \"columns\": [";
    for (size_t c = 0; c < tab.columns.size(); ++c) {
      if (c) out += ", ";
      append_escaped(out, tab.columns[c]);
    }
    out += "], \"rows\": [";
    for (size_t r = 0; r < tab.rows.size(); ++r) {
      if (r) out += ", ";
      out += "[";
      for (size_t c = 0; c < tab.rows[r].size(); ++c) {
        if (c) out += ", ";
        append_escaped(out, tab.rows[r][c]);
      }
      out += "]";
    }
    out += "]}";
  }
  out += report.tables.empty() ? "],\n" : "\n  ],\n";
  out += "  \"warnings\": [";
  for (size_t i = 0; i < report.warnings.size(); ++i) {
    if (i) out += ", ";
    append_escaped(out, report.warnings[i]);
  }
  out += "]\n}\n";
  return out;
}

std::string table_to_csv(const Table& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

namespace {

using nlohmann::json;

bool validate_node(const json& doc, const json& schema, const std::string& path, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = path + ": " + msg;
    return false;
  };
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
                    (t == "string" && doc.is_string()) || (t == "number" && doc.is_number()) ||
                    (t == "integer" && doc.is_number_integer()) ||
                    (t == "boolean" && doc.is_boolean());
    if (!ok) return fail("expected type " + t);
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"]) ok = ok || v == doc;
    if (!ok) return fail("value not in enum");
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!doc.contains(key.get<std::string>())) return fail("missing required key '" + key.get<std::string>() + "'");
      }
    }
    const json props = schema.value("properties", json::object());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (props.contains(it.key())) {
        if (!validate_node(it.value(), props[it.key()], path + "/" + it.key(), error)) return false;
      } else if (schema.contains("additionalProperties")) {
        const json& ap = schema["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>()) return fail("unexpected key '" + it.key() + "'");
        if (ap.is_object() && !validate_node(it.value(), ap, path + "/" + it.key(), error)) return false;
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (size_t i = 0; i < doc.size(); ++i) {
      if (!validate_node(doc[i], schema["items"], path + "[" + std::to_string(i) + "]", error)) return false;
    }
  }
  return true;
}

}  // namespace

bool validate_against_schema(const std::string& document_json, const std::string& schema_json,
                             std::string* error) {
  json doc, schema;
  try {
    doc = json::parse(document_json);
    schema = json::parse(schema_json);
  } catch (const json::exception& e) {
    if (error) *error = std::string("parse error: ") + e.what();
    return false;
  }
  return validate_node(doc, schema, "$", error);
}

}  // namespace portsim::cli

#include "apfree/io.hpp"

#include <nlohmann/json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "apfree/errors.hpp"

namespace apfree {

EmitFormat parse_emit_format(std::string_view token) {
  if (token == "tsv") return EmitFormat::Tsv;
  if (token == "json-lines") return EmitFormat::JsonLines;
  throw PreconditionError("unknown format '" + std::string(token) +
                          "' (expected tsv or json-lines)");
}

void write_map(std::ostream& os, const FiniteOrderedMap& m, EmitFormat format,
               std::string_view source_label, std::uint32_t depth) {
  os << "# source=" << source_label << " order=" << m.order()->name()
     << " depth=" << depth << "\n";
  const auto& es = m.entries();
  for (std::size_t rank = 0; rank < es.size(); ++rank) {
    if (format == EmitFormat::Tsv) {
      os << es[rank].domain << "\t" << rank << "\t" << es[rank].image.value()
         << "\n";
    } else {
      nlohmann::ordered_json row;
      row["domain"] = es[rank].domain.str();
      row["rank"] = rank;
      row["image"] = es[rank].image.value().str();
      os << row.dump() << "\n";
    }
  }
}

void write_audit(std::ostream& os, const ConstructionState& st) {
  for (const AuditStep& step : st.audit()) {
    nlohmann::ordered_json row;
    row["step"] = step.step;
    row["kind"] = step_kind_name(step.kind);
    row["shift"] = step.shift.str();
    if (step.coverage_index) row["coverage_index"] = *step.coverage_index;
    nlohmann::ordered_json added = nlohmann::ordered_json::array();
    for (const ChosenPoint& c : step.added) {
      nlohmann::ordered_json item;
      item["domain"] = c.domain.str();
      item["image"] = c.image.value().str();
      item["index"] = c.enumeration_index;
      item["coverage"] = c.coverage_target;
      added.push_back(std::move(item));
    }
    row["added"] = std::move(added);
    os << row.dump() << "\n";
  }
}

namespace {

struct RawRow {
  std::string domain;
  std::string second;
  std::string third;  // empty when the row had two columns
  std::size_t line;
};

Rational parse_field(const std::string& text, std::size_t line,
                     const char* what) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(line) + ": bad " + what + ": " +
                     e.what());
  }
}

RawRow parse_json_row(const std::string& text, std::size_t line) {
  nlohmann::json row;
  try {
    row = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  RawRow out;
  out.line = line;
  if (!row.is_object() || !row.contains("domain")) {
    throw ParseError("line " + std::to_string(line) +
                     ": expected an object with a domain key");
  }
  auto field_text = [&](const char* key) -> std::string {
    const auto& v = row.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw ParseError("line " + std::to_string(line) + ": " + key +
                     " must be a string or integer");
  };
  out.domain = field_text("domain");
  if (row.contains("rank")) out.second = field_text("rank");
  if (row.contains("image")) out.third = field_text("image");
  if (out.second.empty() && out.third.empty()) {
    throw ParseError("line " + std::to_string(line) +
                     ": need a rank or image key");
  }
  if (out.second.empty()) {  // image only: treat as the two-column form
    out.second = std::move(out.third);
    out.third.clear();
  }
  return out;
}

RawRow parse_tsv_row(const std::string& text, std::size_t line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = text.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(text.substr(start));
      break;
    }
    fields.push_back(text.substr(start, tab - start));
    start = tab + 1;
  }
  if (fields.size() != 2 && fields.size() != 3) {
    throw ParseError("line " + std::to_string(line) + ": expected 2 or 3 " +
                     "tab-separated fields, got " +
                     std::to_string(fields.size()));
  }
  RawRow out;
  out.line = line;
  out.domain = std::move(fields[0]);
  out.second = std::move(fields[1]);
  if (fields.size() == 3) out.third = std::move(fields[2]);
  return out;
}

}  // namespace

FiniteOrderedMap read_map(std::istream& in, OrderPtr order) {
  const bool rank_mode = (order == nullptr);
  if (rank_mode) order = builtin_order(BuiltinOrder::QStandard);

  std::vector<MapEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const RawRow row = (line[first] == '{') ? parse_json_row(line, line_no)
                                            : parse_tsv_row(line, line_no);
    const Rational domain = parse_field(row.domain, row.line, "domain value");
    Rational image;
    if (rank_mode) {
      image = parse_field(row.second, row.line, "rank");
      if (!image.is_integer()) {
        throw ParseError("line " + std::to_string(row.line) +
                         ": rank must be an integer, got " + image.str());
      }
    } else {
      const std::string& text = row.third.empty() ? row.second : row.third;
      image = parse_field(text, row.line, "image value");
    }
    entries.push_back({domain, OrderPoint(std::move(image))});
  }
  return FiniteOrderedMap(std::move(order), std::move(entries));
}

}  // namespace apfree

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdprov/dataset.hpp"
#include "cdprov/error.hpp"

namespace cdprov {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string header(const std::vector<FeatureSpec>& schema, bool labeled) {
  std::string out;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (f > 0) out += ',';
    out += schema[f].name;
  }
  if (labeled) out += ",label";
  out += '\n';
  return out;
}

void append_row(std::string& out, const std::vector<FeatureSpec>& schema, std::span<const double> row) {
  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (f > 0) out += ',';
    out += format_value(row[f], schema[f].kind);
  }
}

double parse_value(std::string_view text, FeatureKind kind, std::size_t line, std::string_view column) {
  auto bad = [&](std::string_view why) {
    return Error(ErrorCode::BadValue, "line " + std::to_string(line) + ", column " + std::string(column) + ": " +
                                          std::string(why) + " \"" + std::string(text) + "\"");
  };
  if (kind == FeatureKind::Boolean) {
    if (text == "true") return 1.0;
    if (text == "false") return 0.0;
    throw bad("expected true/false, got");
  }
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw bad("not a number:");
  }
  if (kind == FeatureKind::Count && value != std::floor(value)) throw bad("count is not an integer:");
  return value;
}

}  // namespace

std::string format_value(double value, FeatureKind kind) {
  char buf[64];
  switch (kind) {
    case FeatureKind::Boolean:
      return value != 0.0 ? "true" : "false";
    case FeatureKind::Count:
      std::snprintf(buf, sizeof buf, "%ld", std::lround(value));
      return buf;
    case FeatureKind::Ratio:
      std::snprintf(buf, sizeof buf, "%.4f", value);
      return buf;
  }
  return {};
}

std::string format_csv(const Dataset& ds) {
  std::string out = header(ds.schema(), true);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    append_row(out, ds.schema(), ds.row(i));
    out += ',';
    out += to_string(ds.label(i));
    out += '\n';
  }
  return out;
}

std::string format_unlabeled_csv(const FeatureMatrix& features) {
  std::string out = header(features.schema(), false);
  for (std::size_t i = 0; i < features.row_count(); ++i) {
    append_row(out, features.schema(), features.row(i));
    out += '\n';
  }
  return out;
}

Dataset parse_csv(std::string_view text) {
  Dataset ds;
  const auto& schema = ds.schema();
  const std::size_t columns = schema.size() + 1;

  std::size_t line_no = 0;
  bool saw_header = false;
  std::vector<double> values(schema.size());
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!saw_header) {
      const std::string expected = header(schema, true);
      if (line != std::string_view(expected).substr(0, expected.size() - 1)) {
        throw Error(ErrorCode::BadHeader, "expected \"" + expected.substr(0, expected.size() - 1) + "\"");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    const auto cells = split(line, ',');
    if (cells.size() != columns) {
      throw Error(ErrorCode::RaggedRow, "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                                            " fields, expected " + std::to_string(columns));
    }
    for (std::size_t f = 0; f < schema.size(); ++f) {
      values[f] = parse_value(cells[f], schema[f].kind, line_no, schema[f].name);
    }
    const auto label = parse_label(cells.back());
    if (!label) {
      throw Error(ErrorCode::BadValue, "line " + std::to_string(line_no) + ", column label: unknown label \"" +
                                           std::string(cells.back()) + "\"");
    }
    ds.add_row(values, *label);
  }
  if (!saw_header) throw Error(ErrorCode::BadHeader, "file is empty");
  return ds;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ReadFailed, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::ReadFailed, "error reading " + path.string());
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::WriteFailed, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::WriteFailed, "error writing " + path.string());
}

Dataset load_csv(const std::filesystem::path& path) { return parse_csv(read_text_file(path)); }

void save_csv(const Dataset& ds, const std::filesystem::path& path) { write_text_file(path, format_csv(ds)); }

}  // namespace cdprov

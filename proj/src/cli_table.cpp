#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eres/cli.hpp"

namespace eres::cli {

std::string Column::header() const { return name + "[" + unit + "]"; }

void CurveTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row has " + std::to_string(row.size()) + " values for " +
                                std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CurveTable::to_csv() const {
  std::string out;
  for (const auto& [k, v] : metadata) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i].header();
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

Json CurveTable::to_json() const {
  Json j;
  Json meta = Json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  Json cols = Json::array();
  for (const auto& c : columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  j["columns"] = cols;
  Json rs = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(nullptr);
    }
    rs.push_back(r);
  }
  j["rows"] = rs;
  return j;
}

bool CurveTable::all_valid() const {
  for (const auto& [k, v] : metadata)
    if (k.rfind("valid:", 0) == 0 && v == "false") return false;
  return true;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

CurveTable parse_csv(std::string_view text) {
  CurveTable t;
  bool header = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const auto colon = body.find(": ");
      if (colon == std::string_view::npos)
        t.metadata.emplace_back(std::string(body), "");
      else
        t.metadata.emplace_back(std::string(body.substr(0, colon)), std::string(body.substr(colon + 2)));
      continue;
    }
    const auto fields = split(line, ',');
    if (!header) {
      for (auto f : fields) {
        const auto open = f.find('[');
        if (open == std::string_view::npos || f.back() != ']')
          throw ConfigError("csv line " + std::to_string(line_no) + ": column '" +
                            std::string(f) + "' lacks a [unit]");
        t.columns.push_back({std::string(f.substr(0, open)),
                             std::string(f.substr(open + 1, f.size() - open - 2))});
      }
      header = true;
      continue;
    }
    if (fields.size() != t.columns.size())
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                        std::to_string(t.columns.size()) + " fields");
    std::vector<double> row;
    for (auto f : fields) {
      if (f.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" +
                          std::string(f) + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace eres::cli

#include "vga/matrix.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vga {

const char* to_string(Orientation o) { return o == Orientation::input ? "input" : "output"; }
const char* to_string(Scale s) { return s == Scale::cardinal ? "cardinal" : "ordinal"; }

DecisionMatrix::DecisionMatrix(std::vector<MetricSpec> metrics, std::vector<std::string> dmus,
                               std::vector<std::vector<double>> values)
    : metrics_(std::move(metrics)), dmus_(std::move(dmus)), values_(std::move(values)) {
  if (values_.size() != metrics_.size())
    throw std::invalid_argument("value grid needs one row per metric");
  for (const auto& r : values_)
    if (r.size() != dmus_.size())
      throw std::invalid_argument("value grid needs one column per alternative");
  for (std::size_t k = 0; k < metrics_.size(); ++k)
    (metrics_[k].orientation == Orientation::input ? inputs_ : outputs_).push_back(k);
}

std::optional<std::size_t> DecisionMatrix::metric_index(std::string_view id) const {
  for (std::size_t k = 0; k < metrics_.size(); ++k)
    if (metrics_[k].id == id) return k;
  return std::nullopt;
}

std::optional<std::size_t> DecisionMatrix::dmu_index(std::string_view id) const {
  for (std::size_t j = 0; j < dmus_.size(); ++j)
    if (dmus_[j] == id) return j;
  return std::nullopt;
}

DecisionMatrix DecisionMatrix::select(const std::vector<std::size_t>& dmus) const {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> values(metrics_.size());
  for (std::size_t j : dmus) ids.push_back(dmus_.at(j));
  for (std::size_t k = 0; k < metrics_.size(); ++k)
    for (std::size_t j : dmus) values[k].push_back(values_[k][j]);
  return DecisionMatrix(metrics_, std::move(ids), std::move(values));
}

DecisionMatrix DecisionMatrix::without(std::size_t dmu) const {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < dmus_.size(); ++j)
    if (j != dmu) keep.push_back(j);
  return select(keep);
}

DecisionMatrix DecisionMatrix::with_metric_row(std::size_t metric, MetricSpec spec,
                                               std::vector<double> row) const {
  auto metrics = metrics_;
  auto values = values_;
  metrics.at(metric) = std::move(spec);
  values.at(metric) = std::move(row);
  return DecisionMatrix(std::move(metrics), dmus_, std::move(values));
}

std::string Violation::to_string() const {
  std::string out = rule;
  if (!metric.empty()) out += " metric=" + metric;
  if (!dmu.empty()) out += " dmu=" + dmu;
  if (!detail.empty()) out += ": " + detail;
  return out;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<Violation> validate(const DecisionMatrix& m) {
  std::vector<Violation> out;
  if (m.inputs().empty()) out.push_back({"", "", "no-input-metric", "at least one input required"});
  if (m.outputs().empty())
    out.push_back({"", "", "no-output-metric", "at least one output required"});
  if (m.dmu_count() < 2)
    out.push_back({"", "", "too-few-alternatives",
                   std::to_string(m.dmu_count()) + " alternative(s), need at least 2"});

  bool seen_output = false;
  std::set<std::string> ids;
  for (const auto& spec : m.metrics()) {
    if (spec.orientation == Orientation::output) seen_output = true;
    else if (seen_output)
      out.push_back({spec.id, "", "metric-order", "inputs must precede outputs"});
    if (spec.id.empty()) out.push_back({"", "", "empty-id", "metric without id"});
    if (!ids.insert(spec.id).second) out.push_back({spec.id, "", "duplicate-id", "metric id reused"});
  }
  std::set<std::string> dmu_ids;
  for (const auto& id : m.dmus()) {
    if (id.empty()) out.push_back({"", "", "empty-id", "alternative without id"});
    if (!dmu_ids.insert(id).second) out.push_back({"", id, "duplicate-id", "alternative id reused"});
  }

  for (std::size_t k = 0; k < m.metric_count(); ++k) {
    const auto& spec = m.metric(k);
    bool bounds_ok = false;
    if (spec.ordinal()) {
      if (!spec.likert) {
        out.push_back({spec.id, "", "missing-likert-bounds", "ordinal metric needs lower and upper"});
      } else if (!(spec.likert->lower > 0.0 && spec.likert->lower < spec.likert->upper) ||
                 !std::isfinite(spec.likert->upper)) {
        out.push_back({spec.id, "", "degenerate-likert-scale",
                       "need 0 < lower < upper, got [" + shortest(spec.likert->lower) + ", " +
                           shortest(spec.likert->upper) + "]"});
      } else {
        bounds_ok = true;
      }
    } else if (spec.likert) {
      out.push_back({spec.id, "", "unexpected-likert-bounds", "cardinal metric carries bounds"});
    }
    for (std::size_t j = 0; j < m.dmu_count(); ++j) {
      const double v = m.value(k, j);
      if (!(v > 0.0) || !std::isfinite(v)) {
        out.push_back({spec.id, m.dmu(j), "non-positive-value", "value " + shortest(v)});
        continue;
      }
      if (bounds_ok && (v < spec.likert->lower || v > spec.likert->upper))
        out.push_back({spec.id, m.dmu(j), "out-of-likert-range",
                       "value " + shortest(v) + " outside [" + shortest(spec.likert->lower) +
                           ", " + shortest(spec.likert->upper) + "]"});
    }
  }
  return out;
}

ParseError::ParseError(const std::string& message, std::string row, std::string column)
    : std::runtime_error([&] {
        std::string where;
        if (!row.empty()) where += " row " + row;
        if (!column.empty()) where += (where.empty() ? " column " : ", column ") + column;
        return where.empty() ? message : message + " (at" + where + ")";
      }()),
      row_(std::move(row)),
      column_(std::move(column)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string s = std::to_string(violations.size()) + " validation violation(s)";
        if (!violations.empty()) s += ", first: " + violations.front().to_string();
        return s;
      }()),
      violations_(std::move(violations)) {}

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

namespace {

using nlohmann::json;

Orientation parse_orientation(const std::string& s, const std::string& row,
                              const std::string& col) {
  if (s == "input") return Orientation::input;
  if (s == "output") return Orientation::output;
  throw ParseError("orientation must be 'input' or 'output', got '" + s + "'", row, col);
}

Scale parse_scale(const std::string& s, const std::string& row, const std::string& col) {
  if (s == "cardinal") return Scale::cardinal;
  if (s == "ordinal") return Scale::ordinal;
  throw ParseError("scale must be 'cardinal' or 'ordinal', got '" + s + "'", row, col);
}

const json& member(const json& obj, const char* key, const std::string& row) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", row, key);
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& row) {
  const auto& v = member(obj, key, row);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", row, key);
  return v.get<std::string>();
}

double number_at(const json& v, const std::string& row, const std::string& col) {
  if (!v.is_number()) throw ParseError("non-numeric cell", row, col);
  return v.get<double>();
}

DecisionMatrix parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be an object");
  const auto& metrics = member(doc, "metrics", "");
  const auto& dmus = member(doc, "dmus", "");
  if (!metrics.is_array()) throw ParseError("'metrics' must be an array", "", "metrics");
  if (!dmus.is_array()) throw ParseError("'dmus' must be an array", "", "dmus");

  std::vector<MetricSpec> specs;
  std::set<std::string> metric_ids;
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    const auto& m = metrics[k];
    const std::string where = "metrics[" + std::to_string(k) + "]";
    if (!m.is_object()) throw ParseError("metric entry must be an object", where);
    MetricSpec spec;
    spec.id = string_member(m, "id", where);
    if (spec.id.empty()) throw ParseError("empty metric id", where, "id");
    if (!metric_ids.insert(spec.id).second) throw ParseError("duplicate metric id", where, spec.id);
    spec.orientation = parse_orientation(string_member(m, "orientation", spec.id), spec.id, "orientation");
    spec.scale = parse_scale(string_member(m, "scale", spec.id), spec.id, "scale");
    spec.unit = m.contains("unit") ? string_member(m, "unit", spec.id) : std::string();
    if (auto it = m.find("likert"); it != m.end() && !it->is_null()) {
      if (!it->is_object()) throw ParseError("'likert' must be an object", spec.id, "likert");
      spec.likert = LikertBounds{number_at(member(*it, "lower", spec.id), spec.id, "likert.lower"),
                                 number_at(member(*it, "upper", spec.id), spec.id, "likert.upper")};
    }
    specs.push_back(std::move(spec));
  }

  std::vector<std::string> ids;
  std::set<std::string> dmu_ids;
  std::vector<std::vector<double>> values(specs.size());
  for (std::size_t j = 0; j < dmus.size(); ++j) {
    const auto& d = dmus[j];
    const std::string where = "dmus[" + std::to_string(j) + "]";
    if (!d.is_object()) throw ParseError("alternative entry must be an object", where);
    std::string id = string_member(d, "id", where);
    if (id.empty()) throw ParseError("empty alternative id", where, "id");
    if (!dmu_ids.insert(id).second) throw ParseError("duplicate alternative id", id, "id");
    const auto& vals = member(d, "values", id);
    if (!vals.is_object()) throw ParseError("'values' must be an object", id, "values");
    for (const auto& [key, _] : vals.items())
      if (!metric_ids.count(key)) throw ParseError("unknown metric", id, key);
    for (std::size_t k = 0; k < specs.size(); ++k) {
      auto it = vals.find(specs[k].id);
      if (it == vals.end()) throw ParseError("missing value", id, specs[k].id);
      values[k].push_back(number_at(*it, id, specs[k].id));
    }
    ids.push_back(std::move(id));
  }
  return DecisionMatrix(std::move(specs), std::move(ids), std::move(values));
}

// RFC 4180 style: quoted fields may contain commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
      }
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", std::to_string(rows.size() + 1));
  if (any || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const std::string& row, const std::string& col) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("non-numeric cell '" + s + "'", row, col);
  return v;
}

DecisionMatrix parse_csv(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto rows = split_csv(text);
  if (rows.size() < 6) throw ParseError("CSV needs six header rows");
  const std::size_t width = rows[0].size();
  if (width < 2) throw ParseError("CSV header needs at least one metric column", "1");
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != width)
      throw ParseError("expected " + std::to_string(width) + " cells, got " +
                           std::to_string(rows[r].size()),
                       std::to_string(r + 1));

  std::vector<MetricSpec> specs;
  std::set<std::string> metric_ids;
  for (std::size_t c = 1; c < width; ++c) {
    MetricSpec spec;
    spec.id = trim(rows[0][c]);
    const std::string col = std::to_string(c + 1);
    if (spec.id.empty()) throw ParseError("empty metric id", "1", col);
    if (!metric_ids.insert(spec.id).second) throw ParseError("duplicate metric id", "1", spec.id);
    spec.orientation = parse_orientation(trim(rows[1][c]), "2", spec.id);
    spec.scale = parse_scale(trim(rows[2][c]), "3", spec.id);
    spec.unit = rows[3][c];
    const std::string lo = trim(rows[4][c]);
    const std::string hi = trim(rows[5][c]);
    if (!lo.empty() || !hi.empty()) {
      if (lo.empty() || hi.empty()) throw ParseError("Likert bounds need both ends", lo.empty() ? "5" : "6", spec.id);
      spec.likert = LikertBounds{parse_number(lo, "5", spec.id), parse_number(hi, "6", spec.id)};
    }
    specs.push_back(std::move(spec));
  }

  std::vector<std::string> ids;
  std::set<std::string> dmu_ids;
  std::vector<std::vector<double>> values(specs.size());
  for (std::size_t r = 6; r < rows.size(); ++r) {
    std::string id = trim(rows[r][0]);
    if (id.empty()) throw ParseError("empty alternative id", std::to_string(r + 1), "1");
    if (!dmu_ids.insert(id).second) throw ParseError("duplicate alternative id", id);
    for (std::size_t c = 1; c < width; ++c)
      values[c - 1].push_back(parse_number(rows[r][c], id, specs[c - 1].id));
    ids.push_back(std::move(id));
  }
  return DecisionMatrix(std::move(specs), std::move(ids), std::move(values));
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

DecisionMatrix parse_matrix(std::string_view text, Format format, bool check) {
  DecisionMatrix m = format == Format::json ? parse_json(text) : parse_csv(text);
  if (check) {
    auto violations = validate(m);
    if (!violations.empty()) throw ValidationError(std::move(violations));
  }
  return m;
}

DecisionMatrix read_matrix(const std::filesystem::path& path, std::optional<Format> format,
                           bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!format) format = path.extension() == ".csv" ? Format::csv : Format::json;
  return parse_matrix(buf.str(), *format, check);
}

std::string to_json(const DecisionMatrix& m) {
  using ojson = nlohmann::ordered_json;
  ojson metrics = ojson::array();
  for (const auto& spec : m.metrics()) {
    ojson j;
    j["id"] = spec.id;
    j["orientation"] = to_string(spec.orientation);
    j["scale"] = to_string(spec.scale);
    j["unit"] = spec.unit;
    if (spec.likert) {
      j["likert"]["lower"] = spec.likert->lower;
      j["likert"]["upper"] = spec.likert->upper;
    }
    metrics.push_back(std::move(j));
  }
  ojson dmus = ojson::array();
  for (std::size_t j = 0; j < m.dmu_count(); ++j) {
    ojson d;
    d["id"] = m.dmu(j);
    d["values"] = ojson::object();
    for (std::size_t k = 0; k < m.metric_count(); ++k) d["values"][m.metric(k).id] = m.value(k, j);
    dmus.push_back(std::move(d));
  }
  ojson doc;
  doc["metrics"] = std::move(metrics);
  doc["dmus"] = std::move(dmus);
  return doc.dump(2) + "\n";
}

std::string to_csv(const DecisionMatrix& m) {
  static const char* labels[] = {"id", "orientation", "scale", "unit", "likert_lower", "likert_upper"};
  std::ostringstream out;
  for (int r = 0; r < 6; ++r) {
    out << labels[r];
    for (const auto& spec : m.metrics()) {
      out << ',';
      switch (r) {
        case 0: out << csv_cell(spec.id); break;
        case 1: out << to_string(spec.orientation); break;
        case 2: out << to_string(spec.scale); break;
        case 3: out << csv_cell(spec.unit); break;
        case 4: if (spec.likert) out << shortest(spec.likert->lower); break;
        case 5: if (spec.likert) out << shortest(spec.likert->upper); break;
      }
    }
    out << '\n';
  }
  for (std::size_t j = 0; j < m.dmu_count(); ++j) {
    out << csv_cell(m.dmu(j));
    for (std::size_t k = 0; k < m.metric_count(); ++k) out << ',' << shortest(m.value(k, j));
    out << '\n';
  }
  return out.str();
}

std::string fingerprint(const DecisionMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

DecisionMatrix rescale_metric(const DecisionMatrix& m, std::string_view metric, double factor) {
  auto k = m.metric_index(metric);
  if (!k) throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
  const auto& spec = m.metric(*k);
  if (spec.ordinal())
    throw std::invalid_argument("metric '" + spec.id + "' is ordinal; Likert positions carry no unit");
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("rescale factor must be positive and finite");
  if (factor == 1.0) return m;
  MetricSpec scaled = spec;
  scaled.unit = (spec.unit.empty() ? std::string("1") : spec.unit) + "×" + shortest(factor);
  std::vector<double> row = m.row(*k);
  for (double& v : row) v *= factor;
  return m.with_metric_row(*k, std::move(scaled), std::move(row));
}

}  // namespace vga

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vga {

enum class Orientation { input, output };
enum class Scale { cardinal, ordinal };

const char* to_string(Orientation o);
const char* to_string(Scale s);

struct LikertBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const LikertBounds&) const = default;
};

struct MetricSpec {
  std::string id;
  Orientation orientation = Orientation::input;
  Scale scale = Scale::cardinal;
  std::string unit;
  std::optional<LikertBounds> likert;  // ordinal metrics only

  bool ordinal() const { return scale == Scale::ordinal; }
  bool operator==(const MetricSpec&) const = default;
};

// Metrics x alternatives grid.  Construction checks shape only; use
// validate() for the data invariants.
class DecisionMatrix {
 public:
  DecisionMatrix() = default;
  DecisionMatrix(std::vector<MetricSpec> metrics, std::vector<std::string> dmus,
                 std::vector<std::vector<double>> values);

  const std::vector<MetricSpec>& metrics() const { return metrics_; }
  const std::vector<std::string>& dmus() const { return dmus_; }
  const MetricSpec& metric(std::size_t k) const { return metrics_.at(k); }
  const std::string& dmu(std::size_t j) const { return dmus_.at(j); }

  std::size_t metric_count() const { return metrics_.size(); }
  std::size_t dmu_count() const { return dmus_.size(); }

  double value(std::size_t metric, std::size_t dmu) const { return values_[metric][dmu]; }
  const std::vector<double>& row(std::size_t metric) const { return values_.at(metric); }

  // Metric indices by orientation, in file order.
  const std::vector<std::size_t>& inputs() const { return inputs_; }
  const std::vector<std::size_t>& outputs() const { return outputs_; }

  std::optional<std::size_t> metric_index(std::string_view id) const;
  std::optional<std::size_t> dmu_index(std::string_view id) const;

  // Copy restricted to the given alternatives, in the given order.
  DecisionMatrix select(const std::vector<std::size_t>& dmus) const;
  DecisionMatrix without(std::size_t dmu) const;
  DecisionMatrix with_metric_row(std::size_t metric, MetricSpec spec,
                                 std::vector<double> row) const;

  bool operator==(const DecisionMatrix&) const = default;

 private:
  std::vector<MetricSpec> metrics_;
  std::vector<std::string> dmus_;
  std::vector<std::vector<double>> values_;
  std::vector<std::size_t> inputs_;
  std::vector<std::size_t> outputs_;
};

struct Violation {
  std::string metric;  // empty when not metric-specific
  std::string dmu;     // empty when not alternative-specific
  std::string rule;
  std::string detail;

  std::string to_string() const;
};

std::vector<Violation> validate(const DecisionMatrix& matrix);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string row = {}, std::string column = {});
  const std::string& row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  std::string row_;
  std::string column_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

enum class Format { json, csv };

std::optional<Format> format_from_name(std::string_view name);

// Parses and, unless check is false, validates (throwing ValidationError).
DecisionMatrix parse_matrix(std::string_view text, Format format, bool check = true);

// Format defaults to the file extension (.csv, otherwise JSON).
DecisionMatrix read_matrix(const std::filesystem::path& path,
                           std::optional<Format> format = std::nullopt, bool check = true);

std::string to_json(const DecisionMatrix& matrix);
std::string to_csv(const DecisionMatrix& matrix);

// FNV-1a 64-bit hash of the canonical JSON form, as 16 hex digits.
std::string fingerprint(const DecisionMatrix& matrix);

// Multiplies one cardinal metric by factor and annotates its unit.
DecisionMatrix rescale_metric(const DecisionMatrix& matrix, std::string_view metric,
                              double factor);

}  // namespace vga

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vga/assessment.hpp"
#include "vga/rank.hpp"
#include "vga/verify.hpp"

namespace vga {

inline constexpr const char* tool_version = "0.1.0";

enum class StageSelection { one, two, both };

struct RunOptions {
  StageSelection stages = StageSelection::both;
  VerifyOptions verify;
};

struct RunResult {
  DecisionMatrix matrix;
  StageOneResult stage1;
  std::optional<StageTwoResult> stage2;
  std::string stage2_note;  // why Stage II is absent, if it is
  std::vector<VerificationReport> verification;  // Stage I first, then Stage II
  std::optional<Ranking> ranking;
  bool verification_passed = true;
};

// Both stages, verification of every assessment, and the ranking.  Stage I
// membership mismatches count as verification failures instead of throwing.
RunResult run_pipeline(const DecisionMatrix& matrix, const RunOptions& options = {});

using Json = nlohmann::ordered_json;

Json assessment_json(const Assessment& a, const DecisionMatrix& m);
Json verification_json(const VerificationReport& r);
Json ranking_json(const Ranking& r);
Json matrix_summary_json(const DecisionMatrix& m);

// Full run report.  The timestamp field is omitted when empty.
Json report_json(const RunResult& run, const RunOptions& options,
                 const std::optional<std::string>& timestamp);

Json elimination_json(const EliminationTrace& trace, const DecisionMatrix& m,
                      const Settings& settings, const std::optional<std::string>& timestamp);

// Row-per-quantity view rounded to three decimals, one column per assessed
// alternative, built from the JSON report so that every cell traces back
// to a report number.
std::string report_table(const Json& report);

// Three-decimal rendering used by the table ("-0.000" becomes "0.000").
std::string fixed3(double v);

std::string plot_csv(const TechnologySet& set);
std::string plot_svg(const TechnologySet& set, const std::string& title);

std::string utc_timestamp();

}  // namespace vga

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vga/assessment.hpp"

namespace vga {

struct NamedResidual {
  std::string label;
  double value = 0.0;
};

struct TargetResidual {
  std::string metric;
  double adjusted = 0.0;   // observed value moved by its rate
  double composite = 0.0;  // intensity-weighted combination of compared columns
  double strict = 0.0;     // |adjusted - composite| / max(1, |observed|)
  // Same, but only the sign-admissible side counts when the metric's
  // price is zero (a non-binding row may carry slack).
  double binding = 0.0;
  bool priced = false;
};

struct LikertCheck {
  std::string metric;
  double adjusted = 0.0;
  bool ok = true;
};

struct TargetReport {
  std::vector<TargetResidual> metrics;
  std::vector<LikertCheck> likert;
  double meridian = 0.0;  // |alpha_hat - beta_hat|
  double strict_max = 0.0;
  double binding_max = 0.0;
};

struct VerificationReport {
  std::string dmu_id;
  Stage stage = Stage::owpt;
  double duality_gap = 0.0;       // rate side vs price side, recomputed
  double cross_solve_gap = 0.0;   // independent re-solves of both programs
  double scsc_max_residual = 0.0;
  std::vector<NamedResidual> scsc;
  TargetReport targets;
  double normalization_residual = 0.0;  // |own beta - 1| (I) or |own alpha - 1| (II)
  double score_residual = 0.0;          // step ratio vs normalized ratio
  double pair_violation = 0.0;          // worst alpha_oj - beta_oj over other columns
  double sign_violation = 0.0;          // most negative rate / intensity / Likert price
  double peer_residual = 0.0;           // |pairwise gap| of positive-intensity columns
  bool gap_in_range = true;             // 0 <= gap < 1 within tolerance
  bool passed = false;
  std::vector<std::string> failures;
};

struct VerifyOptions {
  double tolerance = 1e-7;
  double target_tolerance = 1e-6;
  bool cross_solve = true;
  Settings settings;
};

// |delta* - gap*| with both sides rebuilt from the matrix.
double check_duality(const Assessment& a, const DecisionMatrix& m);

// Every complementary-slackness product of the stage, by constraint pair.
std::vector<NamedResidual> check_scsc(const Assessment& a, const DecisionMatrix& m);

TargetReport check_targets(const Assessment& a, const DecisionMatrix& m);

// Largest disagreement between independently solved rate and price
// programs, at tau = 1 and at tau*, and against the assessment's values.
// The comparison set is ignored for Stage I.
double cross_solve(const Assessment& a, const DecisionMatrix& m,
                   const std::vector<std::size_t>& comparison_set, const Settings& settings = {});

VerificationReport verify(const Assessment& a, const DecisionMatrix& m,
                          const std::vector<std::size_t>& comparison_set,
                          const VerifyOptions& options = {});

struct PlotPoint {
  std::string id;
  double alpha = 0.0;
  double beta = 0.0;
  std::string role;  // self, peer, other, target
};

struct TechnologySet {
  Stage stage = Stage::owpt;
  std::string reference_line;  // prime-meridian or equator
  std::vector<PlotPoint> points;
};

TechnologySet technology_set(const Assessment& a, const DecisionMatrix& m);

}  // namespace vga

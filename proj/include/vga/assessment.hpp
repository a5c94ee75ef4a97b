#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "vga/lp.hpp"
#include "vga/matrix.hpp"

namespace vga {

enum class Stage { owpt, ohpt };

const char* to_string(Stage stage);

struct Settings {
  double epsilon = 1e-7;          // peer / zero-gap tolerance
  double normalize_floor = 1e-9;  // smallest usable normalizer
  // Stage I: raise VerificationError when the zero-gap set and the union
  // of peer sets differ.  When false the mismatch is only recorded.
  bool enforce_peer_union = true;
  lp::Options lp;
};

// Prices, gap and virtual scales of one step.  Per-input vectors follow
// DecisionMatrix::inputs(), per-output vectors follow outputs(); Likert
// entries of cardinal metrics are zero.
struct PriceStep {
  double tau = 0.0;
  std::vector<double> v;
  std::vector<double> u;
  std::vector<double> dx;
  std::vector<double> dy;
  double alpha = 0.0;  // own virtual input, Likert terms included
  double beta = 0.0;   // own virtual output, Likert terms included
  double gap = 0.0;    // price-side gap
  double delta = 0.0;  // rate-side total adjustment price
};

struct Assessment {
  std::string dmu_id;
  std::size_t dmu = 0;  // column in the matrix
  Stage stage = Stage::owpt;

  double tau_star = 0.0;
  double gap_star = 0.0;    // price side
  double delta_star = 0.0;  // rate side
  double scale_factor = 0.0;

  std::vector<double> prices_in;
  std::vector<double> prices_out;
  std::vector<double> likert_prices_in;
  std::vector<double> likert_prices_out;
  std::vector<double> rates_in;
  std::vector<double> rates_out;

  // Compared alternatives (matrix columns) with their intensity and
  // virtual pair.  Stage I compares against every alternative including
  // the assessed one; Stage II against the other comparison-set members.
  std::vector<std::size_t> compared;
  std::vector<double> intensities;
  std::vector<double> alpha_pairs;
  std::vector<double> beta_pairs;
  std::vector<std::string> peers;

  // Own point, Likert terms included.
  double alpha_self = 0.0;
  double beta_self = 0.0;

  std::vector<double> targets_in;      // adjusted observed values
  std::vector<double> targets_out;
  std::vector<double> composite_in;    // sum_j x_ij pi_j
  std::vector<double> composite_out;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;

  PriceStep step1_raw;

  std::string price_source;  // which optimal dual vertex supplied the prices
  bool secondary_unbounded = false;
  std::size_t lp_iterations = 0;
};

struct StageOneResult {
  std::vector<Assessment> assessments;  // matrix column order
  std::vector<std::size_t> worst_set;   // ascending column indices
  std::vector<std::string> peer_union;  // sorted ids
  std::vector<std::string> membership_mismatch;  // empty when consistent
};

struct StageTwoResult {
  std::vector<Assessment> assessments;       // comparison-set order
  std::vector<std::size_t> comparison_set;
};

class AssessmentError : public std::runtime_error {
 public:
  AssessmentError(const std::string& message, std::string dmu = {})
      : std::runtime_error(dmu.empty() ? message : dmu + ": " + message), dmu_(std::move(dmu)) {}
  const std::string& dmu() const { return dmu_; }

 private:
  std::string dmu_;
};

class NumericalError : public AssessmentError {
 public:
  using AssessmentError::AssessmentError;
};

class DegenerateStageError : public AssessmentError {
 public:
  using AssessmentError::AssessmentError;
};

class VerificationError : public AssessmentError {
 public:
  using AssessmentError::AssessmentError;
};

// Label builders shared by the model constructors and the checks.
namespace labels {
inline std::string intensity(const std::string& dmu) { return "pi_" + dmu; }
inline std::string input_rate(const std::string& metric) { return "q_" + metric; }
inline std::string output_rate(const std::string& metric) { return "p_" + metric; }
inline std::string input_price(const std::string& metric) { return "v_" + metric; }
inline std::string output_price(const std::string& metric) { return "u_" + metric; }
inline std::string input_likert(const std::string& metric) { return "dx_" + metric; }
inline std::string output_likert(const std::string& metric) { return "dy_" + metric; }
}  // namespace labels

}  // namespace vga

#include <doctest.h>

#include <cmath>
#include <set>

#include "support/lp_oracle.hpp"
#include "support/random_matrix.hpp"
#include "vga/owpt.hpp"

using namespace vga;

namespace {

double intensity_of(const Assessment& a, const DecisionMatrix& m, const std::string& id) {
  for (std::size_t c = 0; c < a.compared.size(); ++c)
    if (m.dmu(a.compared[c]) == id) return a.intensities[c];
  FAIL("not compared: " << id);
  return 0.0;
}

// Appends a copy of column j under a new id.
DecisionMatrix with_twin(const DecisionMatrix& m, std::size_t j, const std::string& id) {
  auto ids = m.dmus();
  ids.push_back(id);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < m.metric_count(); ++k) {
    auto r = m.row(k);
    r.push_back(r[j]);
    rows.push_back(r);
  }
  return DecisionMatrix(m.metrics(), ids, rows);
}

}  // namespace

TEST_CASE("rate program dimensions for alternative A") {
  const auto m = fixtures::table1();
  const auto p = build_owpt_tap(m, "A", 1.0);
  CHECK(p.variable_count() == 10);
  CHECK(p.constraint_count() == 6);
  int equalities = 0, likert = 0;
  for (const auto& c : p.constraints) {
    if (c.relation == lp::Relation::equal) ++equalities;
    if (c.label.rfind("dx_", 0) == 0 || c.label.rfind("dy_", 0) == 0) ++likert;
  }
  CHECK(equalities == 4);
  CHECK(likert == 2);
  CHECK(p.find_variable("pi_D").has_value());
  CHECK(p.find_variable("q_X2").has_value());
  CHECK(p.find_variable("p_Y1").has_value());
  CHECK_THROWS_AS(build_owpt_tap(m, "A", 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_owpt_tap(m, "Z", 1.0), AssessmentError);
}

TEST_CASE("rate program optimum matches vertex enumeration for every column") {
  const auto m = fixtures::table1();
  for (const auto& id : m.dmus()) {
    CAPTURE(id);
    const auto p = build_owpt_tap(m, id, 1.0);
    const auto s = lp::solve(p);
    REQUIRE(s.optimal());  // bounded above for every column
    const auto brute = oracle::enumerate_vertices(p);
    REQUIRE(brute.feasible);
    CHECK(s.objective_value == doctest::Approx(brute.best).epsilon(1e-9));
  }
}

TEST_CASE("price program carries the same optimum and scales with tau") {
  const auto m = fixtures::table1();
  for (const auto& id : m.dmus()) {
    CAPTURE(id);
    const auto tap = lp::solve(build_owpt_tap(m, id, 1.0));
    const auto tvg = lp::solve(build_owpt_tvg(m, id, 1.0));
    REQUIRE(tap.optimal());
    REQUIRE(tvg.optimal());
    CHECK(std::abs(tap.objective_value - tvg.objective_value) <= 1e-9);
    for (double c : {0.25, 3.0}) {
      const auto scaled = lp::solve(build_owpt_tvg(m, id, c));
      REQUIRE(scaled.optimal());
      CHECK(std::abs(scaled.objective_value - c * tvg.objective_value) <= 1e-9 * std::max(1.0, c));
    }
  }
  CHECK(std::abs(lp::solve(build_owpt_tvg(m, "K", 1.0)).objective_value) <= 1e-9);
}

TEST_CASE("assessment of A") {
  const auto m = fixtures::table1();
  const auto a = evaluate_owpt(m, "A");
  CHECK(std::abs(a.gap_star - 0.600) <= 1e-3);
  CHECK(std::abs(a.tau_star - 0.447) <= 1e-3);
  CHECK(std::abs(a.rates_in[1] - 1.0) <= 1e-3);
  CHECK(std::abs(a.rates_out[0] - 0.329) <= 1e-3);
  CHECK(std::abs(a.likert_prices_in[1] - 0.082) <= 1e-3);
  CHECK(std::abs(a.alpha_hat - 0.853) <= 1e-3);
  CHECK(a.peers == std::vector<std::string>{"K", "D"});
  CHECK(std::abs(intensity_of(a, m, "K") - 0.678) <= 1e-3);
  CHECK(std::abs(intensity_of(a, m, "D") - 0.657) <= 1e-3);
  // Rate side and price side agree.
  CHECK(std::abs(a.delta_star - a.gap_star) <= 1e-9);
  // Own virtual output is normalized to one.
  CHECK(std::abs(a.beta_self - 1.0) <= 1e-9);
}

TEST_CASE("zero-gap alternative references itself") {
  const auto m = fixtures::table1();
  const auto k = evaluate_owpt(m, "K");
  CHECK(std::abs(k.gap_star) <= 1e-9);
  CHECK(std::abs(k.tau_star - 0.5) <= 1e-3);
  CHECK(std::abs(intensity_of(k, m, "K") - 1.0) <= 1e-9);
  for (double q : k.rates_in) CHECK(std::abs(q) <= 1e-9);
  for (double p : k.rates_out) CHECK(std::abs(p) <= 1e-9);
}

TEST_CASE("Stage I worst set of Table 1") {
  const auto m = fixtures::table1();
  const auto r = stage_one(m);
  std::vector<std::string> worst;
  for (std::size_t j : r.worst_set) worst.push_back(m.dmu(j));
  CHECK(worst == std::vector<std::string>{"K", "B", "D", "G", "H"});
  CHECK(r.membership_mismatch.empty());
  CHECK(r.peer_union == std::vector<std::string>{"B", "D", "G", "H", "K"});
  const std::vector<double> gaps{0, 0.6, 0, 0, 0, 0};
  for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(r.assessments[j].gap_star - gaps[j]) <= 1e-3);
}

TEST_CASE("a twin of a worst alternative has zero gap") {
  const auto base = fixtures::table1();
  for (const char* id : {"K", "D", "H"}) {
    CAPTURE(id);
    const auto m = with_twin(base, *base.dmu_index(id), std::string(id) + "'");
    const auto a = evaluate_owpt(m, std::string(id) + "'");
    CHECK(std::abs(a.gap_star) <= 1e-9);
  }
}

TEST_CASE("single alternative is its own reference") {
  const auto base = fixtures::table1();
  const auto m = base.select({1});
  const auto p = build_owpt_tap(m, "A", 1.0);
  const auto s = lp::solve(p);
  REQUIRE(s.optimal());
  CHECK(std::abs(s.objective_value) <= 1e-12);
  CHECK(std::abs(s.primal[*p.find_variable("pi_A")] - 1.0) <= 1e-12);
  const auto r = stage_one(m);
  REQUIRE(r.worst_set.size() == 1);
  CHECK(r.worst_set[0] == 0);
}

TEST_CASE("random cardinal matrices: duality and normalization") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const auto m = fixtures::random_matrix(rng, 6, 8, 0.0);
    for (const auto& id : m.dmus()) {
      const auto a = evaluate_owpt(m, id);
      CHECK(std::abs(a.delta_star - a.gap_star) <= 1e-7);
      CHECK(a.gap_star >= -1e-9);
      CHECK(a.gap_star < 1.0);
      CHECK(std::abs(a.beta_self - 1.0) <= 1e-7);
    }
  }
}

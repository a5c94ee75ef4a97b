#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "support/lp_oracle.hpp"
#include "vga/lp.hpp"

using namespace vga::lp;

TEST_CASE("one-variable maximization reports unit shadow price") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 1.0);
  p.add_constraint("cap", {{x, 1.0}}, Relation::less_equal, 1.0);
  auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(s.objective_value == doctest::Approx(1.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
  CHECK(certify(p, s).within(1e-9));
}

TEST_CASE("free variable with a lower row only is unbounded") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 1.0, Domain::free);
  p.add_constraint("floor", {{x, 1.0}}, Relation::greater_equal, 1.0);
  CHECK(solve(p).status == Status::unbounded);
}

TEST_CASE("contradictory rows are infeasible") {
  Problem p(Sense::minimize);
  auto x = p.add_variable("x", 1.0);
  p.add_constraint("lo", {{x, 1.0}}, Relation::greater_equal, 2.0);
  p.add_constraint("hi", {{x, 1.0}}, Relation::less_equal, 1.0);
  CHECK(solve(p).status == Status::infeasible);
}

TEST_CASE("free variable can go negative and keeps its dual") {
  Problem p(Sense::minimize);
  auto x = p.add_variable("x", 1.0, Domain::free);
  p.add_constraint("floor", {{x, 1.0}}, Relation::greater_equal, -2.0);
  auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(s.primal[0] == doctest::Approx(-2.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("duplicated equality rows are tolerated") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 1.0);
  auto y = p.add_variable("y", 2.0);
  p.add_constraint("e1", {{x, 1.0}, {y, 1.0}}, Relation::equal, 2.0);
  p.add_constraint("e2", {{x, 2.0}, {y, 2.0}}, Relation::equal, 4.0);
  p.add_constraint("cap", {{y, 1.0}}, Relation::less_equal, 1.5);
  auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(s.objective_value == doctest::Approx(3.5));
  CHECK(certify(p, s).within(1e-9));
}

TEST_CASE("secondary objective selects among primary optima") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 1.0);
  auto y = p.add_variable("y", 1.0);
  p.add_constraint("cap", {{x, 1.0}, {y, 1.0}}, Relation::less_equal, 1.0);
  for (Sense sense : {Sense::minimize, Sense::maximize}) {
    p.secondary_objective = {1.0, 0.0};
    p.secondary_sense = sense;
    auto s = solve(p);
    REQUIRE(s.optimal());
    CHECK(s.objective_value == doctest::Approx(1.0));
    CHECK(s.primal[0] == doctest::Approx(sense == Sense::minimize ? 0.0 : 1.0));
    REQUIRE(s.secondary_value.has_value());
  }
}

TEST_CASE("unbounded secondary objective keeps the primary optimum") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 0.0);
  auto y = p.add_variable("y", 1.0);
  p.add_constraint("cap", {{y, 1.0}}, Relation::less_equal, 1.0);
  p.add_constraint("link", {{x, 1.0}, {y, -1.0}}, Relation::greater_equal, -1.0);
  p.secondary_objective = {1.0, 0.0};
  p.secondary_sense = Sense::maximize;
  auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(s.secondary_unbounded);
  CHECK(s.objective_value == doctest::Approx(1.0));
}

TEST_CASE("certify detects a perturbed primal value") {
  Problem p(Sense::maximize);
  auto x = p.add_variable("x", 1.0);
  auto y = p.add_variable("y", 1.0);
  p.add_constraint("a", {{x, 1.0}, {y, 2.0}}, Relation::less_equal, 4.0);
  p.add_constraint("b", {{x, 3.0}, {y, 1.0}}, Relation::less_equal, 6.0);
  auto s = solve(p);
  REQUIRE(s.optimal());
  CHECK(certify(p, s).within(1e-9));
  s.primal[0] += 1e-3;
  auto r = certify(p, s);
  CHECK(r.primal > 0.0);
  CHECK_FALSE(r.within(1e-9));
}

TEST_CASE("malformed problems are rejected, not solved") {
  Problem p(Sense::maximize);
  p.add_variable("x", 1.0);
  p.add_variable("x", 1.0);
  CHECK(p.defect().has_value());
  CHECK(solve(p).status == Status::numerical_failure);
}

TEST_CASE("solve is bit-for-bit deterministic") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    auto p = oracle::random_bounded_lp(rng);
    auto a = solve(p);
    auto b = solve(p);
    REQUIRE(a.status == b.status);
    CHECK(std::memcmp(&a.objective_value, &b.objective_value, sizeof(double)) == 0);
    CHECK(a.primal == b.primal);
    CHECK(a.duals == b.duals);
  }
}

TEST_CASE("random small LPs agree with vertex enumeration") {
  std::mt19937_64 rng(20240611);
  int feasible = 0;
  for (int k = 0; k < 300; ++k) {
    auto p = oracle::random_bounded_lp(rng);
    auto e = oracle::enumerate_vertices(p);
    auto s = solve(p);
    CAPTURE(k);
    if (!e.feasible) {
      CHECK(s.status == Status::infeasible);
      continue;
    }
    ++feasible;
    REQUIRE(s.optimal());
    CHECK(std::fabs(s.objective_value - e.best) <= 1e-9 * std::max(1.0, std::fabs(e.best)));
    CHECK(certify(p, s).within(1e-9));
  }
  CHECK(feasible > 100);
}

TEST_CASE("LP dump uses the interchange section headers") {
  Problem p(Sense::minimize);
  auto x = p.add_variable("v_X 1", 2.0, Domain::free);
  p.add_constraint("q_X1", {{x, 1.6}}, Relation::greater_equal, 1.0);
  std::ostringstream out;
  write_lp_format(p, out);
  const std::string text = out.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("v_X_1 free") != std::string::npos);
  CHECK(text.find(">= 1") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

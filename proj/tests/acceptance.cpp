// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/lp_oracle.hpp"
#include "support/random_matrix.hpp"
#include "vga/ohpt.hpp"
#include "vga/owpt.hpp"
#include "vga/rank.hpp"
#include "vga/report.hpp"
#include "vga/verify.hpp"

using namespace vga;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 12) notes.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Settings lenient() {
  Settings s;
  s.enforce_peer_union = false;
  return s;
}

const Assessment* find(const std::vector<Assessment>& list, const std::string& id) {
  for (const auto& a : list)
    if (a.dmu_id == id) return &a;
  return nullptr;
}

struct Pipeline {
  StageOneResult s1;
  std::optional<StageTwoResult> s2;
  Ranking ranking;
};

Pipeline run(const DecisionMatrix& m, const Settings& s = lenient()) {
  Pipeline p;
  p.s1 = stage_one(m, s);
  if (p.s1.worst_set.size() >= 2) p.s2 = stage_two(m, p.s1.worst_set, s);
  p.ranking = rank(p.s1, p.s2, s.epsilon);
  return p;
}

std::vector<std::string> ids(const DecisionMatrix& m, const std::vector<std::size_t>& cols) {
  std::vector<std::string> out;
  for (std::size_t j : cols) out.push_back(m.dmu(j));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return "{" + s + "}";
}

const std::filesystem::path data_dir = VGA_TEST_DATA;

Outcome ac1(const DecisionMatrix& m) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = run(m, Settings{});
  const double took = seconds_since(t0);
  for (const auto& a : p.s1.assessments) {
    const double want = a.dmu_id == "A" ? 0.600 : 0.0;
    const double tol = a.dmu_id == "A" ? 1e-3 : 1e-7;
    o.expect(std::abs(a.gap_star - want) <= tol, a.dmu_id + " gap " + num(a.gap_star) + " want " + num(want));
  }
  const auto worst = ids(m, p.s1.worst_set);
  o.expect(worst == std::vector<std::string>{"K", "B", "D", "G", "H"}, "worst set " + join(worst));
  o.expect(took < 1.0, "runtime " + num(took) + " s");
  o.notes.push_back("runtime " + num(took) + " s");
  return o;
}

Outcome ac2(const DecisionMatrix& m) {
  Outcome o;
  const auto p = run(m);
  if (!p.s2) {
    o.fail("no Stage II");
    return o;
  }
  const std::vector<std::tuple<std::string, double, double>> want{
      {"K", 0.361, 0.639}, {"B", 0.222, 1.0}, {"D", 0.474, 1.0}, {"G", 0.044, 1.0}, {"H", 0.086, 1.0}};
  for (const auto& [id, gap, tau] : want) {
    const auto* a = find(p.s2->assessments, id);
    if (!a) {
      o.fail(id + " missing");
      continue;
    }
    o.expect(std::abs(a->gap_star - gap) <= 1e-3, id + " gap " + num(a->gap_star) + " want " + num(gap));
    o.expect(std::abs(a->tau_star - tau) <= 1e-3, id + " tau* " + num(a->tau_star) + " want " + num(tau));
  }
  return o;
}

Outcome ac3(const DecisionMatrix& m) {
  Outcome o;
  const auto p = run(m);
  std::vector<std::string> order;
  for (const auto& e : p.ranking.ordered) order.push_back(e.dmu_id);
  o.expect(order == std::vector<std::string>{"A", "G", "H", "B", "K", "D"}, "order " + join(order));
  o.expect(p.ranking.ties.empty(), "unexpected ties");
  return o;
}

Outcome ac4(const DecisionMatrix& m) {
  Outcome o;
  const auto p = run(m);
  const std::vector<std::pair<std::string, double>> want{
      {"K", 0.500}, {"A", 0.447}, {"B", 0.222}, {"D", 0.033}, {"G", 0.036}, {"H", 0.017}};
  for (const auto& [id, tau] : want) {
    const auto* a = find(p.s1.assessments, id);
    o.expect(a && std::abs(a->tau_star - tau) <= 1e-3,
             id + " tau* " + (a ? num(a->tau_star) : "?") + " want " + num(tau));
  }
  return o;
}

std::optional<DecisionMatrix> provinces() {
  const auto path = data_dir / "provinces29.json";
  if (!std::filesystem::exists(path)) return std::nullopt;
  return read_matrix(path);
}

Outcome ac5() {
  Outcome o;
  const auto m = provinces();
  if (!m) {
    o.fail("fixture tests/data/provinces29.json not available: the 29-alternative data set is not tabulated");
    return o;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = run(*m);
  const double took = seconds_since(t0);
  const std::vector<std::pair<std::string, double>> want{{"1", 0.426}, {"10", 0.204}, {"11", 0.113}, {"19", 0.068}};
  for (const auto& [id, gap] : want) {
    const auto* a = p.s2 ? find(p.s2->assessments, id) : nullptr;
    o.expect(a && std::abs(a->gap_star - gap) <= 5e-3,
             id + " gap " + (a ? num(a->gap_star) : "?") + " want " + num(gap));
  }
  o.expect(!p.ranking.ordered.empty() && p.ranking.ordered.back().dmu_id == "1", "bottom is not 1");
  o.expect(took < 5.0, "runtime " + num(took) + " s");
  return o;
}

struct PropertyTally {
  std::size_t assessments = 0;
  std::size_t stage_errors = 0;
  std::map<std::string, std::size_t> broken;
};

void check_properties(const Assessment& a, const DecisionMatrix& m, PropertyTally& t) {
  ++t.assessments;
  auto bad = [&](bool ok, const char* what) {
    if (!ok) ++t.broken[what];
  };
  constexpr double tol = 1e-7;
  bad(check_duality(a, m) <= tol, "duality");
  double scsc = 0.0;
  for (const auto& r : check_scsc(a, m)) scsc = std::max(scsc, std::abs(r.value));
  bad(scsc <= tol, "scsc");
  bad(a.gap_star >= -tol && a.gap_star < 1.0, "gap-range");
  const double own = a.stage == Stage::owpt ? a.beta_self : a.alpha_self;
  bad(std::abs(own - 1.0) <= tol, "normalization");
  const auto targets = check_targets(a, m);
  bad(targets.strict_max <= tol, "target-replication");
  bad(targets.meridian <= tol, "benchmark-scales");
  bool likert = true;
  for (const auto& l : targets.likert) likert = likert && l.ok;
  bad(likert, "likert-bounds");
}

void property_matrix(const DecisionMatrix& m, PropertyTally& t) {
  const Settings s = lenient();
  StageOneResult s1;
  try {
    s1 = stage_one(m, s);
  } catch (const AssessmentError&) {
    ++t.stage_errors;
    return;
  }
  for (const auto& a : s1.assessments) check_properties(a, m, t);
  if (s1.worst_set.size() < 2) return;
  try {
    for (const auto& a : stage_two(m, s1.worst_set, s).assessments) check_properties(a, m, t);
  } catch (const AssessmentError&) {
    ++t.stage_errors;
  }
}

Outcome ac6(const DecisionMatrix& table1) {
  Outcome o;
  PropertyTally t;
  property_matrix(table1, t);
  if (const auto c = provinces()) property_matrix(*c, t);
  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 200; ++k) property_matrix(fixtures::random_matrix(rng, 8, 12, 0.4), t);
  o.expect(t.stage_errors == 0, num(static_cast<double>(t.stage_errors)) + " stage runs aborted (normalization)");
  for (const auto& [what, count] : t.broken)
    o.fail(what + ": " + num(static_cast<double>(count)) + " of " + num(static_cast<double>(t.assessments)));
  o.notes.push_back(num(static_cast<double>(t.assessments)) + " assessments checked");
  return o;
}

Outcome ac7(const DecisionMatrix& table1) {
  Outcome o;
  auto check = [&](const DecisionMatrix& m, const std::string& name) {
    const auto p = run(m);
    for (const auto& a : p.s1.assessments) {
      const double g = cross_solve(a, m, {}, lenient());
      o.expect(g <= 1e-7, name + " I " + a.dmu_id + " " + num(g));
    }
    if (p.s2)
      for (const auto& a : p.s2->assessments) {
        const double g = cross_solve(a, m, p.s1.worst_set, lenient());
        o.expect(g <= 1e-7, name + " II " + a.dmu_id + " " + num(g));
      }
  };
  check(table1, "table1");
  if (const auto c = provinces())
    check(*c, "provinces");
  else
    o.notes.push_back("29-alternative fixture absent; Table 1 only");
  return o;
}

void compare_runs(const Pipeline& a, const Pipeline& b, const std::string& tag, Outcome& o) {
  constexpr double tol = 1e-7;
  o.expect(a.s1.worst_set == b.s1.worst_set, tag + " worst set");
  auto same = [&](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - y[i]) > tol) return false;
    return true;
  };
  auto each = [&](const std::vector<Assessment>& xs, const std::vector<Assessment>& ys, const char* stage) {
    if (xs.size() != ys.size()) {
      o.fail(tag + " assessment count");
      return;
    }
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto& x = xs[k];
      const auto& y = ys[k];
      const std::string who = tag + " " + stage + " " + x.dmu_id;
      o.expect(std::abs(x.gap_star - y.gap_star) <= tol, who + " gap");
      o.expect(std::abs(x.tau_star - y.tau_star) <= tol, who + " tau*");
      o.expect(same(x.rates_in, y.rates_in) && same(x.rates_out, y.rates_out), who + " rates");
      o.expect(same(x.intensities, y.intensities), who + " intensities");
    }
  };
  each(a.s1.assessments, b.s1.assessments, "I");
  if (a.s2 && b.s2) each(a.s2->assessments, b.s2->assessments, "II");
  std::vector<std::string> ra, rb;
  for (const auto& e : a.ranking.ordered) ra.push_back(e.dmu_id);
  for (const auto& e : b.ranking.ordered) rb.push_back(e.dmu_id);
  o.expect(ra == rb, tag + " ranking");
}

Outcome ac8(const DecisionMatrix& table1) {
  Outcome o;
  const auto base = run(table1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    auto m = table1;
    std::string tag = "#" + std::to_string(k);
    for (const auto& spec : table1.metrics()) {
      if (spec.ordinal()) continue;
      const double f = std::pow(10.0, exponent(rng));
      m = rescale_metric(m, spec.id, f);
      tag += " " + spec.id + "x" + num(f);
    }
    compare_runs(base, run(m), tag, o);
  }
  return o;
}

Outcome ac9(const DecisionMatrix& table1) {
  Outcome o;
  const auto base = run(table1);
  std::size_t cases = 0, on_line = 0;
  for (const auto& a : base.s1.assessments) {
    const double line_tol = Settings{}.epsilon * std::max(1.0, a.tau_star);
    for (std::size_t c = 0; c < a.compared.size(); ++c) {
      const std::size_t j = a.compared[c];
      const auto& id = table1.dmu(j);
      if (j == a.dmu) continue;
      // Non-peer: zero intensity and strictly above the meridian.  A column
      // on the meridian with zero intensity still supports the prices.
      if (a.intensities[c] > Settings{}.epsilon) continue;
      if (a.beta_pairs[c] - a.alpha_pairs[c] <= line_tol) {
        ++on_line;
        continue;
      }
      const auto b = evaluate_owpt(table1.without(j), a.dmu_id, lenient());
      ++cases;
      o.expect(std::abs(a.gap_star - b.gap_star) <= 1e-7,
               a.dmu_id + " without " + id + " gap " + num(a.gap_star) + " -> " + num(b.gap_star));
      o.expect(std::abs(a.tau_star - b.tau_star) <= 1e-7,
               a.dmu_id + " without " + id + " tau* " + num(a.tau_star) + " -> " + num(b.tau_star));
    }
  }
  o.notes.push_back(std::to_string(cases) + " deletions, " + std::to_string(on_line) +
                    " zero-intensity columns on the meridian skipped");
  return o;
}

Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::size_t feasible = 0;
  for (int k = 0; k < 500; ++k) {
    const auto p = oracle::random_bounded_lp(rng, 6, 6);
    const auto brute = oracle::enumerate_vertices(p);
    const auto s = lp::solve(p);
    if (!brute.feasible) {
      o.expect(s.status == lp::Status::infeasible, "#" + std::to_string(k) + " should be infeasible");
      continue;
    }
    ++feasible;
    o.expect(s.optimal() && std::abs(s.objective_value - brute.best) <= 1e-9,
             "#" + std::to_string(k) + " solver " + num(s.objective_value) + " oracle " + num(brute.best));
  }
  o.notes.push_back(std::to_string(feasible) + " feasible of 500");
  return o;
}

}  // namespace

int main() {
  const auto table1 = read_matrix(data_dir / "table1.json");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 Stage I gaps and worst set", [&] { return ac1(table1); }},
      {"AC2 Stage II gaps and tau*", [&] { return ac2(table1); }},
      {"AC3 ranking A>G>H>B>K>D", [&] { return ac3(table1); }},
      {"AC4 Stage I tau*", [&] { return ac4(table1); }},
      {"AC5 29-alternative fixture", [] { return ac5(); }},
      {"AC6 property suite", [&] { return ac6(table1); }},
      {"AC7 cross-solve", [&] { return ac7(table1); }},
      {"AC8 unit invariance", [&] { return ac8(table1); }},
      {"AC9 non-peer removal", [&] { return ac9(table1); }},
      {"AC10 LP kernel vs enumeration", [] { return ac10(); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s  %s%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), detail.empty() ? "" : "  -- ",
                detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

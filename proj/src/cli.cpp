#include "vga/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vga/ohpt.hpp"
#include "vga/owpt.hpp"
#include "vga/report.hpp"

namespace vga {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input;
  std::string format;
  std::string stage = "both";
  std::optional<double> tol;
  std::string output = "-";
  std::string table;
  std::string plot_dir;
  std::string dmu;
  std::size_t rounds = 1;
  std::string on_tie = "halt";
  bool no_timestamp = false;
};

DecisionMatrix load(const Flags& f, bool check = true) {
  if (f.input.empty()) throw UsageError("an input file is required (--input)");
  std::optional<Format> format;
  if (!f.format.empty()) format = format_from_name(f.format);
  return read_matrix(f.input, format, check);
}

Settings settings_from(const Flags& f) {
  Settings s;
  if (f.tol) s.epsilon = *f.tol;
  s.enforce_peer_union = false;
  return s;
}

std::optional<std::string> stamp(const Flags& f) {
  if (f.no_timestamp) return std::nullopt;
  return utc_timestamp();
}

void write_text(const std::string& target, const std::string& text, std::ostream& out) {
  if (target.empty() || target == "-") {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + target + "'");
  file << text;
}

StageSelection parse_stage(const std::string& s) {
  if (s == "1") return StageSelection::one;
  if (s == "2") return StageSelection::two;
  return StageSelection::both;
}

std::string file_stem(const std::string& dmu, Stage stage) {
  std::string safe;
  for (char c : dmu) safe += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return safe + (stage == Stage::owpt ? "_stage1" : "_stage2");
}

void write_plot(const Assessment& a, const DecisionMatrix& m, const fs::path& dir) {
  fs::create_directories(dir);
  const auto set = technology_set(a, m);
  const std::string stem = file_stem(a.dmu_id, a.stage);
  const std::string title = a.dmu_id + (a.stage == Stage::owpt ? " Stage I (owPT)" : " Stage II (ohPT)");
  write_text((dir / (stem + ".csv")).string(), plot_csv(set), std::cout);
  write_text((dir / (stem + ".svg")).string(), plot_svg(set, title), std::cout);
}

int cmd_validate(const Flags& f, std::ostream& out) {
  const DecisionMatrix m = load(f, false);
  const auto violations = validate(m);
  for (const auto& v : violations) out << v.to_string() << '\n';
  if (violations.empty()) {
    out << "ok: " << m.metric_count() << " metrics, " << m.dmu_count() << " alternatives\n";
    return 0;
  }
  return 1;
}

int cmd_assess(const Flags& f, std::ostream& out) {
  const DecisionMatrix m = load(f);
  RunOptions options;
  options.stages = parse_stage(f.stage);
  options.verify.settings = settings_from(f);
  const RunResult run = run_pipeline(m, options);
  const Json report = report_json(run, options, stamp(f));
  write_text(f.output, report.dump(2) + "\n", out);
  if (!f.table.empty()) write_text(f.table, report_table(report), out);
  if (!f.plot_dir.empty()) {
    if (options.stages != StageSelection::two)
      for (const auto& a : run.stage1.assessments) write_plot(a, m, f.plot_dir);
    if (run.stage2 && options.stages != StageSelection::one)
      for (const auto& a : run.stage2->assessments) write_plot(a, m, f.plot_dir);
  }
  return run.verification_passed ? 0 : 1;
}

int cmd_rank(const Flags& f, std::ostream& out) {
  const DecisionMatrix m = load(f);
  RunOptions options;
  options.verify.settings = settings_from(f);
  const RunResult run = run_pipeline(m, options);
  Json doc;
  doc["tool"] = {{"name", "vga"}, {"version", tool_version}};
  if (auto ts = stamp(f)) doc["generated_at"] = *ts;
  doc["matrix"] = matrix_summary_json(m);
  doc["tolerances"] = {{"epsilon", options.verify.settings.epsilon}};
  doc["ranking"] = run.ranking ? ranking_json(*run.ranking) : Json(nullptr);
  doc["verification_passed"] = run.verification_passed;
  write_text(f.output, doc.dump(2) + "\n", out);
  if (!f.table.empty()) {
    const Json full = report_json(run, options, std::nullopt);
    write_text(f.table, report_table(full), out);
  }
  return run.verification_passed ? 0 : 1;
}

int cmd_plot(const Flags& f, std::ostream& out) {
  const DecisionMatrix m = load(f);
  if (f.dmu.empty()) throw UsageError("--dmu is required");
  if (!m.dmu_index(f.dmu)) throw UsageError("unknown alternative '" + f.dmu + "'");
  const Settings settings = settings_from(f);
  const fs::path dir = f.plot_dir.empty() ? fs::path(".") : fs::path(f.plot_dir);
  const StageSelection stages = parse_stage(f.stage);
  std::vector<Assessment> chosen;
  if (stages != StageSelection::two) chosen.push_back(evaluate_owpt(m, f.dmu, settings));
  if (stages != StageSelection::one) {
    const auto s1 = stage_one(m, settings);
    const std::size_t j = *m.dmu_index(f.dmu);
    const bool worst = std::find(s1.worst_set.begin(), s1.worst_set.end(), j) != s1.worst_set.end();
    if (worst && s1.worst_set.size() >= 2) {
      chosen.push_back(evaluate_ohpt(m, s1.worst_set, f.dmu, settings));
    } else if (stages == StageSelection::two) {
      throw UsageError("'" + f.dmu + "' has no Stage II assessment (not in a worst set of two or more)");
    }
  }
  for (const auto& a : chosen) {
    write_plot(a, m, dir);
    out << (dir / (file_stem(a.dmu_id, a.stage) + ".csv")).string() << '\n';
    out << (dir / (file_stem(a.dmu_id, a.stage) + ".svg")).string() << '\n';
  }
  return 0;
}

int cmd_eliminate(const Flags& f, std::ostream& out) {
  const DecisionMatrix m = load(f);
  const Settings settings = settings_from(f);
  const OnTie on_tie = f.on_tie == "report-all" ? OnTie::report_all : OnTie::halt;
  const auto trace = eliminate_worst(m, f.rounds, on_tie, settings);
  write_text(f.output, elimination_json(trace, m, settings, stamp(f)).dump(2) + "\n", out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pessimistic two-stage virtual gap analysis", "vga"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));
  Flags f;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input,-i,--input", f.input, "Decision matrix file (JSON or CSV)");
    sub->add_option("--format", f.format, "Input format (default: from the extension)")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", f.tol, "Peer and zero-gap tolerance (default 1e-7)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-timestamp", f.no_timestamp, "Omit the generated_at field");
    sub->add_option("-o,--output", f.output, "Report path, - for stdout");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a decision matrix");
  add_input(validate_cmd);

  auto* assess = app.add_subcommand("assess", "Run both stages, verify and rank");
  add_input(assess);
  add_common(assess);
  assess->add_option("--stage", f.stage, "Stages to report")->check(CLI::IsMember({"1", "2", "both"}));
  assess->add_option("--table", f.table, "Also write the 3-decimal table (path or -)");
  assess->add_option("--plot-dir", f.plot_dir, "Write plot CSV/SVG per assessment here");

  auto* rank_cmd = app.add_subcommand("rank", "Print the full ranking");
  add_input(rank_cmd);
  add_common(rank_cmd);
  rank_cmd->add_option("--table", f.table, "Also write the 3-decimal table (path or -)");

  auto* plot = app.add_subcommand("plot", "Export the virtual technology set of one alternative");
  add_input(plot);
  plot->add_option("--dmu", f.dmu, "Alternative id")->required();
  plot->add_option("--stage", f.stage, "Stage to plot")->check(CLI::IsMember({"1", "2", "both"}));
  plot->add_option("--plot-dir", f.plot_dir, "Output directory (default .)");
  plot->add_option("--tol", f.tol, "Peer tolerance")->check(CLI::PositiveNumber);

  auto* elim = app.add_subcommand("eliminate", "Remove the bottom alternative repeatedly");
  add_input(elim);
  add_common(elim);
  elim->add_option("--rounds", f.rounds, "Number of elimination rounds")->required()->check(CLI::PositiveNumber);
  elim->add_option("--on-tie", f.on_tie, "Bottom tie handling")->check(CLI::IsMember({"halt", "report-all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(f, out);
    if (*assess) return cmd_assess(f, out);
    if (*rank_cmd) return cmd_rank(f, out);
    if (*plot) return cmd_plot(f, out);
    if (*elim) return cmd_eliminate(f, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << v.to_string() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const AssessmentError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace vga

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "bohr/experiment.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<bohr::ExperimentRecord> load_records(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      for (const auto& e : fs::recursive_directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      }
    } else {
      files.emplace_back(in);
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<bohr::ExperimentRecord> records;
  for (const auto& f : files) {
    std::ifstream s(f);
    if (!s) throw std::invalid_argument("cannot read " + f.string());
    records.push_back(bohr::record_from_json(bohr::Json::parse(s)));
  }
  return records;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical Bohr radius experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  bohr::ExperimentConfig cfg;
  std::string format = "text";
  bool no_save = false;
  std::vector<std::string> targets;
  std::string alpha;
  app.add_option("--seed", cfg.seed, "Seed of every random stream");
  app.add_option("--tol", cfg.tol, "Bisection bracket width")->check(CLI::PositiveNumber);
  app.add_option("--degree", cfg.degree, "Truncation degree of family members")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Table printed after the run")->check(CLI::IsMember({"text", "csv"}));

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "lp:<p>:<n>");
    sub->add_option("--mode", cfg.mode, "r1 or r2")->check(CLI::IsMember({"r1", "r2"}));
    sub->add_option("--condition-tol", cfg.condition_tol, "Relative tolerance of the Bohr condition");
    sub->add_option("--output", cfg.output, "Record path (default: results directory)");
    sub->add_flag("--no-save", no_save, "Do not persist the record");
  };
  const auto generated = [&](CLI::App* sub) {
    sub->add_option("--probe-degree", cfg.probe_degree, "Truncation degree of generated functions");
    sub->add_option("--inner-degree", cfg.inner_degree, "Degree of the inner polynomial");
    sub->add_option("--contraction", cfg.contraction, "Contraction bound in (0,1)");
  };

  auto* radius = app.add_subcommand("radius", "Critical radius of family members");
  common(radius);
  radius->add_option("--family", cfg.family, "mobius or drift");
  radius->add_option("--alpha", alpha, "Parameter value(s), comma separated");
  radius->add_option("--alpha-grid", cfg.alpha_grid, "geometric:N or a comma list");
  radius->add_option("--target", targets, "Target spec (repeatable)");

  auto* sweep = app.add_subcommand("sweep", "Infimum of a family over a parameter grid");
  common(sweep);
  sweep->add_option("--family", cfg.family, "mobius, drift or witness-l1");
  sweep->add_option("--alpha-grid", cfg.alpha_grid, "geometric:N or a comma list");
  sweep->add_option("--target", targets, "Target spec (repeatable)");

  auto* probe = app.add_subcommand("probe", "Random admissible functions at a fixed radius");
  common(probe);
  generated(probe);
  probe->add_option("--radius", cfg.radius, "Probe radius (default: published lower radius)");
  probe->add_option("--count", cfg.count, "Number of generated functions");
  probe->add_option("--target", targets, "Target spec (repeatable)");

  auto* bounds = app.add_subcommand("verify-bounds", "Coefficient bound and published radius brackets");
  common(bounds);
  generated(bounds);
  bounds->add_option("--count", cfg.count, "Generated functions per target and probe set");
  bounds->add_option("--alpha-grid", cfg.alpha_grid, "Witness family grid");
  bounds->add_option("--target", targets, "Target spec (repeatable)");

  std::size_t trials = 200;
  auto* axioms = app.add_subcommand("axioms", "Semi-norm axiom property run");
  common(axioms);
  axioms->add_option("--seminorm", cfg.mode, "r1 or r2")->check(CLI::IsMember({"r1", "r2"}));
  axioms->add_option("--trials", trials, "Number of random series pairs");
  axioms->add_option("--series-degree", cfg.inner_degree, "Degree of the random series");

  auto* indep = app.add_subcommand("independence", "Drift-family infimum across targets");
  common(indep);
  indep->add_option("--alpha-grid", cfg.alpha_grid, "geometric:N or a comma list");
  indep->add_option("--target,--targets", targets, "Target specs");

  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "Tabulate stored records");
  report->add_option("inputs", inputs, "Record files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const auto table_format = format == "csv" ? bohr::TableFormat::Csv : bohr::TableFormat::Text;

  try {
    if (report->parsed()) {
      std::cout << bohr::emit_table(load_records(inputs), table_format);
      return 0;
    }
    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (!targets.empty()) {
      cfg.targets = targets;
    } else if (cfg.command == "independence" || cfg.command == "verify-bounds") {
      cfg.targets = {"disk:0,0,1", "halfplane:1,0,-1,0", "strip:0,0,1,0,1"};
    }
    if (!alpha.empty()) cfg.alpha_grid = alpha;
    if (cfg.command == "axioms") cfg.count = trials;

    const auto record = bohr::run(cfg);
    std::cout << bohr::emit_table({record}, table_format);
    if (!no_save) std::cerr << "record: " << bohr::persist(record, bohr::default_results_dir()).string() << '\n';
    std::cerr << (record.passed ? "PASS" : "FAIL") << '\n';
    return record.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

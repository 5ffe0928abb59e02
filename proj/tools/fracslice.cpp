// Command-line front end for the scenario harness.
//
//   fracslice list
//   fracslice run --scenario NAME [--config PATH] [--seed N] [--quad-order N]
//                 [--tolerance NAME=VAL]... [--out DIR] [--format csv|json]
//   fracslice run-all [same options]
//
// Command-line flags win over values read from --config. Exit codes: 0 when
// every requested scenario passes, 1 when any scenario fails, 2 on a
// configuration or usage error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fracslice/harness.hpp>

namespace harness = fracslice::harness;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> tolerances;  // NAME=VAL entries
  // Flag presence is tracked through CLI11 counts; values land here.
  std::uint64_t seed = 0;
  int quad_order = 0;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "Configuration file (key = value lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Random stream seed (overrides the config file)");
  cmd->add_option("--quad-order", o.quad_order, "Quadrature order (overrides the config file)");
  cmd->add_option("--tolerance", o.tolerances,
                  "Per-scenario tolerance override, NAME=VALUE (repeatable)");
  cmd->add_option("--out", o.out_dir, "Report output directory (overrides the config file)");
  cmd->add_option("--format", o.format, "Report format: csv or json (overrides the config file)")
      ->check(CLI::IsMember({"csv", "json"}));
}

harness::RunConfig build_config(const CLI::App* cmd, const CommonOpts& o) {
  harness::RunConfig cfg;
  if (!o.config_path.empty()) cfg = harness::parse_config_file(o.config_path);
  if (cmd->count("--seed") > 0) cfg.seed = o.seed;
  if (cmd->count("--quad-order") > 0) cfg.quad_order = o.quad_order;
  if (cmd->count("--out") > 0) cfg.out_dir = o.out_dir;
  if (cmd->count("--format") > 0) cfg.format = o.format;
  for (const std::string& t : o.tolerances) {
    const size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == t.size())
      throw std::invalid_argument("--tolerance expects NAME=VALUE, got: " + t);
    harness::apply_setting(cfg, "tol." + t.substr(0, eq), t.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

void print_line(const harness::ScenarioReport& rep, const std::string& path) {
  std::printf("%-26s %s  samples=%-5zu max_residual=%-12.5g tolerance=%-8.1g -> %s\n",
              rep.scenario.c_str(), rep.pass ? "PASS" : "FAIL", rep.samples.size(),
              rep.max_residual, rep.tolerance, path.c_str());
}

int cmd_list() {
  for (const auto& s : harness::registry()) std::printf("%-26s %s\n", s.name, s.description);
  return 0;
}

int cmd_run(const std::string& scenario, const harness::RunConfig& cfg) {
  const harness::ScenarioReport rep = harness::run_scenario(scenario, cfg);
  const std::string path = harness::write_report(rep, cfg);
  print_line(rep, path);
  return rep.pass ? 0 : 1;
}

int cmd_run_all(const harness::RunConfig& cfg) {
  harness::RunAllResult all;
  for (const auto& s : harness::registry()) {
    all.reports.push_back(harness::run_scenario(s.name, cfg));
    const auto& rep = all.reports.back();
    all.all_pass = all.all_pass && rep.pass;
    print_line(rep, harness::write_report(rep, cfg));
  }
  const std::string spath = harness::write_summary(all, cfg);
  std::printf("%zu scenarios: %s -> %s\n", all.reports.size(),
              all.all_pass ? "ALL PASS" : "FAILURES", spath.c_str());
  return all.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual scenario runner for weighted fractional slice calculus"};
  app.require_subcommand(1);

  CLI::App* list = app.add_subcommand("list", "List scenarios with one-line descriptions");

  std::string scenario;
  CommonOpts run_opts;
  CLI::App* run = app.add_subcommand("run", "Run one scenario and write its report");
  run->add_option("--scenario", scenario, "Scenario name (see `fracslice list`)")->required();
  add_common(run, run_opts);

  CommonOpts all_opts;
  CLI::App* run_all = app.add_subcommand("run-all", "Run every scenario and write a summary");
  add_common(run_all, all_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (list->parsed()) return cmd_list();
    if (run->parsed()) return cmd_run(scenario, build_config(run, run_opts));
    return cmd_run_all(build_config(run_all, all_opts));
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

// Acceptance gate: runs the full default scenario suite and prints one
// [PASS]/[FAIL] line per criterion. Exits nonzero when any criterion fails.
//
// All criteria are evaluated against the built-in default configuration.
// The suite is run twice into two directories so the byte-determinism
// criterion compares real report files, and the first run's reports back the
// per-criterion verdicts and time bounds.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fracslice/harness.hpp>

namespace harness = fracslice::harness;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(int num, const char* what, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, what);
  if (!ok) ++failures;
}

const harness::ScenarioReport& rep(const harness::RunAllResult& all, const std::string& name) {
  for (const auto& r : all.reports)
    if (r.scenario == name) return r;
  throw std::runtime_error("missing report: " + name);
}

bool passed(const harness::RunAllResult& all, const std::string& name) {
  const auto& r = rep(all, name);
  return r.pass && !r.samples.empty();
}

bool passed_within(const harness::RunAllResult& all, const std::string& name, double ms) {
  return passed(all, name) && rep(all, name).wall_ms < ms;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool dirs_byte_identical(const fs::path& a, const fs::path& b) {
  std::vector<std::string> names_a, names_b;
  for (const auto& e : fs::directory_iterator(a)) names_a.push_back(e.path().filename().string());
  for (const auto& e : fs::directory_iterator(b)) names_b.push_back(e.path().filename().string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b || names_a.empty()) return false;
  for (const auto& name : names_a)
    if (slurp(a / name) != slurp(b / name)) return false;
  return true;
}

harness::RunAllResult run_suite_into(const fs::path& dir) {
  harness::RunConfig cfg;
  cfg.out_dir = dir.string();
  fs::remove_all(dir);
  harness::RunAllResult all = harness::run_all(cfg);
  for (const auto& r : all.reports) harness::write_report(r, cfg);
  harness::write_summary(all, cfg);
  return all;
}

}  // namespace

int main() {
  const fs::path base = fs::temp_directory_path() / "fracslice_acceptance";
  const auto first = run_suite_into(base / "a");
  const auto second = run_suite_into(base / "b");

  check(1, "geometric product axioms exhaustively and on random triples, under 1 s",
        passed_within(first, "clifford-axioms", 1000.0));
  check(2, "weighted power rule to relative 1e-8 across families and orders, under 5 s",
        passed_within(first, "power-law", 5000.0));
  check(3, "fractional derivative of the matching integral returns the integrand, under 10 s",
        passed_within(first, "fund-theorem", 10000.0));
  check(4, "derivative conventions differ exactly by the anchor kernel term",
        passed(first, "rl-caputo-bridge"));
  check(5, "exponential conjugation shifts the slice operator rate to zero",
        passed(first, "exp-conjugation"));
  check(6, "slice kernel suite: representation, splitting, circle values, vanishing loops",
        passed(first, "representation") && passed(first, "splitting") &&
            passed(first, "cauchy-formula") && passed(first, "cauchy-theorem") &&
            passed(first, "morera"));
  check(7, "corner operator equals weighted edge-integral derivatives at all corners, under 60 s",
        passed_within(first, "fracprop1", 60000.0));
  check(8, "members certified on both sides and perturbed members rejected on both",
        passed(first, "fracprop2") && passed(first, "member-kernel"));
  check(9, "transform output passes representation, splitting, series, circle, loop checks",
        passed(first, "frac-representation") && passed(first, "frac-splitting") &&
            passed(first, "frac-series") && passed(first, "frac-cauchy") &&
            passed(first, "frac-cauchy-thm") && passed(first, "frac-morera"));
  check(10, "fitted series recovers weighted cross-line values and self-converges",
        passed(first, "cross-recovery"));
  check(11, "anchored operators: constants, exchange identity, characterization, reductions",
        passed(first, "caputo-kernel") && passed(first, "caputo-h-identity") &&
            passed(first, "caputo-characterization") && passed(first, "mixed-operators"));
  const bool deterministic = dirs_byte_identical(base / "a", base / "b");
  const bool suite_ok = first.all_pass && second.all_pass;
  const bool under_budget = first.wall_ms < 300000.0 && second.wall_ms < 300000.0;
  check(12, "full default suite passes with byte-identical reports, under 5 min",
        deterministic && suite_ok && under_budget);

  std::printf("%d/12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}

// Command-line front end: parse graphs, dispatch to the analysis modules,
// emit human-readable or JSON reports. Exit status 0 iff no error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lpa/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

lpa::Graph load_graph(const std::string& path) {
  return lpa::Graph::parse(slurp(path));
}

int guard_from_env() {
  const char* v = std::getenv("LPA_GUARD_VERTICES");
  if (!v) return 20;
  try {
    return std::stoi(v);
  } catch (...) {
    throw std::runtime_error("LPA_GUARD_VERTICES is not an integer");
  }
}

void emit(const lpa::Json& report, bool as_json) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << lpa::render_text(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph algebra analysis toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the JSON report");

  std::string path_a, path_b, script_path, fixture_path;
  std::vector<std::string> equal_query;
  int bound = 16;
  bool group_check = false;
  long d = 0, r = 0;
  std::optional<long> extend_n;

  auto* analyze = app.add_subcommand("analyze", "full structural report for one graph");
  analyze->add_option("graph", path_a, "graph file ('-' for stdin)")->required();

  auto* k0cmd = app.add_subcommand("k0", "K0 group, unit class and det(I - A)");
  k0cmd->add_option("graph", path_a)->required();

  auto* cmp = app.add_subcommand("compare", "classification verdict for two graphs");
  cmp->add_option("graphE", path_a)->required();
  cmp->add_option("graphF", path_b)->required();

  auto* move = app.add_subcommand("move", "apply a move script with invariant checks");
  move->require_subcommand(1);
  auto* move_apply = move->add_subcommand("apply", "apply moves from a script file");
  move_apply->add_option("graph", path_a)->required();
  move_apply->add_option("script", script_path)->required();

  auto* monoid = app.add_subcommand("monoid", "graph monoid presentation and queries");
  monoid->add_option("graph", path_a)->required();
  monoid->add_option("--equal", equal_query, "two elements, e.g. \"v\" \"3*v\"")
      ->expected(2);
  monoid->add_option("--bound", bound, "coordinate-sum bound for the search");
  monoid->add_flag("--group-check", group_check,
                   "compare nonzero classes against the K0 invariant factors");

  auto* dagger = app.add_subcommand("verify-dagger", "check y_i x_j = delta and sum x_i y_i = 1");
  dagger->add_option("fixture", fixture_path, "JSON fixture with graph, x, y")->required();

  auto* part = app.add_subcommand("partition", "residue sequence partition of {1..d}");
  part->add_option("d", d)->required();
  part->add_option("r", r)->required();
  part->add_option("--extend", extend_n, "extend mod d to {1..n}");

  CLI11_PARSE(app, argc, argv);

  try {
    lpa::ReportOptions opt;
    opt.vertex_guard = guard_from_env();
    if (*analyze) {
      emit(lpa::analyze_report(load_graph(path_a), opt), as_json);
    } else if (*k0cmd) {
      emit(lpa::k0_report(load_graph(path_a)), as_json);
    } else if (*cmp) {
      emit(lpa::compare_report(load_graph(path_a), load_graph(path_b)), as_json);
    } else if (*move) {
      emit(lpa::move_report(load_graph(path_a), slurp(script_path)), as_json);
    } else if (*monoid) {
      emit(lpa::monoid_report(load_graph(path_a), equal_query, bound, group_check),
           as_json);
    } else if (*dagger) {
      emit(lpa::dagger_report(slurp(fixture_path)), as_json);
    } else if (*part) {
      emit(lpa::partition_report(d, r, extend_n), as_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

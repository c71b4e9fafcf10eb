#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "homolocal/error.hpp"
#include "homolocal/report.hpp"

namespace {

using namespace homolocal;

constexpr int kTaskFailure = 1;
constexpr int kInputFailure = 2;

struct Loaded {
  Workspace workspace;
  Environment env;
};

std::optional<Loaded> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    Loaded out;
    out.workspace = parse_workspace(buf.str());
    out.env = build_environment(out.workspace);
    return out;
  } catch (const Error& e) {
    std::cerr << "error: " << path << ":" << e.what() << " [" << to_string(e.kind()) << "]\n";
    return std::nullopt;
  }
}

int execute(const std::string& path, const std::string& format, int jobs, bool criteria_only) {
  auto fmt = parse_format(format);
  if (!fmt) {
    std::cerr << "error: unknown format " << format << "\n";
    return kInputFailure;
  }
  auto loaded = load(path);
  if (!loaded) return kInputFailure;
  std::vector<TaskDef> tasks;
  for (const auto& t : loaded->workspace.tasks)
    if (!criteria_only || is_criterion_kind(t.kind)) tasks.push_back(t);
  auto report = run_workspace(loaded->env, tasks, jobs);
  std::cout << emit_report(report, *fmt);
  return report.all_ok() ? 0 : kTaskFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homolocal: homological invariants of local homomorphisms over truncated graded rings"};
  app.require_subcommand(1);

  std::string file, format = "json", kind;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run every task of a workspace");
  run->add_option("file", file, "Workspace file")->required();
  run->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  run->add_option("--jobs", jobs, "Concurrent tasks")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Run the criterion tasks of a workspace");
  check->add_option("file", file, "Workspace file")->required();
  check->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  check->add_option("--jobs", jobs, "Concurrent tasks")->check(CLI::PositiveNumber);

  auto* explain = app.add_subcommand("explain", "Describe a task kind and the formula it uses");
  explain->add_option("task", kind, "Task kind")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputFailure;
  }

  if (run->parsed()) return execute(file, format, jobs, false);
  if (check->parsed()) {
    if (check->count("--format") == 0) format = "table";
    return execute(file, format, jobs, true);
  }
  auto text = explain_task(kind);
  if (!text) {
    std::cerr << "error: unknown task kind " << kind << "; known kinds:";
    for (const auto& k : task_kinds()) std::cerr << " " << k;
    std::cerr << "\n";
    return kInputFailure;
  }
  std::cout << kind << ": " << *text << "\n";
  return 0;
}

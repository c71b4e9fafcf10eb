#pragma once

// Task execution and report emission for workspaces.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "homolocal/criteria.hpp"
#include "homolocal/workspace.hpp"

namespace homolocal {

using Scalar = std::variant<std::int64_t, double, std::string>;

struct TaskError {
  std::string kind;
  std::string message;
  std::optional<int> degree;
};

struct TaskResult {
  std::string name;
  std::string kind;
  std::optional<TaskError> error;
  std::vector<std::pair<std::string, TruncatedSeries>> series;
  std::vector<std::pair<std::string, Scalar>> values;
  std::vector<CriterionVerdict> verdicts;

  bool ok() const { return !error; }
};

constexpr const char* kReportSchema = "homolocal.report/1";

struct Report {
  std::vector<TaskResult> tasks;
  bool all_ok() const;
};

// Task kinds, in documentation order.
const std::vector<std::string>& task_kinds();
bool is_criterion_kind(const std::string& kind);
// What a task kind computes and the formula it uses; nullopt if unknown.
std::optional<std::string> explain_task(const std::string& kind);

TaskResult run_task(const Environment& env, const TaskDef& task);
// Runs the tasks concurrently on up to `jobs` workers. Results keep the
// declaration order, and per-task errors never stop other tasks.
Report run_workspace(const Environment& env, const std::vector<TaskDef>& tasks, int jobs = 1);

enum class Format { Json, Csv, Table };
std::optional<Format> parse_format(const std::string& s);
std::string emit_report(const Report& r, Format f);

}  // namespace homolocal

#include "homolocal/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "homolocal/parallel.hpp"

namespace homolocal {

using json = nlohmann::ordered_json;

bool Report::all_ok() const {
  for (const auto& t : tasks)
    if (!t.ok()) return false;
  return true;
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  return std::nullopt;
}

Report run_workspace(const Environment& env, const std::vector<TaskDef>& tasks, int jobs) {
  Report out;
  out.tasks.resize(tasks.size());
  int saved = homolocal::jobs();
  set_jobs(jobs);
  parallel_for(tasks.size(), [&](std::size_t i) { out.tasks[i] = run_task(env, tasks[i]); });
  set_jobs(saved);
  return out;
}

namespace {

json series_json(const std::string& name, const TruncatedSeries& s) {
  json j;
  j["name"] = name;
  j["lo"] = s.lo;
  j["coefficients"] = s.coeffs;
  json cert = json::array();
  for (auto c : s.certainty) cert.push_back(to_string(c));
  j["certainty"] = cert;
  j["polynomial"] = s.polynomial;
  return j;
}

json scalar_json(const Scalar& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

json pairs_json(const std::vector<std::pair<std::string, std::int64_t>>& xs) {
  json j = json::object();
  for (const auto& [k, v] : xs) j[k] = v;
  return j;
}

json verdict_json(const CriterionVerdict& v) {
  json j;
  j["name"] = v.name;
  j["verdict"] = to_string(v.verdict);
  j["detail"] = v.detail;
  if (v.verdict == Verdict::Undetermined) j["limiting"] = v.limiting;
  json w;
  w["values"] = pairs_json(v.values);
  json series = json::array();
  for (const auto& [k, s] : v.series) series.push_back(series_json(k, s));
  w["series"] = series;
  j["witness"] = w;
  j["parameters"] = pairs_json(v.parameters);
  return j;
}

std::string emit_json(const Report& r) {
  json j;
  j["schema"] = kReportSchema;
  json tasks = json::array();
  for (const auto& t : r.tasks) {
    json tj;
    tj["name"] = t.name;
    tj["kind"] = t.kind;
    tj["status"] = t.ok() ? "ok" : "error";
    if (t.error) {
      json e;
      e["kind"] = t.error->kind;
      e["message"] = t.error->message;
      if (t.error->degree) e["degree"] = *t.error->degree;
      tj["error"] = e;
    }
    json series = json::array();
    for (const auto& [k, s] : t.series) series.push_back(series_json(k, s));
    tj["series"] = series;
    json values = json::object();
    for (const auto& [k, v] : t.values) values[k] = scalar_json(v);
    tj["values"] = values;
    json verdicts = json::array();
    for (const auto& v : t.verdicts) verdicts.push_back(verdict_json(v));
    tj["verdicts"] = verdicts;
    tasks.push_back(tj);
  }
  j["tasks"] = tasks;
  return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_series(std::ostringstream& o, const std::string& task, const std::string& name,
                const TruncatedSeries& s) {
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    o << csv_field(task) << ',' << csv_field(name) << ',' << s.lo + static_cast<int>(i) << ','
      << s.coeffs[i] << ',' << (certified(s.certainty[i]) ? "true" : "false") << '\n';
}

std::string emit_csv(const Report& r) {
  std::ostringstream o;
  o << "task,series,index,value,certified\n";
  for (const auto& t : r.tasks) {
    for (const auto& [k, s] : t.series) csv_series(o, t.name, k, s);
    for (const auto& v : t.verdicts)
      for (const auto& [k, s] : v.series) csv_series(o, t.name, v.name + "/" + k, s);
  }
  return o.str();
}

std::string scalar_text(const Scalar& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto* d = std::get_if<double>(&v)) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(4) << *d;
    return o.str();
  }
  return std::get<std::string>(v);
}

std::string series_text(const TruncatedSeries& s) {
  std::string out;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s.coeffs[i]);
    if (!certified(s.certainty[i])) out += '?';
  }
  if (s.polynomial) out += " (polynomial)";
  return out;
}

std::string emit_table(const Report& r) {
  std::ostringstream o;
  if (r.tasks.empty()) return "no tasks\n";
  for (const auto& t : r.tasks) {
    o << "== " << t.name << " [" << t.kind << "] " << (t.ok() ? "ok" : "error") << "\n";
    if (t.error) {
      o << "  " << t.error->kind << ": " << t.error->message;
      if (t.error->degree) o << " (degree " << *t.error->degree << ")";
      o << "\n";
    }
    for (const auto& [k, s] : t.series) {
      o << "  " << k;
      if (s.lo != 0) o << " from " << s.lo;
      o << ": " << series_text(s) << "\n";
    }
    for (const auto& [k, v] : t.values) o << "  " << k << " = " << scalar_text(v) << "\n";
    for (const auto& v : t.verdicts) {
      o << "  " << std::left << std::setw(26) << v.name << std::setw(13) << to_string(v.verdict) << v.detail;
      if (v.verdict == Verdict::Undetermined) o << " [limited by " << v.limiting << "]";
      o << "\n";
    }
  }
  return o.str();
}

}  // namespace

std::string emit_report(const Report& r, Format f) {
  switch (f) {
    case Format::Json: return emit_json(r);
    case Format::Csv: return emit_csv(r);
    case Format::Table: return emit_table(r);
  }
  return "";
}

}  // namespace homolocal

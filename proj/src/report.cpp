#include "dpsqft/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dpsqft {

void Report::check(const std::string& id, double measured, double tolerance,
                   const std::string& note) {
  CheckRecord rec;
  rec.id = id;
  rec.measured = measured;
  rec.tolerance = tolerance;
  rec.lower_bound = false;
  rec.pass = measured <= tolerance;
  rec.note = note;
  checks.push_back(std::move(rec));
}

void Report::control(const std::string& id, double measured, double bound,
                     const std::string& note) {
  CheckRecord rec;
  rec.id = id;
  rec.measured = measured;
  rec.tolerance = bound;
  rec.lower_bound = true;
  rec.pass = measured > bound;
  rec.note = note;
  checks.push_back(std::move(rec));
}

void Report::table(json row) { tables.push_back(std::move(row)); }

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  tables.insert(tables.end(), other.tables.begin(), other.tables.end());
}

int Report::failed() const {
  int n = 0;
  for (const auto& rec : checks)
    if (!rec.pass) ++n;
  return n;
}

json Report::to_json() const {
  json out;
  out["version"] = "1.0.0";
  out["suite"] = suite;
  out["config"] = config_echo;
  int nfail = failed();
  out["summary"] = {{"checks", checks.size()},
                    {"passed", checks.size() - static_cast<std::size_t>(nfail)},
                    {"failed", nfail}};
  out["checks"] = json::array();
  for (const auto& rec : checks) {
    json jc;
    jc["id"] = rec.id;
    jc["measured"] = rec.measured;
    jc["tolerance"] = rec.tolerance;
    jc["bound"] = rec.lower_bound ? "lower" : "upper";
    jc["pass"] = rec.pass;
    if (!rec.note.empty()) jc["note"] = rec.note;
    out["checks"].push_back(std::move(jc));
  }
  out["tables"] = json::array();
  for (const auto& row : tables) out["tables"].push_back(row);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_report(const Report& rep, const std::string& dir) {
  write_text_file(dir + "/report.json", rep.to_json().dump(2) + "\n");
}

}  // namespace dpsqft

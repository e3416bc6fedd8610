#pragma once
// Run reports: ordered check records with pass/fail verdicts, free-form data
// tables, a config echo, and deterministic JSON serialization (insertion
// order preserved, no timestamps -- identical config and seed give
// byte-identical output).

#include <string>
#include <vector>

#include <json.hpp>

namespace dpsqft {

using json = nlohmann::ordered_json;

struct CheckRecord {
  std::string id;
  double measured = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;  // negative controls: pass iff measured > tolerance
  bool pass = false;
  std::string note;
};

struct Report {
  std::string suite;
  json config_echo = json::object();
  std::vector<CheckRecord> checks;
  std::vector<json> tables;

  // residual-style check: pass iff measured <= tolerance
  void check(const std::string& id, double measured, double tolerance,
             const std::string& note = "");
  // negative control: pass iff measured > bound (the check must be able to fail)
  void control(const std::string& id, double measured, double bound,
               const std::string& note = "");
  void table(json row);
  void merge(const Report& other);

  int failed() const;
  json to_json() const;
};

// creates parent directories as needed
void write_text_file(const std::string& path, const std::string& content);
// dir + "/report.json"
void write_report(const Report& rep, const std::string& dir);

}  // namespace dpsqft

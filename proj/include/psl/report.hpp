#pragma once

#include <map>
#include <string>
#include <vector>

#include "psl/par.hpp"
#include "psl/ranks.hpp"

namespace psl {

struct FieldCfg {
  std::string name;
  unsigned p = 3, f = 1;
  std::vector<long long> eisenstein;
  long precision = -1;  // -1: default policy
};

struct CurveCfg {
  std::string name;
  std::string field;
  std::array<std::vector<long long>, 5> a;
};

struct SessionConfig {
  std::vector<FieldCfg> fields;
  std::vector<CurveCfg> curves;
  std::vector<std::string> suites;  // subset of the known suite names
  uint64_t seed = 1;
  long samples = 50;
  bool assert_torsion = true;
  std::string format = "md";  // md | csv | json
};

// known suite names, in deterministic execution order
const std::vector<std::string>& known_suites();

SessionConfig default_config();
SessionConfig parse_config(const std::string& json_text);
std::string default_config_json();

struct CheckResult {
  std::string suite;
  std::string name;
  // PASS / FAIL / SKIP (SKIP marks checks inapplicable to a field or curve;
  // only FAIL affects the exit status)
  std::string status;
  std::string details;
};

struct ReportDoc {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  std::string render(const std::string& format) const;  // deterministic bytes
};

// Executes the selected suites in deterministic order. Timing goes to stderr
// (never into the document, which must be byte-stable for a fixed config and
// seed). Computational defects surface as FAIL rows, not exceptions.
ReportDoc run_report(const SessionConfig& cfg, Policy pol = default_policy());

// resolved handles for the CLI
FieldPtr resolve_field(const SessionConfig& cfg, const std::string& name);
CurvePtr resolve_curve(const SessionConfig& cfg, const std::string& name);
FieldPtr make_field_cfg(const FieldCfg& fc);

// grid emitters shared by the CLI
std::string hilbert_table(const FieldPtr& K, bool markdown, Policy pol = default_policy());
std::string mackey_dims_grid(const FieldPtr& K, long max_level, bool markdown,
                             long samples = 25, uint64_t seed = 1,
                             Policy pol = default_policy());

}  // namespace psl

#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "dcosets/oracle.hpp"
#include "dcosets/ybe.hpp"

namespace dcosets {

struct GroupChoice {
  std::string kind = "SL2";
  int q = 3;
};

struct ScenarioConfig {
  GroupChoice g1, g2;
  std::string a = "empty";
  std::string c = "empty";
  std::string K = "graph";
  std::string L = "graph";
  std::string verify = "all";  // main1|main2|dim|lemmas|ybe|spherical|all
  int section = 0;
  std::string out;
};

/// Flat key=value lines; '#' starts a comment. Keys: g1, g2, q1, q2, a, c,
/// K, L, verify, section, out.
ScenarioConfig parse_config_file(const std::string& path);
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

/// Isometry specs: "empty", "full-id", "flip" (index reversal),
/// "id:1,3" (identity on the listed 1-based indices), or explicit pairs
/// "1>2,2>1".
PartialIsometry parse_isometry(const RootSystem& rs1, const RootSystem& rs2,
                               const std::string& spec);

/// 1-based comma list, "" or "none" for the empty set, "all" for everything.
SimpleSubset parse_subset(const RootSystem& rs, const std::string& spec);

/// Owns the groups, Weyl groups and oracle context of one configured run.
class ScenarioRun {
 public:
  explicit ScenarioRun(const ScenarioConfig& cfg);
  const ScenarioConfig& config() const { return cfg_; }
  OracleContext& ctx() { return *ctx_; }
  const OracleContext& ctx() const { return *ctx_; }

 private:
  ScenarioConfig cfg_;
  std::unique_ptr<FinGroup> G1_, G2_;
  std::unique_ptr<WeylGroup> W1_, W2_;
  std::unique_ptr<OracleContext> ctx_;
};

// Reports. Every report carries {"scenario": ..., "pass": bool}; runs with
// parameter tables add {"parameters": [...], "totals": ...}.
nlohmann::json roots_report(const std::string& type);
nlohmann::json weyl_report(const std::string& type, const std::string& A,
                           const std::string& C);
nlohmann::json isometries_report(const std::string& type1, const std::string& type2);
nlohmann::json classify_report(const std::string& type1, const std::string& type2,
                               const std::string& a, const std::string& c);
nlohmann::json run_scenario(const ScenarioConfig& cfg);

/// Mirrors the parameter table of a report.
std::string report_tsv(const nlohmann::json& report);
/// Writes <base>.json and <base>.tsv.
void write_report(const nlohmann::json& report, const std::string& base);

}  // namespace dcosets

#include <CLI11.hpp>
#include <iostream>

#include "dcosets/scenario.hpp"

using dcosets::ScenarioConfig;
using nlohmann::json;

namespace {

struct OracleFlags {
  std::string config, g, g1, g2, a, c, K, L, out;
  int q = 0, q1 = 0, q2 = 0, section = 0;
  bool bruhat = false;
};

void add_oracle_flags(CLI::App* cmd, OracleFlags& f) {
  cmd->add_option("--config", f.config, "key=value config file; flags override");
  cmd->add_option("--g", f.g, "group for both factors (SL2, SL3, GL2)");
  cmd->add_option("--g1", f.g1, "first factor group");
  cmd->add_option("--g2", f.g2, "second factor group");
  cmd->add_option("--q", f.q, "field modulus for both factors (2 or 3)");
  cmd->add_option("--q1", f.q1, "first factor modulus");
  cmd->add_option("--q2", f.q2, "second factor modulus");
  cmd->add_option("--a", f.a, "isometry a (empty, full-id, flip, id:1, 1>2,...)");
  cmd->add_option("--c", f.c, "isometry c");
  cmd->add_option("--K", f.K,
                  "quintuple for K: graph, graph-zfull, graph-zdiag, graph-levi");
  cmd->add_option("--L", f.L, "quintuple for L");
  cmd->add_option("--section", f.section, "Weyl representative section variant (0 or 1)");
  cmd->add_option("--out", f.out, "write <out>.json and <out>.tsv");
  cmd->add_flag("--bruhat", f.bruhat, "shorthand for a=c=empty, K=L=graph-zfull");
}

ScenarioConfig build_config(const OracleFlags& f, const std::string& verify) {
  ScenarioConfig cfg;
  if (!f.config.empty()) cfg = dcosets::parse_config_file(f.config);
  if (f.bruhat) {
    cfg.a = cfg.c = "empty";
    cfg.K = cfg.L = "graph-zfull";
  }
  if (!f.g.empty()) apply_setting(cfg, "g", f.g);
  if (!f.g1.empty()) apply_setting(cfg, "g1", f.g1);
  if (!f.g2.empty()) apply_setting(cfg, "g2", f.g2);
  if (f.q) apply_setting(cfg, "q", std::to_string(f.q));
  if (f.q1) apply_setting(cfg, "q1", std::to_string(f.q1));
  if (f.q2) apply_setting(cfg, "q2", std::to_string(f.q2));
  if (!f.a.empty()) cfg.a = f.a;
  if (!f.c.empty()) cfg.c = f.c;
  if (!f.K.empty()) cfg.K = f.K;
  if (!f.L.empty()) cfg.L = f.L;
  cfg.section = f.section;
  if (!f.out.empty()) cfg.out = f.out;
  if (!verify.empty()) cfg.verify = verify;
  return cfg;
}

int finish(const json& report, const std::string& out) {
  if (!out.empty()) dcosets::write_report(report, out);
  std::cout << report.dump(2) << "\n";
  return report["pass"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double coset classification engine for products of reductive groups"};
  app.require_subcommand(1);

  std::string type = "A2", type2, A, C, a_spec = "empty", c_spec = "empty", out;

  CLI::App* roots = app.add_subcommand("roots", "root system summary");
  roots->add_option("--type", type, "root system type (A1..A4, B2..B4, C3, C4, D4, G2)");
  roots->add_option("--out", out, "output base path");

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl group and minimal representatives");
  weyl->add_option("--type", type, "root system type");
  weyl->add_option("--A", A, "left subset, 1-based list");
  weyl->add_option("--C", C, "right subset, 1-based list");
  weyl->add_option("--out", out, "output base path");

  CLI::App* isos = app.add_subcommand("isometries", "partial diagram isometries");
  isos->add_option("--type", type, "first diagram");
  isos->add_option("--type2", type2, "second diagram (defaults to the first)");
  isos->add_option("--out", out, "output base path");

  CLI::App* cls = app.add_subcommand("classify", "combinatorial coset parameters");
  cls->add_option("--type", type, "first root system");
  cls->add_option("--type2", type2, "second root system (defaults to the first)");
  cls->add_option("--a", a_spec, "isometry a");
  cls->add_option("--c", c_spec, "isometry c");
  cls->add_option("--out", out, "output base path");

  OracleFlags vf, yf, sf;
  std::string selector = "all";
  CLI::App* verify = app.add_subcommand("verify", "finite-field verification suites");
  verify->add_option("selector", selector,
                     "main1 | main2 | dim | lemmas | ybe | spherical | all");
  add_oracle_flags(verify, vf);

  CLI::App* ybe = app.add_subcommand("ybe", "Yang-Baxter maps from stabilizers");
  add_oracle_flags(ybe, yf);

  CLI::App* spher = app.add_subcommand("spherical", "orbit census on double flag varieties");
  add_oracle_flags(spher, sf);

  CLI11_PARSE(app, argc, argv);

  try {
    if (roots->parsed()) return finish(dcosets::roots_report(type), out);
    if (weyl->parsed()) return finish(dcosets::weyl_report(type, A, C), out);
    if (isos->parsed())
      return finish(dcosets::isometries_report(type, type2.empty() ? type : type2), out);
    if (cls->parsed())
      return finish(dcosets::classify_report(type, type2.empty() ? type : type2, a_spec,
                                             c_spec),
                    out);
    if (verify->parsed()) {
      ScenarioConfig cfg = build_config(vf, selector);
      return finish(dcosets::run_scenario(cfg), cfg.out);
    }
    if (ybe->parsed()) {
      ScenarioConfig cfg = build_config(yf, "ybe");
      return finish(dcosets::run_scenario(cfg), cfg.out);
    }
    if (spher->parsed()) {
      ScenarioConfig cfg = build_config(sf, "spherical");
      return finish(dcosets::run_scenario(cfg), cfg.out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

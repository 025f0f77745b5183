#include "dcosets/scenario.hpp"

#include <fstream>
#include <sstream>

namespace dcosets {

using nlohmann::json;

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ScenarioConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!key.empty()) apply_setting(cfg, key, value);
  }
  return cfg;
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "g" || key == "group") {
    cfg.g1.kind = cfg.g2.kind = value;
  } else if (key == "g1") {
    cfg.g1.kind = value;
  } else if (key == "g2") {
    cfg.g2.kind = value;
  } else if (key == "q") {
    cfg.g1.q = cfg.g2.q = std::stoi(value);
  } else if (key == "q1") {
    cfg.g1.q = std::stoi(value);
  } else if (key == "q2") {
    cfg.g2.q = std::stoi(value);
  } else if (key == "a") {
    cfg.a = value;
  } else if (key == "c") {
    cfg.c = value;
  } else if (key == "K") {
    cfg.K = value;
  } else if (key == "L") {
    cfg.L = value;
  } else if (key == "verify") {
    cfg.verify = value;
  } else if (key == "section") {
    cfg.section = std::stoi(value);
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

PartialIsometry parse_isometry(const RootSystem& rs1, const RootSystem& rs2,
                               const std::string& spec) {
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  if (spec == "empty" || spec.empty()) {
    return PartialIsometry::empty_map(rs1, rs2);
  }
  if (spec == "full-id") {
    if (rs1.rank() != rs2.rank()) throw std::invalid_argument("full-id needs equal ranks");
    for (int i = 0; i < rs1.rank(); ++i) m[i] = static_cast<int8_t>(i);
    return PartialIsometry(rs1, rs2, m);
  }
  if (spec == "flip") {
    if (rs1.rank() != rs2.rank()) throw std::invalid_argument("flip needs equal ranks");
    for (int i = 0; i < rs1.rank(); ++i) m[i] = static_cast<int8_t>(rs1.rank() - 1 - i);
    return PartialIsometry(rs1, rs2, m);
  }
  if (spec.rfind("id:", 0) == 0) {
    std::stringstream ss(spec.substr(3));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int i = std::stoi(tok) - 1;
      if (i < 0 || i >= rs1.rank() || i >= rs2.rank())
        throw std::invalid_argument("isometry index out of range: " + tok);
      m[i] = static_cast<int8_t>(i);
    }
    return PartialIsometry(rs1, rs2, m);
  }
  // explicit pairs "1>2,2>1"
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto gt = tok.find('>');
    if (gt == std::string::npos) throw std::invalid_argument("bad isometry spec: " + spec);
    int i = std::stoi(tok.substr(0, gt)) - 1;
    int j = std::stoi(tok.substr(gt + 1)) - 1;
    if (i < 0 || i >= rs1.rank() || j < 0 || j >= rs2.rank())
      throw std::invalid_argument("isometry index out of range: " + tok);
    m[i] = static_cast<int8_t>(j);
  }
  return PartialIsometry(rs1, rs2, m);
}

SimpleSubset parse_subset(const RootSystem& rs, const std::string& spec) {
  if (spec.empty() || spec == "none" || spec == "{}") return SimpleSubset();
  if (spec == "all" || spec == "full") return SimpleSubset::full(rs.rank());
  SimpleSubset out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int i = std::stoi(tok) - 1;
    if (i < 0 || i >= rs.rank()) throw std::invalid_argument("subset index out of range");
    out.add(i);
  }
  return out;
}

ScenarioRun::ScenarioRun(const ScenarioConfig& cfg) : cfg_(cfg) {
  G1_ = std::make_unique<FinGroup>(FinGroup::build(cfg.g1.kind, cfg.g1.q));
  G2_ = std::make_unique<FinGroup>(FinGroup::build(cfg.g2.kind, cfg.g2.q));
  W1_ = std::make_unique<WeylGroup>(WeylGroup::generate(G1_->root_system()));
  W2_ = std::make_unique<WeylGroup>(WeylGroup::generate(G2_->root_system()));
  PartialIsometry a = parse_isometry(G1_->root_system(), G2_->root_system(), cfg.a);
  PartialIsometry c = parse_isometry(G1_->root_system(), G2_->root_system(), cfg.c);
  ctx_ = std::make_unique<OracleContext>(
      make_context(*G1_, *G2_, *W1_, *W2_, a, cfg.K, c, cfg.L, cfg.section));
}

namespace {

json subset_json(SimpleSubset s) {
  json arr = json::array();
  for (int i : s.indices()) arr.push_back(i + 1);
  return arr;
}

json scenario_json(const ScenarioConfig& cfg) {
  return json{{"g1", cfg.g1.kind + "/F" + std::to_string(cfg.g1.q)},
              {"g2", cfg.g2.kind + "/F" + std::to_string(cfg.g2.q)},
              {"a", cfg.a},
              {"c", cfg.c},
              {"K", cfg.K},
              {"L", cfg.L},
              {"verify", cfg.verify},
              {"section", cfg.section}};
}

bool is_bruhat_like(const OracleContext& ctx) {
  return ctx.A.iso.domain().empty() && ctx.C.iso.domain().empty() &&
         ctx.A.k_spec == "graph-zfull" && ctx.C.k_spec == "graph-zfull";
}

bool is_full_diagonal_sl2(const OracleContext& ctx) {
  return ctx.G1->name() == ctx.G2->name() && ctx.G1->name().rfind("SL2", 0) == 0 &&
         ctx.A.iso.domain() == SimpleSubset::full(ctx.G1->root_system().rank()) &&
         ctx.C.iso.domain() == ctx.A.iso.domain() && ctx.A.k_spec == "graph" &&
         ctx.C.k_spec == "graph";
}

json dim_fields(const PairSetup& s, const CosetParameter& p, int rankH1, int rankH2) {
  DimensionReport r = dimension(s, p, rankH1, rankH2, 0, 0);
  return json{{"l1", r.l1},
              {"l2", r.l2},
              {"dimP_A1", r.dimP_A1},
              {"dimM_A1vv", r.dimM_A1vv},
              {"dimP_C2", r.dimP_C2},
              {"dimZ_C2vv", r.dimZ_C2vv}};
}

json check_json(const CheckReport& rep) {
  return json{{"pass", rep.pass}, {"checks", rep.checks}, {"failures", rep.failures}};
}

json run_dim_checks(const OracleContext& ctx) {
  json out;
  std::vector<std::string> failures;
  PairSetup s = ctx.setup();
  int rankH1 = ctx.G1->torus_rank(), rankH2 = ctx.G2->torus_rank();

  // The two root-counting identities for parabolic intersections, swept
  // exhaustively over both root systems.
  int checked = 0;
  for (const WeylGroup* W : {ctx.W1, ctx.W2}) {
    int rank = W->root_system().rank();
    for (uint32_t ab = 0; ab < (1u << rank); ++ab) {
      for (uint32_t cb = 0; cb < (1u << rank); ++cb) {
        SimpleSubset A(ab), C(cb);
        for (int w : W->min_reps(A, C)) {
          ++checked;
          if (!intersection_dims_check(*W, A, C, w))
            failures.push_back("intersection dims fail at w=" + W->word_string(w));
        }
      }
    }
  }
  out["intersection_checks"] = checked;

  json details = json::array();
  std::vector<CosetParameter> params = enumerate_parameters(s);
  for (const CosetParameter& p : params) {
    int su = stab_u_dim(s, p);  // throws when negative
    json row{{"v1", ctx.W1->word_string(p.v1)},
             {"v2", ctx.W2->word_string(p.v2)},
             {"stab_u_dim", su}};
    if (is_bruhat_like(ctx)) {
      DimensionReport r = dimension(s, p, rankH1, rankH2, bruhat_z_term(rankH2),
                                    bruhat_orbit_dim(rankH1));
      int dimB1 = group_dims(ctx.G1->root_system(), SimpleSubset(), rankH1).P;
      int dimB2 = group_dims(ctx.G2->root_system(), SimpleSubset(), rankH2).P;
      int expected = (r.l1 + dimB1) + (r.l2 + dimB2);
      row["total"] = r.total;
      row["expected"] = expected;
      if (r.total != expected)
        failures.push_back("Bruhat dimension mismatch at v1=" +
                           ctx.W1->word_string(p.v1));
    }
    if (is_full_diagonal_sl2(ctx)) {
      int dimG = group_dims(ctx.G1->root_system(),
                            SimpleSubset::full(ctx.G1->root_system().rank()), rankH1)
                     .M;
      const Subgroup& Z = ctx.G1->levi_center(
          SimpleSubset::full(ctx.G1->root_system().rank()));
      TwistedClasses tw = twisted_classes(ctx, p);
      json cls = json::array();
      for (int m1 : tw.orbit_reps) {
        int orbit_dim = Z.contains(m1) ? 0 : 2;
        DimensionReport r =
            dimension(s, p, rankH1, rankH2, full_graph_z_term(), orbit_dim);
        int expected = dimG + orbit_dim;
        cls.push_back(json{{"m1", m1}, {"total", r.total}, {"expected", expected}});
        if (r.total != expected)
          failures.push_back("diagonal dimension mismatch at m1=" + std::to_string(m1));
      }
      row["classes"] = cls;
    }
    details.push_back(row);
  }
  out["details"] = details;
  out["failures"] = failures;
  out["pass"] = failures.empty();
  return out;
}

json run_ybe_checks(const OracleContext& ctx) {
  json out;
  std::vector<std::string> failures;
  json rows = json::array();
  PairSetup s = ctx.setup();

  const CocycleData* control_source = nullptr;
  std::vector<CocycleData> instances;
  for (const CosetParameter& p : enumerate_parameters(s)) {
    TwistedClasses tw = twisted_classes(ctx, p);
    for (int m1 : ctx.G1->levi(p.stable.A1vv).elems) {
      for (int z : tw.z_reps) {
        json row{{"v1", ctx.W1->word_string(p.v1)},
                 {"v2", ctx.W2->word_string(p.v2)},
                 {"m1", m1},
                 {"s", z}};
        try {
          CocycleData data = build_psi(ctx, p, m1, z);
          row["N"] = data.n_size();
          row["k"] = data.k;
          YBPair maps = build_T(data);
          YBEResult r0 = verify_qybe(maps.T0);
          YBEResult rt = verify_qybe(maps.T);
          YBEResult rc = verify_cocycle(data);
          row["qybe_T0"] = r0.pass;
          row["qybe_T"] = rt.pass;
          row["cocycle"] = rc.pass;
          if (!r0.pass) failures.push_back("T0 fails at " + data.label + ": " + r0.witness);
          if (!rt.pass) failures.push_back("T fails at " + data.label + ": " + rt.witness);
          if (!rc.pass)
            failures.push_back("cocycle fails at " + data.label + ": " + rc.witness);
          instances.push_back(std::move(data));
        } catch (const std::exception& e) {
          row["error"] = e.what();
          failures.push_back(e.what());
        }
        rows.push_back(row);
      }
    }
  }
  // Negative control: corrupt psi on some instance where psi is not
  // constant; the corrupted data must fail one of the checks.
  for (const CocycleData& data : instances) {
    bool constant = true;
    for (int32_t v : data.psi)
      if (v != data.psi[0]) constant = false;
    if (constant) continue;
    control_source = &data;
    break;
  }
  if (control_source) {
    bool broke = false;
    std::string witness;
    for (int i = 0; i < control_source->n_size() && !broke; ++i) {
      for (int j = i + 1; j < control_source->n_size() && !broke; ++j) {
        if (control_source->psi[i] == control_source->psi[j]) continue;
        CocycleData bad = corrupt_psi(*control_source, i, j);
        YBEResult rc = verify_cocycle(bad);
        if (!rc.pass) {
          broke = true;
          witness = "swap (" + std::to_string(i) + "," + std::to_string(j) +
                    "): " + rc.witness;
          break;
        }
        YBPair maps = build_T(bad);
        YBEResult rt = verify_qybe(maps.T);
        if (!rt.pass) {
          broke = true;
          witness = "swap (" + std::to_string(i) + "," + std::to_string(j) +
                    "): " + rt.witness;
        }
      }
    }
    out["negative_control"] = json{{"found", broke}, {"witness", witness}};
    if (!broke) failures.push_back("no psi corruption produced a failure");
  } else {
    out["negative_control"] = json{{"found", false}, {"witness", "psi constant everywhere"}};
  }
  out["instances"] = rows;
  out["failures"] = failures;
  out["pass"] = failures.empty();
  return out;
}

json run_spherical_checks(const OracleContext& ctx) {
  json out;
  json rows = json::array();
  bool pass = true;
  int r1 = ctx.G1->root_system().rank(), r2 = ctx.G2->root_system().rank();
  for (uint32_t b1 = 0; b1 < (1u << r1); ++b1) {
    for (uint32_t b2 = 0; b2 < (1u << r2); ++b2) {
      FlagReport rep = verify_flag_orbits(ctx, SimpleSubset(b1), SimpleSubset(b2));
      rows.push_back(json{{"C1", subset_json(SimpleSubset(b1))},
                          {"C2", subset_json(SimpleSubset(b2))},
                          {"orbits", rep.orbits},
                          {"expected", rep.expected},
                          {"pass", rep.pass}});
      pass = pass && rep.pass;
    }
  }
  out["grid"] = rows;
  out["pass"] = pass;
  return out;
}

json run_lemma_checks(const OracleContext& ctx) {
  json out;
  CheckReport a = verify_graph_decompositions(ctx.GG, ctx.A);
  CheckReport c = verify_graph_decompositions(ctx.GG, ctx.C);
  out["decompositions_A"] = check_json(a);
  out["decompositions_C"] = check_json(c);

  // Composition: (a, K) with its own transpose gives an admissible pair
  // for G1 x G1 whose graph condition is checked elementwise.
  json comp;
  try {
    PairGroup g21(*ctx.G2, *ctx.G1);
    PairGroup g11(*ctx.G1, *ctx.G1);
    std::vector<int32_t> swapped;
    for (int32_t code : ctx.A.K.elems)
      swapped.push_back(g21.code(ctx.GG.second(code), ctx.GG.first(code)));
    PairSet Kt = pair_make(g21, std::move(swapped));
    PairSet J = compose_correspondence(ctx.GG, g21, g11, ctx.A.K, Kt);
    PartialIsometry round =
        compose_isometries(ctx.A.iso, ctx.A.iso.inverse());
    validate_generalized_graph(g11, round, J);
    comp = json{{"pass", true}, {"order", J.order()}};
  } catch (const std::exception& e) {
    comp = json{{"pass", false}, {"error", e.what()}};
  }
  out["composition"] = comp;

  CheckReport red = verify_levi_reduction(ctx);
  out["levi_reduction"] = check_json(red);
  out["pass"] = a.pass && c.pass && comp["pass"].get<bool>() && red.pass;
  return out;
}

}  // namespace

json roots_report(const std::string& type) {
  RootSystem rs = RootSystem::build(type);
  json roots = json::array();
  for (int r = 0; r < rs.num_roots(); ++r) roots.push_back(rs.root_to_string(r));
  return json{{"scenario", json{{"type", type}}},
              {"rank", rs.rank()},
              {"roots", rs.num_roots()},
              {"positive", rs.num_positive()},
              {"root_list", roots},
              {"pass", true}};
}

json weyl_report(const std::string& type, const std::string& A, const std::string& C) {
  RootSystem rs = RootSystem::build(type);
  WeylGroup W = WeylGroup::generate(rs);
  SimpleSubset As = parse_subset(rs, A), Cs = parse_subset(rs, C);
  json reps = json::array();
  for (int w : W.min_reps(As, Cs)) reps.push_back(W.word_string(w));
  return json{{"scenario", json{{"type", type}, {"A", A}, {"C", C}}},
              {"order", W.order()},
              {"min_reps", reps},
              {"count", reps.size()},
              {"pass", true}};
}

json isometries_report(const std::string& type1, const std::string& type2) {
  RootSystem rs1 = RootSystem::build(type1);
  RootSystem rs2 = RootSystem::build(type2);
  json list = json::array();
  for (const PartialIsometry& a : enumerate_partial_isometries(rs1, rs2))
    list.push_back(a.to_string());
  return json{{"scenario", json{{"type1", type1}, {"type2", type2}}},
              {"count", list.size()},
              {"isometries", list},
              {"pass", true}};
}

json classify_report(const std::string& type1, const std::string& type2,
                     const std::string& a, const std::string& c) {
  auto rs1 = std::make_unique<RootSystem>(RootSystem::build(type1));
  auto rs2 = std::make_unique<RootSystem>(RootSystem::build(type2));
  WeylGroup W1 = WeylGroup::generate(*rs1);
  WeylGroup W2 = WeylGroup::generate(*rs2);
  PairSetup s{&W1, &W2, parse_isometry(*rs1, *rs2, a), parse_isometry(*rs1, *rs2, c)};
  json rows = json::array();
  for (const CosetParameter& p : enumerate_parameters(s)) {
    json row{{"v1", W1.word_string(p.v1)},
             {"v2", W2.word_string(p.v2)},
             {"A1vv", subset_json(p.stable.A1vv)},
             {"C2vv", subset_json(p.stable.C2vv)},
             {"z_order", nullptr},
             {"j_orbit_count", nullptr},
             {"dim_report", dim_fields(s, p, rs1->rank(), rs2->rank())}};
    row["dim_report"]["stab_u_dim"] = stab_u_dim(s, p);
    rows.push_back(row);
  }
  return json{{"scenario", json{{"type1", type1}, {"type2", type2}, {"a", a}, {"c", c}}},
              {"parameters", rows},
              {"totals", json{{"parameters", rows.size()}}},
              {"pass", true}};
}

json run_scenario(const ScenarioConfig& cfg) {
  const std::string& v = cfg.verify;
  if (v != "all" && v != "main1" && v != "main2" && v != "dim" && v != "lemmas" &&
      v != "ybe" && v != "spherical")
    throw std::invalid_argument("unknown verify selection: " + v);
  ScenarioRun run(cfg);
  OracleContext& ctx = run.ctx();
  PairSetup s = ctx.setup();
  bool all = v == "all";

  json report;
  report["scenario"] = scenario_json(cfg);
  json checks;
  bool pass = true;

  // Parameter table with the twisted-class data.
  json rows = json::array();
  int parametrized = 0;
  for (const CosetParameter& p : enumerate_parameters(s)) {
    TwistedClasses tw = twisted_classes(ctx, p);
    json row{{"v1", ctx.W1->word_string(p.v1)},
             {"v2", ctx.W2->word_string(p.v2)},
             {"A1vv", subset_json(p.stable.A1vv)},
             {"C2vv", subset_json(p.stable.C2vv)},
             {"z_order", tw.z_order()},
             {"j_orbit_count", tw.j_orbit_count()},
             {"dim_report", dim_fields(s, p, ctx.G1->torus_rank(), ctx.G2->torus_rank())}};
    row["dim_report"]["stab_u_dim"] = stab_u_dim(s, p);
    parametrized += tw.z_order() * tw.j_orbit_count();
    rows.push_back(row);
  }
  report["parameters"] = rows;
  json totals{{"parameters", rows.size()}, {"parametrized_classes", parametrized}};

  if (all || v == "main1") {
    CensusReport census = verify_census(ctx);
    checks["main1"] = json{{"pass", census.pass},
                           {"brute_classes", census.brute_classes},
                           {"parametrized", census.parametrized_total},
                           {"failures", census.failures}};
    totals["brute_classes"] = census.brute_classes;
    pass = pass && census.pass;
  }
  if (all || v == "main2") {
    CheckReport rep = verify_stabilizers(ctx);
    checks["main2"] = check_json(rep);
    pass = pass && rep.pass;
  }
  if (all || v == "dim") {
    checks["dim"] = run_dim_checks(ctx);
    pass = pass && checks["dim"]["pass"].get<bool>();
  }
  if (all || v == "lemmas") {
    checks["lemmas"] = run_lemma_checks(ctx);
    pass = pass && checks["lemmas"]["pass"].get<bool>();
  }
  if (all || v == "ybe") {
    checks["ybe"] = run_ybe_checks(ctx);
    pass = pass && checks["ybe"]["pass"].get<bool>();
  }
  if (all || v == "spherical") {
    checks["spherical"] = run_spherical_checks(ctx);
    pass = pass && checks["spherical"]["pass"].get<bool>();
  }

  report["totals"] = totals;
  report["checks"] = checks;
  report["pass"] = pass;
  return report;
}

std::string report_tsv(const json& report) {
  std::string out =
      "v1\tv2\tA1vv\tC2vv\tz_order\tj_orbit_count\tstab_u_dim\ttotal\n";
  if (!report.contains("parameters")) return out;
  auto cell = [](const json& row, const std::string& key) -> std::string {
    if (!row.contains(key) || row[key].is_null()) return "";
    const json& v = row[key];
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  for (const json& row : report["parameters"]) {
    json dim = row.contains("dim_report") ? row["dim_report"] : json();
    out += cell(row, "v1") + "\t" + cell(row, "v2") + "\t" + cell(row, "A1vv") + "\t" +
           cell(row, "C2vv") + "\t" + cell(row, "z_order") + "\t" +
           cell(row, "j_orbit_count") + "\t" + cell(dim, "stab_u_dim") + "\t" +
           cell(dim, "total") + "\n";
  }
  return out;
}

void write_report(const json& report, const std::string& base) {
  {
    std::ofstream out(base + ".json");
    if (!out) throw std::invalid_argument("cannot write " + base + ".json");
    out << report.dump(2) << "\n";
  }
  std::ofstream out(base + ".tsv");
  if (!out) throw std::invalid_argument("cannot write " + base + ".tsv");
  out << report_tsv(report);
}

}  // namespace dcosets

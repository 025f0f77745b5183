// Acceptance suite: one line per criterion, exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "dcosets/classify.hpp"
#include "dcosets/oracle.hpp"
#include "dcosets/ybe.hpp"

using namespace dcosets;

namespace {

int g_failed = 0;

void criterion(int idx, const std::string& name, const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%2d] %s  %-34s %s (%.2fs)\n", idx, ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

struct Groups {
  FinGroup G1, G2;
  WeylGroup W1, W2;
  Groups(const char* kind, int q)
      : G1(FinGroup::build(kind, q)),
        G2(FinGroup::build(kind, q)),
        W1(WeylGroup::generate(G1.root_system())),
        W2(WeylGroup::generate(G2.root_system())) {}

  PartialIsometry iso(std::initializer_list<std::pair<int, int>> pairs) const {
    std::array<int8_t, kMaxRank> m;
    m.fill(-1);
    for (auto [i, j] : pairs) m[i] = static_cast<int8_t>(j);
    return PartialIsometry(G1.root_system(), G2.root_system(), m);
  }
  PartialIsometry full() const {
    std::array<int8_t, kMaxRank> m;
    m.fill(-1);
    for (int i = 0; i < G1.root_system().rank(); ++i) m[i] = static_cast<int8_t>(i);
    return PartialIsometry(G1.root_system(), G2.root_system(), m);
  }
  PartialIsometry empty() const {
    return PartialIsometry::empty_map(G1.root_system(), G2.root_system());
  }
  OracleContext ctx(const PartialIsometry& a, const char* K, const PartialIsometry& c,
                    const char* L, int variant = 0) const {
    return make_context(G1, G2, W1, W2, a, K, c, L, variant);
  }
};

// The three census scenarios shared by criteria 1-5, 9 and 11.
struct Scenarios {
  Groups sl2f3{"SL2", 3};
  Groups sl2f2{"SL2", 2};
  Groups sl3f2{"SL3", 2};

  OracleContext diagonal(int variant = 0) const {
    return sl2f3.ctx(sl2f3.full(), "graph", sl2f3.full(), "graph", variant);
  }
  OracleContext bruhat3(int variant = 0) const {
    return sl2f3.ctx(sl2f3.empty(), "graph-zfull", sl2f3.empty(), "graph-zfull", variant);
  }
  OracleContext bruhat2(int variant = 0) const {
    return sl2f2.ctx(sl2f2.empty(), "graph-zfull", sl2f2.empty(), "graph-zfull", variant);
  }
  OracleContext mixed(int variant = 0) const {
    return sl3f2.ctx(sl3f2.iso({{0, 0}}), "graph", sl3f2.empty(), "graph", variant);
  }
};

bool all_pass(const CheckReport& rep, std::string& detail, const std::string& tag) {
  if (!rep.pass) {
    detail = tag + ": " + (rep.failures.empty() ? "failed" : rep.failures.front());
    return false;
  }
  return true;
}

}  // namespace

int main() {
  Scenarios S;

  criterion(1, "census: diagonal SL2(F3)", [&](std::string& detail) {
    CensusReport rep = verify_census(S.diagonal());
    int conj = conjugacy_class_count(S.sl2f3.G1);
    detail = "classes=" + std::to_string(rep.brute_classes) +
             " parametrized=" + std::to_string(rep.parametrized_total) +
             " conjugacy=" + std::to_string(conj);
    return rep.pass && rep.brute_classes == 7 && rep.parametrized_total == 7 && conj == 7;
  });

  criterion(2, "census: Bruhat SL2(F2), SL2(F3)", [&](std::string& detail) {
    for (const OracleContext& ctx : {S.bruhat2(), S.bruhat3()}) {
      CensusReport rep = verify_census(ctx);
      if (!rep.pass || rep.brute_classes != 4 || rep.rows.size() != 4) {
        detail = "count=" + std::to_string(rep.brute_classes);
        return false;
      }
      for (const ParamRow& row : rep.rows)
        if (row.z_order * row.j_orbit_count != 1) {
          detail = "a parameter contributes more than one class";
          return false;
        }
    }
    detail = "count=4=|W|^2, one class per parameter, q=2 and q=3";
    return true;
  });

  criterion(3, "census: mixed SL3(F2)", [&](std::string& detail) {
    // a = id on {a1}, c = empty; every supported quintuple. Over F2 the
    // Levi centres are trivial, so the three centre choices coincide;
    // distinct K are verified once each.
    std::set<std::pair<std::vector<int32_t>, std::vector<int32_t>>> seen;
    int runs = 0, classes = -1;
    for (const char* kspec : {"graph", "graph-zfull", "graph-zdiag"}) {
      for (const char* lspec : {"graph", "graph-zfull", "graph-zdiag"}) {
        OracleContext ctx = S.sl3f2.ctx(S.sl3f2.iso({{0, 0}}), kspec, S.sl3f2.empty(), lspec);
        if (!seen.insert({ctx.A.K.elems, ctx.C.K.elems}).second) continue;
        CensusReport rep = verify_census(ctx);
        ++runs;
        classes = rep.brute_classes;
        if (!rep.pass || rep.brute_classes != rep.parametrized_total) {
          detail = rep.failures.empty() ? "count mismatch" : rep.failures.front();
          return false;
        }
      }
    }
    detail = "classes=" + std::to_string(classes) + " over " + std::to_string(runs) +
             " distinct quintuple pairs";
    return true;
  });

  criterion(4, "stabilizers on scenarios 1-3", [&](std::string& detail) {
    int checks = 0;
    for (const OracleContext& ctx : {S.diagonal(), S.bruhat2(), S.bruhat3(), S.mixed()}) {
      CheckReport rep = verify_stabilizers(ctx);
      checks += rep.checks;
      if (!all_pass(rep, detail, "stabilizers")) return false;
    }
    detail = std::to_string(checks) + " normal-form points";
    return true;
  });

  criterion(5, "dimension formula consistency", [&](std::string& detail) {
    // Bruhat: every coset has dimension (l1 + dim B) + (l2 + dim B).
    int checked = 0;
    for (const Groups* g : {&S.sl2f2, &S.sl2f3}) {
      OracleContext ctx = g->ctx(g->empty(), "graph-zfull", g->empty(), "graph-zfull");
      PairSetup s = ctx.setup();
      int rank = g->G1.torus_rank();
      int dimB = group_dims(g->G1.root_system(), SimpleSubset(), rank).P;
      for (const CosetParameter& p : enumerate_parameters(s)) {
        DimensionReport r =
            dimension(s, p, rank, rank, bruhat_z_term(rank), bruhat_orbit_dim(rank));
        if (r.total != (r.l1 + dimB) + (r.l2 + dimB)) {
          detail = "Bruhat total mismatch";
          return false;
        }
        ++checked;
      }
    }
    // Diagonal SL2(F3): dim G_Delta + the conjugacy class dimension
    // (0 for central elements, 2 otherwise).
    {
      OracleContext ctx = S.diagonal();
      PairSetup s = ctx.setup();
      CosetParameter p = enumerate_parameters(s)[0];
      TwistedClasses tw = twisted_classes(ctx, p);
      SimpleSubset full = SimpleSubset::full(1);
      int dimG = group_dims(S.sl2f3.G1.root_system(), full, 1).M;
      const Subgroup& Z = S.sl2f3.G1.levi_center(full);
      for (int m1 : tw.orbit_reps) {
        int orbit_dim = Z.contains(m1) ? 0 : 2;
        DimensionReport r = dimension(s, p, 1, 1, full_graph_z_term(), orbit_dim);
        if (r.total != dimG + orbit_dim) {
          detail = "diagonal total mismatch at m1=" + std::to_string(m1);
          return false;
        }
        ++checked;
      }
    }
    detail = std::to_string(checked) + " closed-form totals";
    return true;
  });

  criterion(6, "parabolic intersection dimensions", [&](std::string& detail) {
    int checks = 0;
    for (const char* type : {"A1", "A2", "A1xA1", "B2", "A3"}) {
      RootSystem rs = RootSystem::build(type);
      WeylGroup W = WeylGroup::generate(rs);
      for (uint32_t ab = 0; ab < (1u << rs.rank()); ++ab) {
        for (uint32_t cb = 0; cb < (1u << rs.rank()); ++cb) {
          for (int w : W.min_reps(SimpleSubset(ab), SimpleSubset(cb))) {
            ++checks;
            if (!intersection_dims_check(W, SimpleSubset(ab), SimpleSubset(cb), w)) {
              detail = std::string(type) + " fails at w=" + W.word_string(w);
              return false;
            }
          }
        }
      }
    }
    detail = std::to_string(checks) + " triples over A1,A2,A1xA1,B2,A3";
    return true;
  });

  criterion(7, "parabolic factorization", [&](std::string& detail) {
    int checks = 0;
    for (const char* type : {"A1", "A1xA1", "A2", "B2", "G2", "A1xA2", "A3", "B3", "C3"}) {
      RootSystem rs = RootSystem::build(type);
      WeylGroup W = WeylGroup::generate(rs);
      for (uint32_t ab = 0; ab < (1u << rs.rank()); ++ab) {
        SimpleSubset A(ab);
        for (uint32_t db = 0; db < (1u << rs.rank()); ++db) {
          SimpleSubset D(db);
          if (!D.subset_of(A)) continue;
          for (uint32_t cb = 0; cb < (1u << rs.rank()); ++cb) {
            SimpleSubset C(cb);
            for (int v : W.min_reps(D, C)) {
              // throws unless the factorization exists uniquely
              auto f = W.parabolic_factorize(v, D, A, C);
              if (W.mult(f.u, f.w) != v ||
                  W.length(v) != W.length(f.u) + W.length(f.w)) {
                detail = std::string(type) + " bad factorization";
                return false;
              }
              ++checks;
            }
          }
        }
      }
    }
    detail = std::to_string(checks) + " factorizations, rank <= 3";
    return true;
  });

  criterion(8, "graph subgroup decompositions", [&](std::string& detail) {
    int checks = 0;
    for (auto [kind, q] : {std::pair<const char*, int>{"SL2", 2},
                           {"SL2", 3},
                           {"SL3", 2},
                           {"GL2", 2},
                           {"GL2", 3}}) {
      Groups g(kind, q);
      PairGroup gg(g.G1, g.G2);
      std::set<std::vector<int32_t>> seen;
      for (const PartialIsometry& a :
           enumerate_partial_isometries(g.G1.root_system(), g.G2.root_system())) {
        for (const char* spec : {"graph", "graph-zfull", "graph-zdiag", "graph-levi"}) {
          AdmissiblePair P;
          try {
            P = make_admissible(gg, a, spec);
          } catch (const std::invalid_argument&) {
            continue;  // centre choice undefined for this isometry
          }
          if (!seen.insert(P.K.elems).second) continue;
          CheckReport rep = verify_graph_decompositions(gg, P);
          checks += rep.checks;
          if (!rep.pass) {
            detail = std::string(kind) + "/F" + std::to_string(q) + " a=" + a.to_string() +
                     ": " + rep.failures.front();
            return false;
          }
        }
      }
    }
    detail = std::to_string(checks) + " (quintuple, D1) pairs over all 5 groups";
    return true;
  });

  criterion(9, "Yang-Baxter maps", [&](std::string& detail) {
    std::vector<OracleContext> ctxs;
    ctxs.push_back(S.diagonal());
    ctxs.push_back(S.bruhat2());
    ctxs.push_back(S.bruhat3());
    ctxs.push_back(S.mixed());
    // richer twists: two-sided SL3 data, a full-by-partial pair whose
    // sigma maps are nontrivial, and the unipotent Bruhat case
    ctxs.push_back(S.sl3f2.ctx(S.sl3f2.iso({{0, 0}}), "graph", S.sl3f2.iso({{1, 1}}),
                               "graph"));
    ctxs.push_back(S.sl3f2.ctx(S.sl3f2.full(), "graph", S.sl3f2.iso({{0, 0}}), "graph"));
    ctxs.push_back(S.sl2f3.ctx(S.sl2f3.empty(), "graph", S.sl2f3.empty(), "graph"));

    int instances = 0;
    std::vector<CocycleData> pool;
    for (const OracleContext& ctx : ctxs) {
      PairSetup s = ctx.setup();
      for (const CosetParameter& p : enumerate_parameters(s)) {
        TwistedClasses tw = twisted_classes(ctx, p);
        for (int m1 : ctx.G1->levi(p.stable.A1vv).elems) {
          for (int z : tw.z_reps) {
            CocycleData data = build_psi(ctx, p, m1, z);  // includes S == Stab_U
            if (data.n_size() > 512) {
              detail = "instance exceeds the N cap";
              return false;
            }
            YBPair maps = build_T(data);
            if (!verify_qybe(maps.T0).pass || !verify_qybe(maps.T).pass ||
                !verify_cocycle(data).pass) {
              detail = "failure at " + data.label;
              return false;
            }
            ++instances;
            pool.push_back(std::move(data));
          }
        }
      }
    }
    // negative control
    bool broke = false;
    for (const CocycleData& data : pool) {
      bool constant = true;
      for (int32_t v : data.psi)
        if (v != data.psi[0]) constant = false;
      if (constant) continue;
      for (int i = 0; i < data.n_size() && !broke; ++i)
        for (int j = i + 1; j < data.n_size() && !broke; ++j) {
          if (data.psi[i] == data.psi[j]) continue;
          CocycleData bad = corrupt_psi(data, i, j);
          if (!verify_cocycle(bad).pass || !verify_qybe(build_T(bad).T).pass) broke = true;
        }
      if (broke) break;
    }
    if (!broke) {
      detail = "corrupted-psi control did not fail";
      return false;
    }
    detail = std::to_string(instances) + " instances + corrupted-psi control";
    return true;
  });

  criterion(10, "flag variety orbit census", [&](std::string& detail) {
    int cells = 0;
    for (auto [kind, q] : {std::pair<const char*, int>{"SL2", 2}, {"SL2", 3}, {"SL3", 2}}) {
      Groups g(kind, q);
      PairGroup gg(g.G1, g.G2);
      std::set<std::vector<int32_t>> seen;
      int rank = g.G1.root_system().rank();
      for (const PartialIsometry& a :
           enumerate_partial_isometries(g.G1.root_system(), g.G2.root_system())) {
        for (const char* spec : {"graph", "graph-zfull", "graph-zdiag", "graph-levi"}) {
          AdmissiblePair P;
          try {
            P = make_admissible(gg, a, spec);
          } catch (const std::invalid_argument&) {
            continue;  // centre choice undefined for this isometry
          }
          if (!seen.insert(P.K.elems).second) continue;
          OracleContext ctx = g.ctx(a, spec, g.empty(), "graph-zfull");
          for (uint32_t b1 = 0; b1 < (1u << rank); ++b1) {
            for (uint32_t b2 = 0; b2 < (1u << rank); ++b2) {
              FlagReport rep = verify_flag_orbits(ctx, SimpleSubset(b1), SimpleSubset(b2));
              ++cells;
              if (!rep.pass) {
                detail = std::string(kind) + "/F" + std::to_string(q) +
                         " a=" + a.to_string() + ": " + rep.failures.front();
                return false;
              }
            }
          }
        }
      }
    }
    detail = std::to_string(cells) + " (R_A, C1, C2) cells";
    return true;
  });

  criterion(11, "representative independence", [&](std::string& detail) {
    auto counts = [](const CensusReport& r) {
      std::vector<std::pair<int, int>> out;
      for (const ParamRow& row : r.rows) out.push_back({row.z_order, row.j_orbit_count});
      return std::make_pair(r.brute_classes, out);
    };
    struct Case {
      OracleContext v0, v1;
      const char* name;
    };
    Case cases[] = {{S.diagonal(0), S.diagonal(1), "diagonal"},
                    {S.bruhat2(0), S.bruhat2(1), "bruhat2"},
                    {S.bruhat3(0), S.bruhat3(1), "bruhat3"},
                    {S.mixed(0), S.mixed(1), "mixed"}};
    for (Case& c : cases) {
      CensusReport r0 = verify_census(c.v0);
      CensusReport r1 = verify_census(c.v1);
      if (!r0.pass || !r1.pass || counts(r0) != counts(r1)) {
        detail = std::string(c.name) + " counts changed across sections";
        return false;
      }
    }
    detail = "counts identical across both sections (sections coincide over F2)";
    return true;
  });

  if (g_failed) std::printf("%d criterion(s) FAILED\n", g_failed);
  return g_failed ? 1 : 0;
}

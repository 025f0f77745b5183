#include "dcosets/oracle.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dcosets {

PairSet pair_make(const PairGroup& gg, std::vector<int32_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  PairSet s;
  s.mask.assign(gg.size(), false);
  for (int32_t c : members) s.mask[c] = true;
  for (int32_t a : members)
    for (int32_t b : members)
      if (!s.mask[gg.mul(a, b)]) throw std::logic_error("pair set not closed under product");
  s.elems = std::move(members);
  return s;
}

PairSet pair_box(const PairGroup& gg, const Subgroup& x, const Subgroup& y) {
  PairSet s;
  s.mask.assign(gg.size(), false);
  s.elems.reserve(static_cast<size_t>(x.order()) * y.order());
  for (int a : x.elems)
    for (int b : y.elems) {
      int32_t c = gg.code(a, b);
      s.elems.push_back(c);
      s.mask[c] = true;
    }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

PairSet pair_closure(const PairGroup& gg, const std::vector<int32_t>& gens) {
  PairSet s;
  s.mask.assign(gg.size(), false);
  std::queue<int32_t> todo;
  s.mask[gg.id()] = true;
  s.elems.push_back(gg.id());
  todo.push(gg.id());
  while (!todo.empty()) {
    int32_t g = todo.front();
    todo.pop();
    for (int32_t h : gens) {
      int32_t x = gg.mul(g, h);
      if (!s.mask[x]) {
        s.mask[x] = true;
        s.elems.push_back(x);
        todo.push(x);
      }
    }
  }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

PairSet pair_intersect(const PairGroup& gg, const PairSet& x, const PairSet& y) {
  PairSet s;
  s.mask.assign(gg.size(), false);
  for (int32_t c : x.elems)
    if (y.contains(c)) {
      s.elems.push_back(c);
      s.mask[c] = true;
    }
  return s;
}

PairSet pair_product(const PairGroup& gg, const PairSet& x, const PairSet& y) {
  std::vector<int32_t> out;
  out.reserve(static_cast<size_t>(x.order()) * y.order());
  for (int32_t a : x.elems)
    for (int32_t b : y.elems) out.push_back(gg.mul(a, b));
  return pair_make(gg, std::move(out));
}

PairSet pair_conj(const PairGroup& gg, int32_t g, const PairSet& x) {
  std::vector<int32_t> out;
  out.reserve(x.elems.size());
  for (int32_t c : x.elems) out.push_back(gg.conj(g, c));
  std::sort(out.begin(), out.end());
  PairSet s;
  s.mask.assign(gg.size(), false);
  for (int32_t c : out) s.mask[c] = true;
  s.elems = std::move(out);
  return s;
}

Subgroup pair_project1(const PairGroup& gg, const PairSet& x) {
  std::vector<int> out;
  for (int32_t c : x.elems) out.push_back(gg.first(c));
  return gg.g1().make_subgroup(std::move(out));
}

Subgroup pair_project2(const PairGroup& gg, const PairSet& x) {
  std::vector<int> out;
  for (int32_t c : x.elems) out.push_back(gg.second(c));
  return gg.g2().make_subgroup(std::move(out));
}

void validate_generalized_graph(const PairGroup& gg, const PartialIsometry& a,
                                const PairSet& K) {
  const FinGroup& G1 = gg.g1();
  const FinGroup& G2 = gg.g2();
  const RootSystem& rs1 = G1.root_system();
  // K must lie in M_{A1} x M_{A2}.
  const Subgroup& M1 = G1.levi(a.domain());
  const Subgroup& M2 = G2.levi(a.range());
  for (int32_t c : K.elems)
    if (!M1.contains(gg.first(c)) || !M2.contains(gg.second(c)))
      throw std::logic_error("graph subgroup leaves the Levi product");

  for (int r : rs1.sub_system(a.domain())) {
    int ar = a.apply_root(r);
    if (ar < 0) throw std::logic_error("isometry does not extend to the span");
    std::vector<int> u1 = G1.root_subgroup(r), u2 = G2.root_subgroup(ar);
    std::vector<int> image(G1.order(), -1);
    int hits = 0;
    for (int x : u1)
      for (int y : u2)
        if (K.contains(gg.code(x, y))) {
          if (image[x] != -1)
            throw std::logic_error("not a graph over root " + rs1.root_to_string(r));
          image[x] = y;
          ++hits;
        }
    if (hits != static_cast<int>(u1.size()))
      throw std::logic_error("not total over root " + rs1.root_to_string(r));
    std::vector<bool> seen(G2.order(), false);
    for (int x : u1) {
      if (seen[image[x]])
        throw std::logic_error("not injective over root " + rs1.root_to_string(r));
      seen[image[x]] = true;
    }
    for (int x : u1)
      for (int y : u1)
        if (image[G1.mul(x, y)] != G2.mul(image[x], image[y]))
          throw std::logic_error("not a homomorphism over root " + rs1.root_to_string(r));
  }
}

namespace {

// Minimal element of the right coset g X.
int coset_min(const FinGroup& G, int g, const Subgroup& X) {
  int best = G.order();
  for (int x : X.elems) best = std::min(best, G.mul(g, x));
  return best;
}

}  // namespace

Quintuple quintuple_of(const PairGroup& gg, const PairSet& K) {
  const FinGroup& G1 = gg.g1();
  const FinGroup& G2 = gg.g2();
  Quintuple qt;
  qt.K1 = pair_project1(gg, K);
  qt.K2 = pair_project2(gg, K);
  std::vector<int> x1, x2;
  for (int32_t c : K.elems) {
    if (gg.second(c) == G2.id()) x1.push_back(gg.first(c));
    if (gg.first(c) == G1.id()) x2.push_back(gg.second(c));
  }
  qt.X1 = G1.make_subgroup(std::move(x1));
  qt.X2 = G2.make_subgroup(std::move(x2));
  for (int32_t c : K.elems) {
    int r1 = coset_min(G1, gg.first(c), qt.X1);
    int r2 = coset_min(G2, gg.second(c), qt.X2);
    auto it = qt.theta.find(r1);
    if (it == qt.theta.end())
      qt.theta[r1] = r2;
    else if (it->second != r2)
      throw std::logic_error("graph does not induce a map of coset spaces");
  }
  return qt;
}

PairSet subgroup_from_quintuple(const PairGroup& gg, const Quintuple& qt) {
  const FinGroup& G1 = gg.g1();
  const FinGroup& G2 = gg.g2();
  std::vector<int32_t> out;
  for (int k1 : qt.K1.elems) {
    int target = qt.theta.at(coset_min(G1, k1, qt.X1));
    for (int k2 : qt.K2.elems)
      if (coset_min(G2, k2, qt.X2) == target) out.push_back(gg.code(k1, k2));
  }
  return pair_make(gg, std::move(out));
}

PairSet compose_correspondence(const PairGroup& g12, const PairGroup& g23,
                               const PairGroup& g13, const PairSet& K,
                               const PairSet& L) {
  std::vector<std::vector<int>> by_first(g23.g1().order());
  for (int32_t c : L.elems) by_first[g23.first(c)].push_back(g23.second(c));
  std::vector<int32_t> out;
  for (int32_t c : K.elems)
    for (int m3 : by_first[g12.second(c)]) out.push_back(g13.code(g12.first(c), m3));
  return pair_make(g13, std::move(out));
}

std::vector<int32_t> levi_isomorphism(const FinGroup& G1, const FinGroup& G2,
                                      const PartialIsometry& a) {
  const Subgroup& M1 = G1.levi_derived(a.domain());
  const Subgroup& M2 = G2.levi_derived(a.range());
  std::vector<int32_t> im(G1.order(), -1);
  im[G1.id()] = G2.id();

  std::vector<std::pair<int, int>> gens;
  const RootSystem& rs1 = G1.root_system();
  const RootSystem& rs2 = G2.root_system();
  for (int i : a.domain().indices()) {
    int r1 = rs1.simple_root(i), r2 = rs2.simple_root(a(i));
    for (int t = 1; t < G1.q(); ++t) {
      gens.push_back({G1.one_param(r1, t), G2.one_param(r2, t)});
      gens.push_back({G1.one_param(rs1.negate(r1), t), G2.one_param(rs2.negate(r2), t)});
    }
  }
  std::queue<int> todo;
  todo.push(G1.id());
  while (!todo.empty()) {
    int g = todo.front();
    todo.pop();
    for (auto [h, h2] : gens) {
      int x = G1.mul(g, h);
      int y = G2.mul(im[g], h2);
      if (im[x] == -1) {
        im[x] = y;
        todo.push(x);
      } else if (im[x] != y) {
        throw std::logic_error("generator map does not extend to the derived Levi");
      }
    }
  }
  // Full isomorphism verification.
  std::vector<bool> hit(G2.order(), false);
  int count = 0;
  for (int g : M1.elems) {
    if (im[g] == -1) throw std::logic_error("derived Levi not generated");
    if (!M2.contains(im[g]) || hit[im[g]]) throw std::logic_error("image not bijective");
    hit[im[g]] = true;
    ++count;
  }
  if (count != M2.order()) throw std::logic_error("derived Levi orders differ");
  for (int g : M1.elems)
    for (int h : M1.elems)
      if (im[G1.mul(g, h)] != G2.mul(im[g], im[h]))
        throw std::logic_error("lift is not a homomorphism");
  return im;
}

AdmissiblePair make_admissible(const PairGroup& gg, const PartialIsometry& a,
                               std::string_view k_spec) {
  const FinGroup& G1 = gg.g1();
  const FinGroup& G2 = gg.g2();
  std::string spec(k_spec);
  if (spec == "diag") spec = "graph";
  if (spec == "HxH") spec = "graph-zfull";

  AdmissiblePair P;
  P.iso = a;
  P.k_spec = spec;

  std::vector<int32_t> im = levi_isomorphism(G1, G2, a);
  const Subgroup& M1d = G1.levi_derived(a.domain());
  const Subgroup& Z1 = G1.levi_center(a.domain());
  const Subgroup& Z2 = G2.levi_center(a.range());

  std::vector<int32_t> members;
  if (spec == "graph-levi") {
    // Graph of the identity isomorphism of the whole Levi factor. Unlike
    // the centre extensions of the derived-Levi graph this reaches
    // subgroups with eta_i(K) = M_{A_i} even when M exceeds Z M'.
    if (G1.name() != G2.name())
      throw std::invalid_argument("graph-levi needs equal groups");
    for (int i : a.domain().indices())
      if (a(i) != i) throw std::invalid_argument("graph-levi needs an identity isometry");
    for (int m : G1.levi(a.domain()).elems) members.push_back(gg.code(m, m));
  } else {
    std::vector<std::pair<int, int>> X;
    if (spec == "graph") {
      X.push_back({G1.id(), G2.id()});
    } else if (spec == "graph-zfull") {
      for (int z1 : Z1.elems)
        for (int z2 : Z2.elems) X.push_back({z1, z2});
    } else if (spec == "graph-zdiag") {
      if (Z1.elems != Z2.elems)
        throw std::invalid_argument("graph-zdiag needs equal Levi centres");
      for (int z : Z1.elems) X.push_back({z, z});
    } else {
      throw std::invalid_argument("unknown quintuple spec: " + spec);
    }
    for (auto [z1, z2] : X)
      for (int m : M1d.elems) members.push_back(gg.code(G1.mul(z1, m), G2.mul(z2, im[m])));
  }
  P.K = pair_make(gg, std::move(members));
  validate_generalized_graph(gg, a, P.K);

  // The unipotent slice of K is the graph of theta: U cap M_{A1} -> U cap M_{A2}.
  const Subgroup& Uin1 = G1.levi_unipotent(a.domain());
  const Subgroup& Uin2 = G2.levi_unipotent(a.range());
  P.theta_u.assign(G1.order(), -1);
  P.theta_u_inv.assign(G2.order(), -1);
  for (int u1 : Uin1.elems) {
    int found = -1;
    for (int u2 : Uin2.elems)
      if (P.K.contains(gg.code(u1, u2))) {
        if (found != -1) throw std::logic_error("unipotent slice of K is not a graph");
        found = u2;
      }
    if (found == -1) throw std::logic_error("unipotent slice of K is not total");
    P.theta_u[u1] = found;
    P.theta_u_inv[found] = u1;
  }

  P.R = pair_product(gg, P.K,
                     pair_box(gg, G1.radical(a.domain()), G2.radical(a.range())));
  if (static_cast<int64_t>(P.R.order()) !=
      static_cast<int64_t>(P.K.order()) * G1.radical(a.domain()).order() *
          G2.radical(a.range()).order())
    throw std::logic_error("R = K(U x U) factorization not unique");
  P.Rminus = pair_product(
      gg, P.K, pair_box(gg, G1.radical(a.domain()), G2.radical_minus(a.range())));
  if (P.Rminus.order() != P.R.order())
    throw std::logic_error("R^- = K(U x U^-) factorization not unique");
  return P;
}

OracleContext make_context(const FinGroup& G1, const FinGroup& G2, const WeylGroup& W1,
                           const WeylGroup& W2, const PartialIsometry& a,
                           std::string_view k_spec, const PartialIsometry& c,
                           std::string_view l_spec, int section_variant) {
  PairGroup gg(G1, G2);
  OracleContext ctx{&G1, &G2, &W1, &W2, gg, make_admissible(gg, a, k_spec),
                    make_admissible(gg, c, l_spec), {}, {}, section_variant};
  ctx.dot1 = G1.rep_section(W1, section_variant);
  ctx.dot2 = G2.rep_section(W2, section_variant);
  return ctx;
}

Partition double_cosets(const PairGroup& gg, const PairSet& RA, const PairSet& RC) {
  Partition part;
  part.cls.assign(gg.size(), -1);
  std::vector<int32_t> stack;
  for (int32_t seed = 0; seed < gg.size(); ++seed) {
    if (part.cls[seed] != -1) continue;
    int id = part.count++;
    part.cls[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      int32_t g = stack.back();
      stack.pop_back();
      for (int32_t r : RA.elems) {
        int32_t x = gg.mul(r, g);
        if (part.cls[x] == -1) {
          part.cls[x] = id;
          stack.push_back(x);
        }
      }
      for (int32_t r : RC.elems) {
        int32_t x = gg.mul(g, r);
        if (part.cls[x] == -1) {
          part.cls[x] = id;
          stack.push_back(x);
        }
      }
    }
  }
  return part;
}

int conjugacy_class_count(const FinGroup& G) {
  std::vector<bool> seen(G.order(), false);
  int count = 0;
  for (int g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    ++count;
    for (int x = 0; x < G.order(); ++x) seen[G.conj(x, g)] = true;
  }
  return count;
}

TwistedClasses twisted_classes(const OracleContext& ctx, const CosetParameter& p) {
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  TwistedClasses tw;

  const Subgroup& Mvv1 = G1.levi(p.stable.A1vv);
  const Subgroup& Mvv2 = G2.levi(p.stable.C2vv);
  PairSet box = pair_box(gg, Mvv1, Mvv2);
  int32_t cv2 = gg.code(G1.id(), G2.inv(ctx.dot2[p.v2]));
  int32_t cv1 = gg.code(ctx.dot1[p.v1], G2.id());
  tw.Kvv = pair_intersect(gg, box, pair_conj(gg, cv2, ctx.A.K));
  tw.Lvv = pair_intersect(gg, box, pair_conj(gg, cv1, ctx.C.K));

  // J = sigma(Lvv) o Kvv as a correspondence on M_{A1vv}.
  const int n1 = G1.order();
  std::vector<std::vector<int>> l_by_second(G2.order());
  for (int32_t c : tw.Lvv.elems) l_by_second[gg.second(c)].push_back(gg.first(c));
  std::vector<bool> jmask(static_cast<size_t>(n1) * n1, false);
  for (int32_t c : tw.Kvv.elems)
    for (int mp : l_by_second[gg.second(c)]) {
      size_t code = static_cast<size_t>(gg.first(c)) * n1 + mp;
      if (!jmask[code]) {
        jmask[code] = true;
        tw.Jvv.push_back(static_cast<int32_t>(code));
      }
    }
  std::sort(tw.Jvv.begin(), tw.Jvv.end());

  // J-orbit partition of M_{A1vv} under (m, m') . x = m x m'^-1.
  std::vector<int> orbit_of(n1, -1);
  tw.orbit_id.assign(Mvv1.order(), -1);
  for (int idx = 0; idx < Mvv1.order(); ++idx) {
    int seed = Mvv1.elems[idx];
    if (orbit_of[seed] != -1) continue;
    int id = static_cast<int>(tw.orbit_reps.size());
    tw.orbit_reps.push_back(seed);
    std::vector<int> stack{seed};
    orbit_of[seed] = id;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int32_t jc : tw.Jvv) {
        int m = jc / n1, mp = jc % n1;
        int y = G1.mul(G1.mul(m, x), G1.inv(mp));
        if (orbit_of[y] == -1) {
          orbit_of[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  for (int idx = 0; idx < Mvv1.order(); ++idx) tw.orbit_id[idx] = orbit_of[Mvv1.elems[idx]];

  // Z(v1,v2) = Z_{C2vv} / (Z cap v2^-1(eta2 K)) (Z cap eta2 L).
  const Subgroup& Zc = G2.levi_center(p.stable.C2vv);
  Subgroup etaK = pair_project2(gg, ctx.A.K);
  Subgroup etaL = pair_project2(gg, ctx.C.K);
  std::vector<int> zk, zl;
  for (int z : Zc.elems) {
    if (etaK.contains(G2.conj(ctx.dot2[p.v2], z))) zk.push_back(z);
    if (etaL.contains(z)) zl.push_back(z);
  }
  Subgroup denom = G2.product_set(G2.make_subgroup(std::move(zk)),
                                  G2.make_subgroup(std::move(zl)));
  std::vector<bool> seen(G2.order(), false);
  for (int z : Zc.elems) {
    int rep = coset_min(G2, z, denom);
    if (!seen[rep]) {
      seen[rep] = true;
      tw.z_reps.push_back(rep);
    }
  }
  std::sort(tw.z_reps.begin(), tw.z_reps.end());
  if (tw.z_order() * denom.order() != Zc.order())
    throw std::logic_error("centre quotient order mismatch");
  return tw;
}

CensusReport verify_census(const OracleContext& ctx) {
  CensusReport rep;
  Partition part = double_cosets(ctx.GG, ctx.A.R, ctx.C.R);
  rep.brute_classes = part.count;

  PairSetup s = ctx.setup();
  std::vector<CosetParameter> params = enumerate_parameters(s);
  std::vector<int> hit(part.count, -1);
  int label = 0;
  for (const CosetParameter& p : params) {
    TwistedClasses tw = twisted_classes(ctx, p);
    rep.rows.push_back({p, tw.z_order(), tw.j_orbit_count()});
    rep.parametrized_total += tw.z_order() * tw.j_orbit_count();
    for (int m1 : tw.orbit_reps) {
      for (int z : tw.z_reps) {
        int g1 = ctx.G1->mul(m1, ctx.dot1[p.v1]);
        int g2 = ctx.G2->mul(ctx.dot2[p.v2], z);
        int cls = part.cls[ctx.GG.code(g1, g2)];
        if (hit[cls] != -1)
          rep.failures.push_back("normal-form points " + std::to_string(hit[cls]) +
                                 " and " + std::to_string(label) +
                                 " land in the same class " + std::to_string(cls));
        hit[cls] = label;
        ++label;
      }
    }
  }
  int covered = 0;
  for (int c = 0; c < part.count; ++c)
    if (hit[c] != -1) ++covered;
  if (covered != part.count)
    rep.failures.push_back(std::to_string(part.count - covered) +
                           " classes contain no normal-form point");
  if (rep.parametrized_total != rep.brute_classes)
    rep.failures.push_back("parametrized " + std::to_string(rep.parametrized_total) +
                           " != brute " + std::to_string(rep.brute_classes));
  rep.pass = rep.failures.empty();
  return rep;
}

StabilizerData stabilizer(const OracleContext& ctx, const CosetParameter& p, int m1,
                          int s2) {
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  StabilizerData d;
  d.m1 = m1;
  d.s2 = s2;
  d.g1 = G1.mul(m1, ctx.dot1[p.v1]);
  d.g2 = G2.mul(ctx.dot2[p.v2], s2);

  std::vector<int> conj2(G2.order()), conj1(G1.order());
  for (int x = 0; x < G2.order(); ++x) conj2[x] = G2.conj(d.g2, x);
  int g1i = G1.inv(d.g1);
  for (int x = 0; x < G1.order(); ++x) conj1[x] = G1.mul(G1.mul(g1i, x), d.g1);

  std::vector<int32_t> members;
  for (int x1 = 0; x1 < G1.order(); ++x1)
    for (int x2 = 0; x2 < G2.order(); ++x2)
      if (ctx.A.R.contains(gg.code(x1, conj2[x2])) &&
          ctx.C.R.contains(gg.code(conj1[x1], x2)))
        members.push_back(gg.code(x1, x2));
  d.stab = pair_make(gg, std::move(members));

  const Subgroup& Mvv1 = G1.levi(p.stable.A1vv);
  const Subgroup& Mvv2 = G2.levi(p.stable.C2vv);
  d.u_box1 = G1.intersect(G1.radical(p.stable.A1vv),
                          G1.conj_subgroup(ctx.dot1[p.v1], G1.radical(SimpleSubset())));
  d.u_box2 = G2.intersect(
      G2.radical(p.stable.C2vv),
      G2.conj_subgroup(G2.inv(ctx.dot2[p.v2]), G2.radical(SimpleSubset())));

  std::vector<int32_t> sm, su;
  for (int32_t c : d.stab.elems) {
    if (Mvv1.contains(gg.first(c)) && Mvv2.contains(gg.second(c))) sm.push_back(c);
    if (d.u_box1.contains(gg.first(c)) && d.u_box2.contains(gg.second(c)))
      su.push_back(c);
  }
  d.stab_m = pair_make(gg, std::move(sm));
  d.stab_u = pair_make(gg, std::move(su));
  return d;
}

namespace {

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

CheckReport verify_stabilizers(const OracleContext& ctx) {
  CheckReport rep;
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  PairSetup s = ctx.setup();
  const RootSystem& rs1 = G1.root_system();
  const RootSystem& rs2 = G2.root_system();

  for (const CosetParameter& p : enumerate_parameters(s)) {
    TwistedClasses tw = twisted_classes(ctx, p);
    const Subgroup& Mvv1 = G1.levi(p.stable.A1vv);
    int d1 = rs1.num_positive() - rs1.num_pos_in(s.C1()) - ctx.W1->length(p.v1);
    int d2 = rs2.num_positive() - rs2.num_pos_in(s.A2()) - ctx.W2->length(p.v2);

    // kernel term of the central extension
    std::vector<int> kerl, kerk;
    for (int32_t c : ctx.C.K.elems)
      if (gg.first(c) == G1.id()) kerl.push_back(gg.second(c));
    for (int32_t c : ctx.A.K.elems)
      if (gg.first(c) == G1.id())
        kerk.push_back(G2.conj(G2.inv(ctx.dot2[p.v2]), gg.second(c)));
    Subgroup ker =
        G2.intersect(G2.make_subgroup(std::move(kerl)), G2.make_subgroup(std::move(kerk)));

    for (int m1 : Mvv1.elems) {
      for (int z : tw.z_reps) {
        StabilizerData d = stabilizer(ctx, p, m1, z);
        std::string at = "q=(" + ctx.W1->word_string(p.v1) + "," +
                         ctx.W2->word_string(p.v2) + ",m1=" + std::to_string(m1) +
                         ",s=" + std::to_string(z) + ")";
        ++rep.checks;

        if (static_cast<int64_t>(d.stab_m.order()) * d.stab_u.order() != d.stab.order())
          rep.fail(at + ": |Stab| != |Stab_M| |Stab_U|");
        if (!(pair_product(gg, d.stab_m, d.stab_u) == d.stab))
          rep.fail(at + ": Stab != Stab_M Stab_U");
        PairSet meet = pair_intersect(gg, d.stab_m, d.stab_u);
        if (meet.order() != 1) rep.fail(at + ": Stab_M cap Stab_U nontrivial");

        // Levi part against both closed forms.
        const Subgroup& Mvv2 = G2.levi(p.stable.C2vv);
        PairSet box = pair_box(gg, Mvv1, Mvv2);
        PairSet mb = pair_intersect(
            gg, box,
            pair_conj(gg, gg.code(G1.id(), G2.inv(ctx.dot2[p.v2])), ctx.A.K));
        mb = pair_intersect(gg, mb,
                            pair_conj(gg, gg.code(d.g1, G2.id()), ctx.C.K));
        if (!(mb == d.stab_m)) rep.fail(at + ": Stab_M formula mismatch");
        PairSet ma = pair_intersect(
            gg, tw.Kvv, pair_conj(gg, gg.code(m1, G2.id()), tw.Lvv));
        if (!(ma == d.stab_m)) rep.fail(at + ": Stab_M != Kvv cap Ad_m1 Lvv");

        if (d.stab_u.order() != ipow(G1.q(), d1) * ipow(G2.q(), d2))
          rep.fail(at + ": |Stab_U| != q^dim");

        int jm = 0;
        for (int32_t jc : tw.Jvv) {
          int m = jc / G1.order(), mp = jc % G1.order();
          if (G1.mul(G1.mul(m, m1), G1.inv(mp)) == m1) ++jm;
        }
        if (static_cast<int64_t>(ker.order()) * jm != d.stab_m.order())
          rep.fail(at + ": |Stab_M| != |ker| |J_m1|");
      }
    }
  }
  return rep;
}

CheckReport verify_levi_reduction(const OracleContext& ctx) {
  CheckReport rep;
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  PairSetup s = ctx.setup();

  Partition part = double_cosets(ctx.GG, ctx.A.R, ctx.C.R);
  const Subgroup& MA1 = G1.levi(s.A1());
  const Subgroup& MC2 = G2.levi(s.C2());

  std::vector<bool> class_seen(part.count, false);
  int strata_total = 0;

  for (int w1 : ctx.W1->min_reps(s.A1(), s.C1())) {
    for (int w2 : ctx.W2->min_reps(s.A2(), s.C2())) {
      ReductionData rd = reduction_data(s, w1, w2);
      std::string at = "(w1=" + ctx.W1->word_string(w1) +
                       ", w2=" + ctx.W2->word_string(w2) + ")";
      ++rep.checks;

      int32_t cw2 = gg.code(G1.id(), G2.inv(ctx.dot2[w2]));
      int32_t cw1 = gg.code(ctx.dot1[w1], G2.id());
      PairSet Knew = pair_intersect(
          gg, pair_box(gg, G1.levi(rd.Anew1), G2.levi(rd.Anew2)),
          pair_conj(gg, cw2, ctx.A.K));
      PairSet Lnew = pair_intersect(
          gg, pair_box(gg, G1.levi(rd.Cnew1), G2.levi(rd.Cnew2)),
          pair_conj(gg, cw1, ctx.C.K));
      // The reduced pairs must again be admissible (graph condition).
      try {
        validate_generalized_graph(gg, rd.w2inv_a, Knew);
        validate_generalized_graph(gg, rd.c_w1inv, Lnew);
      } catch (const std::exception& e) {
        rep.fail(at + ": reduced pair not admissible: " + e.what());
        continue;
      }
      Subgroup ua1 = G1.intersect(G1.radical(rd.Anew1), MA1);
      Subgroup ua2 = G2.intersect(G2.radical(rd.Anew2), MC2);
      Subgroup uc1 = G1.intersect(G1.radical(rd.Cnew1), MA1);
      Subgroup uc2 = G2.intersect(G2.radical(rd.Cnew2), MC2);
      PairSet RAnew = pair_product(gg, Knew, pair_box(gg, ua1, ua2));
      PairSet RCnew = pair_product(gg, Lnew, pair_box(gg, uc1, uc2));

      // Levi-level double cosets inside M_{A1} x M_{C2}.
      std::vector<int32_t> levi_cls(gg.size(), -1);
      int levi_count = 0;
      for (int ma : MA1.elems) {
        for (int mc : MC2.elems) {
          int32_t seed = gg.code(ma, mc);
          if (levi_cls[seed] != -1) continue;
          int id = levi_count++;
          std::vector<int32_t> stack{seed};
          levi_cls[seed] = id;
          while (!stack.empty()) {
            int32_t g = stack.back();
            stack.pop_back();
            for (int32_t r : RAnew.elems) {
              int32_t x = gg.mul(r, g);
              if (levi_cls[x] == -1) {
                levi_cls[x] = id;
                stack.push_back(x);
              }
            }
            for (int32_t r : RCnew.elems) {
              int32_t x = gg.mul(g, r);
              if (levi_cls[x] == -1) {
                levi_cls[x] = id;
                stack.push_back(x);
              }
            }
          }
        }
      }

      // Each Levi class must meet exactly one big class through
      // (m w1, w2 m'), bijectively within this stratum.
      std::vector<int> levi_to_big(levi_count, -1);
      std::vector<bool> stratum(part.count, false);
      bool ok = true;
      for (int ma : MA1.elems) {
        for (int mc : MC2.elems) {
          int lc = levi_cls[gg.code(ma, mc)];
          int big = part.cls[gg.code(G1.mul(ma, ctx.dot1[w1]),
                                     G2.mul(ctx.dot2[w2], mc))];
          if (levi_to_big[lc] == -1)
            levi_to_big[lc] = big;
          else if (levi_to_big[lc] != big) {
            rep.fail(at + ": Levi class split across big classes");
            ok = false;
          }
          stratum[big] = true;
        }
      }
      std::vector<bool> used(part.count, false);
      int distinct = 0, stratum_size = 0;
      for (int lc = 0; lc < levi_count; ++lc) {
        if (!used[levi_to_big[lc]]) {
          used[levi_to_big[lc]] = true;
          ++distinct;
        }
      }
      for (int c = 0; c < part.count; ++c)
        if (stratum[c]) ++stratum_size;
      if (distinct != levi_count) {
        rep.fail(at + ": distinct Levi classes merged in G1 x G2");
        ok = false;
      }
      if (stratum_size != levi_count) {
        rep.fail(at + ": stratum has " + std::to_string(stratum_size) +
                 " classes, Levi level has " + std::to_string(levi_count));
        ok = false;
      }
      if (ok) {
        for (int c = 0; c < part.count; ++c) {
          if (!stratum[c]) continue;
          if (class_seen[c]) rep.fail(at + ": strata overlap on class " + std::to_string(c));
          class_seen[c] = true;
        }
        strata_total += stratum_size;
      }
    }
  }
  if (strata_total != part.count)
    rep.fail("strata cover " + std::to_string(strata_total) + " of " +
             std::to_string(part.count) + " classes");
  return rep;
}

CheckReport verify_graph_decompositions(const PairGroup& gg, const AdmissiblePair& A) {
  CheckReport rep;
  const FinGroup& G1 = gg.g1();
  const FinGroup& G2 = gg.g2();
  SimpleSubset A1 = A.iso.domain(), A2 = A.iso.range();
  const Subgroup& MA1 = G1.levi(A1);
  const Subgroup& MA2 = G2.levi(A2);

  std::vector<int> idxs = A1.indices();
  for (uint32_t bits = 0;; ++bits) {
    SimpleSubset D1;
    for (size_t k = 0; k < idxs.size(); ++k)
      if (bits >> k & 1) D1.add(idxs[k]);
    SimpleSubset D2;
    for (int i : D1.indices()) D2.add(A.iso(i));
    std::string at = "D1=" + D1.to_string();
    ++rep.checks;

    // 1) K(M_{D1}) in M_{a(D1)} and conversely; the slice is again a graph.
    const Subgroup& MD1 = G1.levi(D1);
    const Subgroup& MD2 = G2.levi(D2);
    for (int32_t c : A.K.elems) {
      if (MD1.contains(gg.first(c)) && !MD2.contains(gg.second(c)))
        rep.fail(at + ": K(M_D1) leaves M_a(D1)");
      if (MD2.contains(gg.second(c)) && !MD1.contains(gg.first(c)))
        rep.fail(at + ": K(M_a(D1)) leaves M_D1");
    }
    PairSet slice = pair_intersect(gg, pair_box(gg, MD1, MD2), A.K);
    try {
      validate_generalized_graph(gg, A.iso.restrict(D1), slice);
    } catch (const std::exception& e) {
      rep.fail(at + ": Levi slice not a graph: " + e.what());
    }

    // 2) the unipotent slice is the graph of an isomorphism.
    Subgroup u1 = G1.intersect(G1.radical(D1), MA1);
    Subgroup u2 = G2.intersect(G2.radical(D2), MA2);
    PairSet uslice = pair_intersect(gg, pair_box(gg, u1, u2), A.K);
    if (uslice.order() != u1.order() || u1.order() != u2.order())
      rep.fail(at + ": unipotent slice size mismatch");
    {
      std::vector<int> im(G1.order(), -1);
      bool graph = true;
      for (int32_t c : uslice.elems) {
        if (im[gg.first(c)] != -1) graph = false;
        im[gg.first(c)] = gg.second(c);
      }
      for (int x : u1.elems)
        for (int y : u1.elems)
          if (graph && im[G1.mul(x, y)] != G2.mul(im[x], im[y])) graph = false;
      if (!graph) rep.fail(at + ": unipotent slice not an isomorphism graph");
    }

    // 3) the parabolic slices of K and of R.
    const Subgroup& PD1 = G1.parabolic(D1);
    const Subgroup& PD2 = G2.parabolic(D2);
    const Subgroup& PA1 = G1.parabolic(A1);
    const Subgroup& PA2 = G2.parabolic(A2);

    PairSet k1 = pair_intersect(gg, pair_box(gg, PD1, MA2), A.K);
    PairSet k2 = pair_intersect(gg, pair_box(gg, MA1, PD2), A.K);
    PairSet k3 = pair_intersect(gg, pair_box(gg, PD1, PD2), A.K);
    if (!(k1 == k3) || !(k2 == k3)) rep.fail(at + ": parabolic slices of K differ");
    if (!(k3 == pair_product(gg, slice, uslice)))
      rep.fail(at + ": K slice does not factor as Levi x unipotent");

    PairSet r1 = pair_intersect(gg, pair_box(gg, PD1, PA2), A.R);
    PairSet r2 = pair_intersect(gg, pair_box(gg, PA1, PD2), A.R);
    PairSet r3 = pair_intersect(gg, pair_box(gg, PD1, PD2), A.R);
    if (!(r1 == r3) || !(r2 == r3)) rep.fail(at + ": parabolic slices of R differ");
    PairSet mr = pair_intersect(gg, pair_box(gg, MD1, MD2), A.R);
    PairSet ur = pair_intersect(gg, pair_box(gg, G1.radical(D1), G2.radical(D2)), A.R);
    if (!(r3 == pair_product(gg, mr, ur)))
      rep.fail(at + ": R slice does not factor as Levi x unipotent");
    if (!(r3 == pair_product(gg, k3,
                             pair_box(gg, G1.radical(A1), G2.radical(A2)))))
      rep.fail(at + ": R slice does not factor through the K slice");

    if (bits + 1 == (1u << idxs.size())) break;
  }
  return rep;
}

FlagReport verify_flag_orbits(const OracleContext& ctx, SimpleSubset C1, SimpleSubset C2) {
  FlagReport rep;
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  const Subgroup& P1 = G1.parabolic(C1);
  const Subgroup& P2 = G2.parabolic(C2);

  // Canonical representative of each coset g P.
  auto coset_table = [](const FinGroup& G, const Subgroup& P) {
    std::vector<int32_t> rep(G.order(), -1);
    for (int g = 0; g < G.order(); ++g) {
      if (rep[g] != -1) continue;
      int best = g;
      std::vector<int> coset;
      for (int p : P.elems) {
        int x = G.mul(g, p);
        coset.push_back(x);
        best = std::min(best, x);
      }
      for (int x : coset) rep[x] = best;
    }
    return rep;
  };
  std::vector<int32_t> c1 = coset_table(G1, P1), c2 = coset_table(G2, P2);

  std::vector<int32_t> orbit(gg.size(), -1);
  int orbits = 0;
  for (int a = 0; a < G1.order(); ++a) {
    if (c1[a] != a) continue;
    for (int b = 0; b < G2.order(); ++b) {
      if (c2[b] != b) continue;
      int32_t seed = gg.code(a, b);
      if (orbit[seed] != -1) continue;
      int id = orbits++;
      std::vector<int32_t> stack{seed};
      orbit[seed] = id;
      while (!stack.empty()) {
        int32_t st = stack.back();
        stack.pop_back();
        for (int32_t r : ctx.A.R.elems) {
          int32_t nx = gg.code(c1[G1.mul(gg.first(r), gg.first(st))],
                               c2[G2.mul(gg.second(r), gg.second(st))]);
          if (orbit[nx] == -1) {
            orbit[nx] = id;
            stack.push_back(nx);
          }
        }
      }
    }
  }
  rep.orbits = orbits;

  // Parametrization count and per-orbit uniqueness of the representative
  // points (v1dot, v2dot).
  std::vector<int> points(orbits, 0);
  rep.expected = 0;
  for (int v1 : ctx.W1->min_reps(ctx.A.iso.domain(), C1)) {
    SimpleSubset D;
    for (int i : ctx.W1->cap_w(ctx.A.iso.domain(), v1, C1).indices()) D.add(ctx.A.iso(i));
    for (int v2 : ctx.W2->min_reps(D, C2)) {
      ++rep.expected;
      int32_t pt = gg.code(c1[ctx.dot1[v1]], c2[ctx.dot2[v2]]);
      ++points[orbit[pt]];
    }
  }
  if (rep.expected != rep.orbits)
    rep.failures.push_back("orbit count " + std::to_string(rep.orbits) +
                           " != parametrization " + std::to_string(rep.expected));
  for (int i = 0; i < orbits; ++i)
    if (points[i] != 1)
      rep.failures.push_back("orbit " + std::to_string(i) + " holds " +
                             std::to_string(points[i]) + " representative points");
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace dcosets

#include "dcosets/ybe.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dcosets {

int CocycleData::pos_of(int32_t code) const {
  auto it = std::lower_bound(N.begin(), N.end(), code);
  if (it == N.end() || *it != code) return -1;
  return static_cast<int>(it - N.begin());
}

int32_t CocycleData::psi_of(int32_t code) const {
  int p = pos_of(code);
  if (p < 0) throw std::invalid_argument("element outside N");
  return psi[p];
}

CocycleData build_psi(const OracleContext& ctx, const CosetParameter& p, int m1, int s2) {
  const FinGroup& G1 = *ctx.G1;
  const FinGroup& G2 = *ctx.G2;
  const PairGroup& gg = ctx.GG;
  PairSetup s = ctx.setup();

  int v1dot = ctx.dot1[p.v1], v2dot = ctx.dot2[p.v2];
  int g2 = G2.mul(v2dot, s2);
  int m1v1 = G1.mul(m1, v1dot);

  // phi_2 = Ad^-1_{v2dot s2} theta_a pi_{A1} on U1,
  // phi_1 = Ad_{m1 v1dot} theta_c^-1 pi_{C2} on U2.
  const Subgroup& U1 = G1.radical(SimpleSubset());
  const Subgroup& U2 = G2.radical(SimpleSubset());
  std::vector<int> phi2(G1.order(), -1), phi1(G2.order(), -1);
  for (int u : U1.elems) {
    int m = G1.levi_project(s.A1(), u);
    int t = ctx.A.theta_u[m];
    if (t < 0) throw std::logic_error("phi_2: projection outside the unipotent graph");
    phi2[u] = G2.mul(G2.mul(G2.inv(g2), t), g2);
  }
  for (int u : U2.elems) {
    int m = G2.levi_project(s.C2(), u);
    int t = ctx.C.theta_u_inv[m];
    if (t < 0) throw std::logic_error("phi_1: projection outside the unipotent graph");
    phi1[u] = G1.conj(m1v1, t);
  }

  // The two boxes and their N/Q decompositions.
  Subgroup box1 = G1.intersect(G1.radical(p.stable.A1vv),
                               G1.conj_subgroup(v1dot, G1.radical(SimpleSubset())));
  Subgroup box2 = G2.intersect(G2.radical(p.stable.C2vv),
                               G2.conj_subgroup(G2.inv(v2dot), G2.radical(SimpleSubset())));
  Subgroup N1 = G1.intersect(U1, G1.conj_subgroup(v1dot, G1.radical(s.C1())));
  Subgroup N2 = G2.intersect(U2, G2.conj_subgroup(G2.inv(v2dot), G2.radical(s.A2())));
  SimpleSubset cinvC2vv, aA1vv;
  for (int b : p.stable.C2vv.indices()) cinvC2vv.add(s.c.preimage(b));
  for (int a : p.stable.A1vv.indices()) aA1vv.add(s.a(a));
  Subgroup Q1 = G1.conj_subgroup(
      v1dot, G1.intersect(G1.radical(cinvC2vv), G1.levi(s.C1())));
  Subgroup Q2 = G2.conj_subgroup(
      G2.inv(v2dot), G2.intersect(G2.radical(aA1vv), G2.levi(s.A2())));

  // sigma_1 = phi_1 phi_2 on box1; sigma_2 = phi_2 phi_1 on box2.
  auto sigma1 = [&](int x) {
    int y = phi1[phi2[x]];
    if (!box1.contains(y)) throw std::logic_error("sigma_1 leaves its domain");
    return y;
  };
  auto sigma2 = [&](int x) {
    int y = phi2[phi1[x]];
    if (!box2.contains(y)) throw std::logic_error("sigma_2 leaves its domain");
    return y;
  };
  // phi containments: phi_1(box2) inside v1(U^{C1}_{c^-1(C2vv)}) and dually.
  for (int x : box2.elems)
    if (!Q1.contains(phi1[x])) throw std::logic_error("phi_1 image leaves Q1");
  for (int x : box1.elems)
    if (!Q2.contains(phi2[x])) throw std::logic_error("phi_2 image leaves Q2");

  // Least power killing each sigma; the decreasing chain is bounded by
  // the number of positive roots.
  auto nil_degree = [&](const Subgroup& dom, auto&& f, int e) {
    std::set<int> cur(dom.elems.begin(), dom.elems.end());
    int m = 0;
    while (!(cur.size() == 1 && *cur.begin() == e)) {
      std::set<int> next;
      for (int x : cur) next.insert(f(x));
      cur = std::move(next);
      ++m;
      if (m > 64) throw std::logic_error("sigma iteration does not terminate");
    }
    return m;
  };
  int m1deg = nil_degree(box1, sigma1, G1.id());
  int m2deg = nil_degree(box2, sigma2, G2.id());
  if (m1deg > G1.root_system().num_positive() + 1 ||
      m2deg > G2.root_system().num_positive() + 1)
    throw std::logic_error("nilpotency degree exceeds the positive root count");

  CocycleData data;
  data.gg = &gg;
  data.k = std::max({1, m1deg - 1, m2deg - 1});

  auto psi1 = [&](int n1, int n2) {
    int g = phi1[n2];
    int acc = g;
    int t = G1.mul(n1, g);
    for (int j = 1; j <= data.k; ++j) {
      t = sigma1(t);
      acc = G1.mul(acc, t);
    }
    return acc;
  };
  auto psi2 = [&](int n1, int n2) {
    int g = phi2[n1];
    int acc = g;
    int t = G2.mul(n2, g);
    for (int j = 1; j <= data.k; ++j) {
      t = sigma2(t);
      acc = G2.mul(acc, t);
    }
    return acc;
  };

  PairSet Ubox = pair_box(gg, box1, box2);
  PairSet Nset = pair_box(gg, N1, N2);
  PairSet Qset = pair_box(gg, Q1, Q2);
  data.U = Ubox.elems;
  data.N = Nset.elems;
  data.Q = Qset.elems;
  if (pair_intersect(gg, Nset, Qset).order() != 1)
    throw std::logic_error("N cap Q nontrivial");
  if (!(pair_product(gg, Nset, Qset) == Ubox))
    throw std::logic_error("N Q does not fill the ambient product");
  for (int32_t q : data.Q)
    for (int32_t n : data.N)
      if (!Nset.contains(gg.mul(gg.mul(q, n), gg.inv(q))))
        throw std::logic_error("Q does not normalize N");

  data.psi.resize(data.N.size());
  std::vector<int32_t> sv;
  for (size_t i = 0; i < data.N.size(); ++i) {
    int n1 = gg.first(data.N[i]), n2 = gg.second(data.N[i]);
    int32_t ps = gg.code(psi1(n1, n2), psi2(n1, n2));
    if (!Qset.contains(ps)) throw std::logic_error("psi image leaves Q");
    data.psi[i] = ps;
    sv.push_back(gg.mul(data.N[i], ps));
  }
  std::sort(sv.begin(), sv.end());
  data.S = sv;

  // S must be exactly the brute-force unipotent stabilizer at q.
  StabilizerData st = stabilizer(ctx, p, m1, s2);
  if (!(data.S == st.stab_u.elems))
    throw std::logic_error("psi graph differs from the unipotent stabilizer");

  data.label = "v1=" + ctx.W1->word_string(p.v1) + " v2=" + ctx.W2->word_string(p.v2) +
               " m1=" + std::to_string(m1) + " s=" + std::to_string(s2);
  return data;
}

bool YBMap::bijective() const {
  std::vector<bool> seen(tab.size(), false);
  for (int32_t v : tab) {
    if (v < 0 || v >= static_cast<int32_t>(tab.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

YBPair build_T(const CocycleData& data) {
  const PairGroup& gg = *data.gg;
  const int n = data.n_size();
  auto pos = [&](int32_t code) {
    int p = data.pos_of(code);
    if (p < 0) throw std::logic_error("map left N");
    return p;
  };

  YBPair out;
  out.T0.n = n;
  out.T0.tab.resize(static_cast<size_t>(n) * n);
  out.T.n = n;
  out.T.tab.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int32_t x = data.N[i], y = data.N[j];
      // T0(x, y) = (y, y^-1 x y)
      int32_t t0a = y, t0b = gg.mul(gg.mul(gg.inv(y), x), y);
      out.T0.tab[static_cast<size_t>(i) * n + j] = pos(t0a) * n + pos(t0b);

      // F(x, y) = (x, psi(x) y psi(x)^-1), then T0, then (sigma F sigma)^-1
      // which maps (u, v) to (psi(v)^-1 u psi(v), v).
      int32_t px = data.psi[i];
      int32_t fb = gg.mul(gg.mul(px, y), gg.inv(px));
      int32_t u = fb, v = gg.mul(gg.mul(gg.inv(fb), x), fb);
      int32_t pv = data.psi[pos(v)];
      int32_t ta = gg.mul(gg.mul(gg.inv(pv), u), pv);
      out.T.tab[static_cast<size_t>(i) * n + j] = pos(ta) * n + pos(v);
    }
  }
  if (!out.T0.bijective()) throw std::logic_error("T0 table not bijective");
  if (!out.T.bijective()) throw std::logic_error("T table not bijective");
  return out;
}

YBEResult verify_qybe(const YBMap& T, int cap) {
  if (T.n > cap) throw std::invalid_argument("N too large for the QYBE sweep");
  const int n = T.n;
  // T^{ij} takes (c_i, c_j) to the pair of outputs written back in the
  // (j, i) order; under this embedding the conjugation map
  // (n, n') -> (n', n'^-1 n n') is the group solution.
  auto t = [&](int a, int b) { return T.tab[static_cast<size_t>(a) * n + b]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // left side: T23, then T13, then T12
        int a = i, b = j, c = k;
        int v = t(b, c);
        c = v / n;
        b = v % n;
        v = t(a, c);
        c = v / n;
        a = v % n;
        v = t(a, b);
        b = v / n;
        a = v % n;
        // right side: T12, then T13, then T23
        int x = i, y = j, z = k;
        v = t(x, y);
        y = v / n;
        x = v % n;
        v = t(x, z);
        z = v / n;
        x = v % n;
        v = t(y, z);
        z = v / n;
        y = v % n;
        if (a != x || b != y || c != z) {
          YBEResult r;
          r.pass = false;
          r.witness = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(k) + ")";
          return r;
        }
      }
    }
  }
  return {true, ""};
}

YBEResult verify_cocycle(const CocycleData& data) {
  const PairGroup& gg = *data.gg;
  // pi : S -> N, n psi(n) -> n must be bijective.
  if (data.S.size() != data.N.size())
    return {false, "S and N orders differ"};
  std::vector<int32_t> s_of(data.N.size());
  std::map<int32_t, int32_t> pi;
  for (size_t i = 0; i < data.N.size(); ++i) {
    int32_t s = gg.mul(data.N[i], data.psi[i]);
    if (!pi.emplace(s, data.N[i]).second)
      return {false, "pi not injective at " + std::to_string(s)};
    s_of[i] = s;
  }
  for (size_t i = 0; i < data.N.size(); ++i) {
    for (size_t j = 0; j < data.N.size(); ++j) {
      int32_t s12 = gg.mul(s_of[i], s_of[j]);
      auto it = pi.find(s12);
      if (it == pi.end())
        return {false,
                "S not closed: s1 s2 outside S at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")"};
      // s1 . n = psi(pi(s1)) n psi(pi(s1))^-1
      int32_t act = gg.mul(gg.mul(data.psi[i], data.N[j]), gg.inv(data.psi[i]));
      if (it->second != gg.mul(data.N[i], act))
        return {false,
                "cocycle identity fails at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")"};
    }
  }
  return {true, ""};
}

CocycleData corrupt_psi(const CocycleData& data, int i, int j) {
  CocycleData out = data;
  std::swap(out.psi[i], out.psi[j]);
  std::vector<int32_t> sv;
  for (size_t p = 0; p < out.N.size(); ++p)
    sv.push_back(out.gg->mul(out.N[p], out.psi[p]));
  std::sort(sv.begin(), sv.end());
  out.S = sv;
  out.label = data.label + " (corrupted)";
  return out;
}

}  // namespace dcosets

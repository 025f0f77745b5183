#include "dcosets/classify.hpp"

#include <stdexcept>

namespace dcosets {

std::vector<CosetParameter> enumerate_parameters(const PairSetup& s) {
  std::vector<CosetParameter> out;
  for (int v1 : s.W1->min_reps(SimpleSubset(), s.C1())) {
    for (int v2 : s.W2->min_reps(s.A2(), SimpleSubset())) {
      CosetParameter p;
      p.v1 = v1;
      p.v2 = v2;
      p.stable = stable_subsets(s, v1, v2);
      p.d = induced_isometries(s, v1, v2, p.stable).d;
      out.push_back(std::move(p));
    }
  }
  return out;
}

GroupDims group_dims(const RootSystem& rs, SimpleSubset D, int rankH) {
  if (rankH < rs.rank()) throw std::invalid_argument("rankH below root system rank");
  GroupDims g;
  int posD = rs.num_pos_in(D);
  g.U = rs.num_positive() - posD;
  g.M = rankH + 2 * posD;
  g.P = g.M + g.U;
  g.Z = rankH - D.size();
  return g;
}

IntersectionDims intersection_dims(const WeylGroup& W, SimpleSubset A, SimpleSubset C,
                                   int w) {
  if (!W.is_min_rep(w, A, C)) throw std::invalid_argument("w not in ^A W^C");
  const RootSystem& rs = W.root_system();
  IntersectionDims d;
  d.uA_sub = rs.num_pos_in(A) - rs.num_pos_in(W.cap_w(A, w, C));
  d.uA_w_uC = 0;
  for (int r = 0; r < rs.num_positive(); ++r) {
    if (rs.in_span(r, A)) continue;
    int p = W.act_inverse(w, r);
    if (rs.is_positive(p) && !rs.in_span(p, C)) ++d.uA_w_uC;
  }
  d.w_uC_sub = rs.num_pos_in(C) - rs.num_pos_in(W.cap_w(C, W.inverse(w), A));
  return d;
}

bool intersection_dims_check(const WeylGroup& W, SimpleSubset A, SimpleSubset C, int w) {
  const RootSystem& rs = W.root_system();
  IntersectionDims d = intersection_dims(W, A, C, w);
  int dimUA = rs.num_positive() - rs.num_pos_in(A);
  int dimUC = rs.num_positive() - rs.num_pos_in(C);
  return d.uA_sub + d.uA_w_uC == dimUC - W.length(w) &&
         d.w_uC_sub + d.uA_w_uC == dimUA - W.length(w);
}

int stab_u_dim(const PairSetup& s, const CosetParameter& p) {
  const RootSystem& rs1 = s.W1->root_system();
  const RootSystem& rs2 = s.W2->root_system();
  int dimU_C1 = rs1.num_positive() - rs1.num_pos_in(s.C1());
  int dimU_A2 = rs2.num_positive() - rs2.num_pos_in(s.A2());
  int v = dimU_C1 + dimU_A2 - s.W1->length(p.v1) - s.W2->length(p.v2);
  if (v < 0) throw std::logic_error("negative unipotent stabilizer dimension");
  return v;
}

DimensionReport dimension(const PairSetup& s, const CosetParameter& p, int rankH1,
                          int rankH2, int z_term, int orbit_dim) {
  DimensionReport r;
  r.l1 = s.W1->length(p.v1);
  r.l2 = s.W2->length(p.v2);
  r.dimP_A1 = group_dims(s.W1->root_system(), s.A1(), rankH1).P;
  r.dimM_A1vv = group_dims(s.W1->root_system(), p.stable.A1vv, rankH1).M;
  r.dimP_C2 = group_dims(s.W2->root_system(), s.C2(), rankH2).P;
  r.dimZ_C2vv = group_dims(s.W2->root_system(), p.stable.C2vv, rankH2).Z;
  r.z_term = z_term;
  r.orbit_dim = orbit_dim;
  r.total = r.l1 + r.l2 + r.dimP_A1 - r.dimM_A1vv + r.dimP_C2 - r.dimZ_C2vv + r.z_term +
            r.orbit_dim;
  return r;
}

int bruhat_z_term(int rankH2) { return rankH2; }
int full_graph_z_term() { return 0; }
int bruhat_orbit_dim(int rankH1) { return rankH1; }

ReductionData reduction_data(const PairSetup& s, int w1, int w2) {
  if (!s.W1->is_min_rep(w1, s.A1(), s.C1()))
    throw std::invalid_argument("w1 not in ^{A1}W1^{C1}");
  if (!s.W2->is_min_rep(w2, s.A2(), s.C2()))
    throw std::invalid_argument("w2 not in ^{A2}W2^{C2}");
  const RootSystem& rs1 = s.W1->root_system();
  const RootSystem& rs2 = s.W2->root_system();

  ReductionData rd;
  SimpleSubset D2 = s.W2->cap_w(s.A2(), w2, s.C2());  // A2 cap w2(C2)
  for (int i : s.A1().indices())
    if (D2.contains(s.a(i))) rd.Anew1.add(i);
  rd.Anew2 = s.W2->cap_w(s.C2(), s.W2->inverse(w2), s.A2());  // C2 cap w2^-1(A2)
  rd.Cnew1 = s.W1->cap_w(s.A1(), w1, s.C1());                 // A1 cap w1(C1)
  SimpleSubset E1 = s.W1->cap_w(s.C1(), s.W1->inverse(w1), s.A1());
  for (int i : E1.indices()) rd.Cnew2.add(s.c(i));

  std::array<int8_t, kMaxRank> m1, m2;
  m1.fill(-1);
  m2.fill(-1);
  auto as_simple = [](const RootSystem& rs, int r) {
    for (int i = 0; i < rs.rank(); ++i)
      if (rs.simple_root(i) == r) return i;
    return -1;
  };
  for (int alpha : rd.Anew1.indices()) {
    int r = s.W2->act_inverse(w2, rs2.simple_root(s.a(alpha)));
    int beta = as_simple(rs2, r);
    if (beta < 0) throw std::logic_error("w2^-1 a not simple on Anew1");
    m1[alpha] = static_cast<int8_t>(beta);
  }
  for (int alpha : rd.Cnew1.indices()) {
    int r = s.W1->act_inverse(w1, rs1.simple_root(alpha));
    int gamma = as_simple(rs1, r);
    if (gamma < 0) throw std::logic_error("w1^-1 not simple on Cnew1");
    m2[alpha] = static_cast<int8_t>(s.c(gamma));
  }
  rd.w2inv_a = PartialIsometry(rs1, rs2, m1);
  rd.c_w1inv = PartialIsometry(rs1, rs2, m2);
  return rd;
}

}  // namespace dcosets

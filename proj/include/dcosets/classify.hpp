#pragma once

#include <vector>

#include "dcosets/isometry.hpp"

namespace dcosets {

/// One double-coset parameter (v1, v2) with its stable subsets and the
/// induced self-map d of A1(v1,v2).
struct CosetParameter {
  int v1 = 0;
  int v2 = 0;
  StableSubsets stable;
  PartialSimpleMap d;
};

/// The full parameter list over v1 in W1^{C1}, v2 in ^{A2}W2.
std::vector<CosetParameter> enumerate_parameters(const PairSetup& s);

struct GroupDims {
  int P, M, U, Z;
};

/// Root-counting dimensions of P_D, M_D, U_D and of the connected centre
/// of M_D, inside a group with torus of dimension rankH.
GroupDims group_dims(const RootSystem& rs, SimpleSubset D, int rankH);

struct IntersectionDims {
  int uA_sub;    // dim U^A_{A cap w(C)}
  int uA_w_uC;   // dim (U_A cap w(U_C))
  int w_uC_sub;  // dim w(U^C_{w^-1(A) cap C})
};

/// Requires w in ^A W^C. The two sum identities
///   uA_sub + uA_w_uC = dim U_C - l(w)
///   w_uC_sub + uA_w_uC = dim U_A - l(w)
/// hold for every admissible triple; intersection_dims_check tests them.
IntersectionDims intersection_dims(const WeylGroup& W, SimpleSubset A, SimpleSubset C,
                                   int w);
bool intersection_dims_check(const WeylGroup& W, SimpleSubset A, SimpleSubset C, int w);

/// dim U_{C1} + dim U_{A2} - l(v1) - l(v2); throws if negative.
int stab_u_dim(const PairSetup& s, const CosetParameter& p);

struct DimensionReport {
  int l1, l2;
  int dimP_A1, dimM_A1vv, dimP_C2, dimZ_C2vv;
  int z_term, orbit_dim;
  int total;
};

/// Assembles the coset dimension from its root-theoretic terms plus the
/// two caller-supplied group terms (no closed combinatorial form exists
/// for those in general; see the canonical helpers below).
DimensionReport dimension(const PairSetup& s, const CosetParameter& p, int rankH1,
                          int rankH2, int z_term, int orbit_dim);

/// z-term when K = L = H1 x H2 and both isometries are empty.
int bruhat_z_term(int rankH2);
/// z-term when K and L are graphs of isomorphisms and centres are finite.
int full_graph_z_term();
/// Orbit term in the same Bruhat case: the twisted torus orbit is all of H1.
int bruhat_orbit_dim(int rankH1);

struct ReductionData {
  SimpleSubset Anew1, Anew2;  // subsets of Gamma_1 resp Gamma_2
  SimpleSubset Cnew1, Cnew2;
  PartialIsometry w2inv_a;  // Anew1 -> Anew2
  PartialIsometry c_w1inv;  // Cnew1 -> Cnew2
};

/// Levi-level data of the reduction step. Requires w1 in ^{A1}W1^{C1} and
/// w2 in ^{A2}W2^{C2}.
ReductionData reduction_data(const PairSetup& s, int w1, int w2);

}  // namespace dcosets

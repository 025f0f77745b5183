#pragma once

#include <string>
#include <vector>

#include "dcosets/oracle.hpp"

namespace dcosets {

/// Bijective-1-cocycle data attached to one normal-form point: inside
/// U = (U_{A1vv} cap v1(U1)) x (U_{C2vv} cap v2^-1(U2)) the subgroups
/// N = (U1 cap v1(U_{C1})) x (U2 cap v2^-1(U_{A2})) and its complement Q,
/// the map psi : N -> Q and the graph S = {n psi(n)}.
struct CocycleData {
  const PairGroup* gg = nullptr;
  std::vector<int32_t> U, N, Q;  // sorted pair codes
  std::vector<int32_t> psi;      // per position in N
  std::vector<int32_t> S;        // sorted
  int k = 1;                     // nilpotency degree used by the products
  std::string label;

  int n_size() const { return static_cast<int>(N.size()); }
  int pos_of(int32_t code) const;  // position in N, -1 if absent
  int32_t psi_of(int32_t code) const;
};

/// Materializes phi_1, phi_2, sigma_1, sigma_2 and the iterated products
/// psi_1, psi_2 for q = (m1 v1dot, v2dot s2), and checks S against the
/// brute-force Stab_U(q). Throws on any structural violation.
CocycleData build_psi(const OracleContext& ctx, const CosetParameter& p, int m1, int s2);

/// Invertible map of N x N as a lookup table; entry (i, j) -> (i', j').
struct YBMap {
  int n = 0;
  std::vector<int32_t> tab;  // size n*n, value i'*n + j'
  bool bijective() const;
};

struct YBPair {
  YBMap T0;  // (x, y) -> (y, y^-1 x y)
  YBMap T;   // the psi-twist (sigma F sigma)^-1 T0 F
};
YBPair build_T(const CocycleData& data);

struct YBEResult {
  bool pass = false;
  std::string witness;  // empty when pass
};

/// Exhaustive T12 T13 T23 = T23 T13 T12 over all |N|^3 triples.
/// Throws when |N| exceeds the cap.
YBEResult verify_qybe(const YBMap& T, int cap = 512);

/// S is a subgroup, pi : S -> N is bijective, and
/// pi(s1 s2) = pi(s1) (s1 . pi(s2)) over all of S x S.
YBEResult verify_cocycle(const CocycleData& data);

/// Negative control: the same data with psi values swapped at two
/// positions of N.
CocycleData corrupt_psi(const CocycleData& data, int i, int j);

}  // namespace dcosets

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dcosets/classify.hpp"
#include "dcosets/fingroup.hpp"

namespace dcosets {

/// G1 x G2 with elements encoded as a * |G2| + b.
class PairGroup {
 public:
  PairGroup(const FinGroup& g1, const FinGroup& g2) : g1_(&g1), g2_(&g2) {
    if (static_cast<int64_t>(g1.order()) * g2.order() > 1000000)
      throw std::invalid_argument("product group size cap exceeded");
  }
  const FinGroup& g1() const { return *g1_; }
  const FinGroup& g2() const { return *g2_; }
  int size() const { return g1_->order() * g2_->order(); }
  int32_t code(int a, int b) const { return a * g2_->order() + b; }
  int first(int32_t c) const { return c / g2_->order(); }
  int second(int32_t c) const { return c % g2_->order(); }
  int32_t id() const { return code(g1_->id(), g2_->id()); }
  int32_t mul(int32_t x, int32_t y) const {
    return code(g1_->mul(first(x), first(y)), g2_->mul(second(x), second(y)));
  }
  int32_t inv(int32_t x) const { return code(g1_->inv(first(x)), g2_->inv(second(x))); }
  int32_t conj(int32_t g, int32_t x) const { return mul(mul(g, x), inv(g)); }

 private:
  const FinGroup* g1_;
  const FinGroup* g2_;
};

/// Sorted element subset of a PairGroup.
struct PairSet {
  std::vector<int32_t> elems;
  std::vector<bool> mask;
  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int32_t c) const { return mask[c]; }
  bool operator==(const PairSet& o) const { return elems == o.elems; }
};

PairSet pair_make(const PairGroup& gg, std::vector<int32_t> members);  // checks closure
PairSet pair_box(const PairGroup& gg, const Subgroup& x, const Subgroup& y);
PairSet pair_closure(const PairGroup& gg, const std::vector<int32_t>& gens);
PairSet pair_intersect(const PairGroup& gg, const PairSet& x, const PairSet& y);
PairSet pair_product(const PairGroup& gg, const PairSet& x, const PairSet& y);
PairSet pair_conj(const PairGroup& gg, int32_t g, const PairSet& x);
Subgroup pair_project1(const PairGroup& gg, const PairSet& x);
Subgroup pair_project2(const PairGroup& gg, const PairSet& x);

/// Quintuple data of a generalized-graph subgroup: K1 = eta_1(K),
/// X1 = {x : (x, e) in K}, mirrored on the other side, and theta as a map
/// of cosets keyed by minimal coset representatives.
struct Quintuple {
  Subgroup K1, X1;
  Subgroup K2, X2;
  std::map<int32_t, int32_t> theta;
};

/// Throws (with the violating root) unless K meets every
/// U^alpha x U^{a(alpha)}, alpha in Delta_{A1}, in the graph of a group
/// isomorphism.
void validate_generalized_graph(const PairGroup& gg, const PartialIsometry& a,
                                const PairSet& K);

Quintuple quintuple_of(const PairGroup& gg, const PairSet& K);
PairSet subgroup_from_quintuple(const PairGroup& gg, const Quintuple& qt);

/// {(m1, m3) | exists m2 with (m1, m2) in K and (m2, m3) in L}. K lives in
/// g12, L in g23, the result in g13.
PairSet compose_correspondence(const PairGroup& g12, const PairGroup& g23,
                               const PairGroup& g13, const PairSet& K, const PairSet& L);

/// Lift of a diagram isometry to the derived Levi subgroups: the image of
/// each word in the Chevalley generators of M'_{A1} under
/// x_{+-alpha}(t) -> x_{+-a(alpha)}(t). Verified to be an isomorphism.
std::vector<int32_t> levi_isomorphism(const FinGroup& G1, const FinGroup& G2,
                                      const PartialIsometry& a);

/// A concrete admissible pair (a, K) together with R = K (U_{A1} x U_{A2}),
/// the opposite variant R^- = K (U_{A1} x U_{A2}^-) and the unipotent graph
/// U cap M_{A1} -> U cap M_{A2} read off K.
struct AdmissiblePair {
  PartialIsometry iso;
  std::string k_spec;
  PairSet K;
  PairSet R;
  PairSet Rminus;
  std::vector<int32_t> theta_u;      // by G1 element; -1 outside U cap M_{A1}
  std::vector<int32_t> theta_u_inv;  // by G2 element
};

/// k_spec: "graph" (X trivial), "graph-zfull" (X = Z_{A1} x Z_{A2}),
/// "graph-zdiag" (diagonal of Z_{A1} = Z_{A2}; needs matching domains),
/// "graph-levi" (graph of the identity on the whole Levi; needs equal
/// groups and an identity isometry). Aliases: "diag" = graph,
/// "HxH" = graph-zfull.
AdmissiblePair make_admissible(const PairGroup& gg, const PartialIsometry& a,
                               std::string_view k_spec);

struct OracleContext {
  const FinGroup* G1;
  const FinGroup* G2;
  const WeylGroup* W1;
  const WeylGroup* W2;
  PairGroup GG;
  AdmissiblePair A;  // (a, K)
  AdmissiblePair C;  // (c, L)
  std::vector<int> dot1, dot2;  // Weyl representative sections
  int section_variant = 0;

  PairSetup setup() const { return PairSetup{W1, W2, A.iso, C.iso}; }
};

OracleContext make_context(const FinGroup& G1, const FinGroup& G2, const WeylGroup& W1,
                           const WeylGroup& W2, const PartialIsometry& a,
                           std::string_view k_spec, const PartialIsometry& c,
                           std::string_view l_spec, int section_variant = 0);

/// Brute-force (R_A, R_C) orbit partition of all of G1 x G2; returns the
/// class id of every pair code and the class count.
struct Partition {
  std::vector<int32_t> cls;
  int count = 0;
};
Partition double_cosets(const PairGroup& gg, const PairSet& RA, const PairSet& RC);

/// Independent conjugation BFS.
int conjugacy_class_count(const FinGroup& G);

/// K(v1,v2), L(v1,v2), J(v1,v2), the J-orbits of M_{A1(v1,v2)} and the
/// centre quotient Z(v1,v2).
struct TwistedClasses {
  PairSet Kvv, Lvv;             // in G1 x G2
  std::vector<int32_t> Jvv;     // sorted codes m * |G1| + m' over G1 x G1
  std::vector<int> orbit_reps;  // one m1 per J-orbit, minimal element
  std::vector<int> orbit_id;    // parallel to levi(A1vv).elems
  std::vector<int> z_reps;      // Z(v1,v2) coset representatives in Z_{C2vv}
  int j_orbit_count() const { return static_cast<int>(orbit_reps.size()); }
  int z_order() const { return static_cast<int>(z_reps.size()); }
};
TwistedClasses twisted_classes(const OracleContext& ctx, const CosetParameter& p);

struct ParamRow {
  CosetParameter param;
  int z_order = 0;
  int j_orbit_count = 0;
};

struct CensusReport {
  bool pass = false;
  int brute_classes = 0;
  int parametrized_total = 0;
  std::vector<ParamRow> rows;
  std::vector<std::string> failures;
};
/// Coset census: the brute-force class count must match the parametrized
/// sum, with normal-form points hitting every class exactly once.
CensusReport verify_census(const OracleContext& ctx);

/// Stab(q) and its Levi/unipotent parts for one normal-form point
/// q = (m1 dot{v1}, dot{v2} s2).
struct StabilizerData {
  int m1, s2, g1, g2;
  PairSet stab, stab_m, stab_u;
  Subgroup u_box1, u_box2;  // U_{A1vv} cap v1(U1) and U_{C2vv} cap v2^-1(U2)
};
StabilizerData stabilizer(const OracleContext& ctx, const CosetParameter& p, int m1,
                          int s2);

struct CheckReport {
  bool pass = true;
  int checks = 0;
  std::vector<std::string> failures;
  void fail(const std::string& msg) {
    pass = false;
    failures.push_back(msg);
  }
};

/// Semidirect decomposition of Stab(q), the unipotent order identity
/// |Stab_U| = q^(dim U_{C1} + dim U_{A2} - l(v1) - l(v2)) and the central
/// extension order identity, for every normal-form point.
CheckReport verify_stabilizers(const OracleContext& ctx);

/// Strata over (w1, w2): classes meeting (M_{A1} w1, w2 M_{C2}) biject
/// with the Levi-level double cosets of the reduced pairs.
CheckReport verify_levi_reduction(const OracleContext& ctx);

/// The parabolic intersection decompositions of K and R_A, for every
/// D1 inside the domain of a.
CheckReport verify_graph_decompositions(const PairGroup& gg, const AdmissiblePair& A);

struct FlagReport {
  bool pass = false;
  int orbits = 0;
  int expected = 0;
  std::vector<std::string> failures;
};
/// R_A orbits on G1/P_{C1} x G2/P_{C2} against the minimal-representative
/// parametrization; each orbit holds exactly one representative point.
FlagReport verify_flag_orbits(const OracleContext& ctx, SimpleSubset C1, SimpleSubset C2);

}  // namespace dcosets

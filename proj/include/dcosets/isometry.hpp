#pragma once

#include <array>
#include <string>
#include <vector>

#include "dcosets/rootsys.hpp"
#include "dcosets/weyl.hpp"

namespace dcosets {

/// Partial injective map between the simple roots of two diagrams that
/// preserves all pairwise Cartan integers on its domain.
class PartialIsometry {
 public:
  PartialIsometry() = default;
  /// map[i] = image simple index, or -1 when undefined. Throws unless the
  /// map is injective and Cartan-preserving.
  PartialIsometry(const RootSystem& src, const RootSystem& dst,
                  const std::array<int8_t, kMaxRank>& map);

  static PartialIsometry empty_map(const RootSystem& src, const RootSystem& dst);
  static PartialIsometry identity(const RootSystem& rs);
  /// Identity on D, inside one diagram.
  static PartialIsometry identity_on(const RootSystem& rs, SimpleSubset D);

  const RootSystem& source() const { return *src_; }
  const RootSystem& target() const { return *dst_; }
  SimpleSubset domain() const { return domain_; }
  SimpleSubset range() const { return range_; }
  bool defined(int i) const { return map_[i] >= 0; }
  int operator()(int i) const { return map_[i]; }
  int preimage(int j) const;  // -1 if j not in range

  PartialIsometry inverse() const;
  PartialIsometry restrict(SimpleSubset D) const;

  /// Linear extension to roots in the span of the domain; returns a root
  /// index of the target system, or -1 when the root is out of scope.
  int apply_root(int root) const;
  int apply_root_inverse(int root) const;

  std::string to_string() const;  // "empty" or "1>1,2>2" (1-based)

  friend bool operator==(const PartialIsometry& a, const PartialIsometry& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.map_ == b.map_;
  }

 private:
  const RootSystem* src_ = nullptr;
  const RootSystem* dst_ = nullptr;
  std::array<int8_t, kMaxRank> map_{};
  SimpleSubset domain_, range_;
};

/// P(Gamma_1, Gamma_2): every injective partial map preserving Cartan
/// integers, the empty map included.
std::vector<PartialIsometry> enumerate_partial_isometries(const RootSystem& src,
                                                          const RootSystem& dst);

/// Composition c after a. Requires range(a) = domain(c).
PartialIsometry compose_isometries(const PartialIsometry& a, const PartialIsometry& c);

/// Partial self-map of simple indices; not necessarily isometric.
struct PartialSimpleMap {
  std::array<int8_t, kMaxRank> map{};
  SimpleSubset domain;

  PartialSimpleMap() { map.fill(-1); }
  bool defined(int i) const { return map[i] >= 0; }
  int operator()(int i) const { return map[i]; }
  bool is_bijection_of(SimpleSubset S) const;
};

/// The two admissible pairs' combinatorial data: Weyl groups plus the
/// partial isometries a (domain A1, range A2) and c (domain C1, range C2).
struct PairSetup {
  const WeylGroup* W1 = nullptr;
  const WeylGroup* W2 = nullptr;
  PartialIsometry a;
  PartialIsometry c;

  SimpleSubset A1() const { return a.domain(); }
  SimpleSubset A2() const { return a.range(); }
  SimpleSubset C1() const { return c.domain(); }
  SimpleSubset C2() const { return c.range(); }
};

/// The composite v1 c^-1 v2^-1 a as a partial map on the simple roots of
/// Gamma_1: defined at alpha when every factor applies and the value is
/// again simple. No invariance is imposed here.
PartialSimpleMap chain_map_d(const PairSetup& s, int v1, int v2);
/// Likewise v2^-1 a v1 c^-1 on Gamma_2.
PartialSimpleMap chain_map_e(const PairSetup& s, int v1, int v2);

/// Greatest fixpoint: the largest subset of `start` on which `m` is
/// everywhere defined with values staying inside the subset.
SimpleSubset largest_invariant_subset(const PartialSimpleMap& m, SimpleSubset start);

struct StableSubsets {
  SimpleSubset A1vv;
  SimpleSubset C2vv;
};

/// A1(v1,v2) and C2(v1,v2). Requires v1 in W1^{C1} and v2 in ^{A2}W2.
StableSubsets stable_subsets(const PairSetup& s, int v1, int v2);

struct InducedIsometries {
  PartialIsometry v2inv_a;  // A1vv -> C2vv
  PartialIsometry c_v1inv;  // A1vv -> C2vv
  PartialSimpleMap d;       // total bijection of A1vv
};

InducedIsometries induced_isometries(const PairSetup& s, int v1, int v2,
                                     const StableSubsets& st);

}  // namespace dcosets

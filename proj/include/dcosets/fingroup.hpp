#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dcosets/rootsys.hpp"
#include "dcosets/weyl.hpp"

namespace dcosets {

/// Square matrix over F_q, n <= 3, q a small prime.
struct Mat {
  int8_t n = 0;
  int8_t q = 0;
  std::array<int8_t, 9> e{};

  static Mat identity(int n, int q);
  int8_t& at(int i, int j) { return e[i * n + j]; }
  int8_t at(int i, int j) const { return e[i * n + j]; }
  Mat operator*(const Mat& o) const;
  int det() const;
  bool operator==(const Mat& o) const { return n == o.n && e == o.e; }
  uint32_t encode() const;  // row-major residues, base q
  std::string to_string() const;
};

/// Sorted element subset of one FinGroup, closed under product and inverse.
struct Subgroup {
  std::vector<int32_t> elems;  // sorted indices into the parent group
  std::vector<bool> mask;      // size = parent order

  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const { return mask[g]; }
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
};

/// Fully enumerated matrix group over F_q with canonical element encoding
/// and cached multiplication. Elements are indexed 0..order()-1 sorted by
/// their encodings. Immutable after build(); safe for shared reads.
class FinGroup {
 public:
  /// type: "SL2", "SL3" or "GL2"; supported (type, q) pairs are
  /// SL2/F2, SL2/F3, SL3/F2, GL2/F2, GL2/F3.
  static FinGroup build(std::string_view type, int q);

  const std::string& name() const { return name_; }
  int q() const { return q_; }
  int mat_size() const { return n_; }
  int order() const { return static_cast<int>(mats_.size()); }
  int torus_rank() const { return rankH_; }
  const RootSystem& root_system() const { return *rs_; }

  int id() const { return id_; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order() + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  const Mat& mat(int g) const { return mats_[g]; }
  int index_of(const Mat& m) const;

  /// x_root(t); t = 0 gives the identity.
  int one_param(int root, int t) const;
  /// All q elements of U^root.
  std::vector<int> root_subgroup(int root) const;

  Subgroup make_subgroup(std::vector<int> members) const;  // sorts, validates closure
  Subgroup closure(const std::vector<int>& gens) const;
  Subgroup intersect(const Subgroup& x, const Subgroup& y) const;
  Subgroup product_set(const Subgroup& x, const Subgroup& y) const;  // validates subgroup
  Subgroup conj_subgroup(int g, const Subgroup& x) const;
  Subgroup trivial() const;
  Subgroup whole() const;

  // Standard subgroups, cached per simple subset.
  const Subgroup& torus() const;
  const Subgroup& parabolic(SimpleSubset D) const;        // P_D
  const Subgroup& levi(SimpleSubset D) const;             // M_D
  const Subgroup& levi_derived(SimpleSubset D) const;     // M'_D
  const Subgroup& levi_center(SimpleSubset D) const;      // Z_D = Z(M_D)
  const Subgroup& levi_unipotent(SimpleSubset D) const;   // U cap M_D
  const Subgroup& radical(SimpleSubset D) const;          // U_D (radical({}) = U)
  const Subgroup& radical_minus(SimpleSubset D) const;    // U_D^-

  /// m for p = m u in P_D = M_D U_D; -1 outside P_D.
  int levi_project(SimpleSubset D, int p) const;

  /// One representative per Weyl element, built from per-reflection
  /// representatives along each element's reduced word. Variants 0 and 1
  /// use opposite signs and differ when q > 2.
  std::vector<int> rep_section(const WeylGroup& W, int variant) const;

 private:
  std::string name_;
  int q_ = 0, n_ = 0, rankH_ = 0, id_ = 0;
  std::shared_ptr<RootSystem> rs_;
  std::vector<Mat> mats_;
  std::vector<int32_t> mul_;
  std::vector<int32_t> inv_;
  std::unordered_map<uint32_t, int32_t> code_index_;
  std::vector<std::array<int8_t, 2>> root_entry_;  // root -> (i, j) of E_ij

  mutable std::map<uint32_t, Subgroup> parabolic_, levi_, levi_derived_, levi_center_,
      levi_unipotent_, radical_, radical_minus_;
  mutable std::map<uint32_t, std::vector<int32_t>> levi_proj_;
  mutable Subgroup torus_;
};

}  // namespace dcosets

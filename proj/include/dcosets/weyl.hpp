#pragma once

#include <map>
#include <string>
#include <vector>

#include "dcosets/rootsys.hpp"

namespace dcosets {

/// One Weyl group element, identified with the permutation it induces on
/// the root list of its root system.
struct WeylElement {
  std::vector<int16_t> perm;  // root index -> root index
  std::vector<int8_t> word;   // one reduced word over simple indices
  int length = 0;
};

/// Complete enumeration of a finite Weyl group. Element 0 is the identity;
/// elements are indexed in breadth-first discovery order (by length).
/// Immutable after generate(); all queries are pure.
class WeylGroup {
 public:
  static WeylGroup generate(const RootSystem& rs);

  const RootSystem& root_system() const { return *rs_; }
  int order() const { return static_cast<int>(el_.size()); }
  int identity() const { return 0; }
  int simple(int i) const { return simple_[i]; }
  const WeylElement& element(int w) const { return el_[w]; }
  int length(int w) const { return el_[w].length; }
  const std::vector<int8_t>& word(int w) const { return el_[w].word; }
  std::string word_string(int w) const;  // "e" or "s1 s2"

  int mult(int a, int b) const { return mult_[a * order() + b]; }  // (ab)(r)=a(b(r))
  int inverse(int a) const { return inv_[a]; }
  int act(int w, int root) const { return el_[w].perm[root]; }
  int act_inverse(int w, int root) const { return el_[inv_[w]].perm[root]; }
  int index_of_perm(const std::vector<int16_t>& perm) const;

  bool maps_to_positive(int w, SimpleSubset S) const;          // w(S) in Delta+
  bool inverse_maps_to_positive(int w, SimpleSubset S) const;  // w^-1(S) in Delta+

  /// ^A W^C: minimal double-coset representatives, characterized by
  /// w^-1(A) in Delta+ and w(C) in Delta+.
  std::vector<int> min_reps(SimpleSubset A, SimpleSubset C) const;
  bool is_min_rep(int w, SimpleSubset A, SimpleSubset C) const;

  /// Membership in the parabolic subgroup W_A.
  bool in_parabolic(int w, SimpleSubset A) const;
  std::vector<int> parabolic_subgroup(SimpleSubset A) const;

  /// A cap w(C) as a subset of simple roots: {a in A : w^-1(a) in C}.
  SimpleSubset cap_w(SimpleSubset A, int w, SimpleSubset C) const;

  struct Factorization {
    int u;
    int w;
  };
  /// Unique v = u*w with w in ^A W^C, u in ^D W_A^{A cap w(C)} and
  /// l(v) = l(u) + l(w). Requires D subset of A and v in ^D W^C.
  Factorization parabolic_factorize(int v, SimpleSubset D, SimpleSubset A,
                                    SimpleSubset C) const;
  /// Mirrored form: unique v = w*u with w in ^A W^C,
  /// u in ^{w^-1(A) cap C} W_C^E. Requires E subset of C and v in ^A W^E.
  Factorization parabolic_factorize_right(int v, SimpleSubset A, SimpleSubset C,
                                          SimpleSubset E) const;

  /// Both identities Delta_A+ cap w(Delta_C+) = Delta_{A cap w(C)}+ and
  /// A cap w(Delta_C+) = A cap w(C), for w in ^A W^C.
  bool cap_identity_check(SimpleSubset A, SimpleSubset C, int w) const;

 private:
  const RootSystem* rs_ = nullptr;
  std::vector<WeylElement> el_;
  std::vector<int> simple_;
  std::vector<int> inv_;
  std::vector<int32_t> mult_;
  std::map<std::vector<int16_t>, int> index_;
};

}  // namespace dcosets

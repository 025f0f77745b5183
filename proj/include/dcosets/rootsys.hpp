#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dcosets {

inline constexpr int kMaxRank = 8;

/// Subset of simple-root indices, packed into a bitmask.
class SimpleSubset {
 public:
  SimpleSubset() = default;
  explicit SimpleSubset(uint32_t bits) : bits_(bits) {}

  static SimpleSubset full(int rank) { return SimpleSubset((1u << rank) - 1u); }
  static SimpleSubset of(std::initializer_list<int> idxs) {
    SimpleSubset s;
    for (int i : idxs) s.add(i);
    return s;
  }

  void add(int i) { bits_ |= 1u << i; }
  void remove(int i) { bits_ &= ~(1u << i); }
  bool contains(int i) const { return (bits_ >> i) & 1u; }
  int size() const { return __builtin_popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  uint32_t bits() const { return bits_; }
  bool subset_of(SimpleSubset o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (uint32_t b = bits_; b; b &= b - 1) out.push_back(__builtin_ctz(b));
    return out;
  }

  friend SimpleSubset operator&(SimpleSubset a, SimpleSubset b) {
    return SimpleSubset(a.bits_ & b.bits_);
  }
  friend SimpleSubset operator|(SimpleSubset a, SimpleSubset b) {
    return SimpleSubset(a.bits_ | b.bits_);
  }
  friend bool operator==(SimpleSubset a, SimpleSubset b) { return a.bits_ == b.bits_; }
  friend bool operator!=(SimpleSubset a, SimpleSubset b) { return a.bits_ != b.bits_; }
  friend bool operator<(SimpleSubset a, SimpleSubset b) { return a.bits_ < b.bits_; }

  /// 1-based, e.g. "{1,3}"; "{}" when empty.
  std::string to_string() const;

 private:
  uint32_t bits_ = 0;
};

/// Integer Cartan matrix. entry(i,j) = <alpha_i, alpha_j^vee>.
class CartanMatrix {
 public:
  CartanMatrix() = default;
  CartanMatrix(int rank, const int* entries);

  int rank() const { return rank_; }
  int operator()(int i, int j) const { return e_[i * rank_ + j]; }

  /// Throws unless diagonal = 2, off-diagonal <= 0 and zeros symmetric.
  void validate() const;

 private:
  int rank_ = 0;
  std::array<int8_t, kMaxRank * kMaxRank> e_{};
};

/// Root coordinates over the simple basis.
using RootCoeffs = std::array<int8_t, kMaxRank>;

/// A finite root system with its full root list. Roots are indexed
/// 0..num_roots()-1 with the positive roots first; root negate(r) is -r.
/// Immutable after construction.
class RootSystem {
 public:
  /// type: "A1".."A4", "B2".."B4", "C3", "C4", "D4", "G2", or a product
  /// such as "A1xA1" (total rank <= 4). Throws std::invalid_argument
  /// otherwise.
  static RootSystem build(std::string_view type);

  const std::string& name() const { return name_; }
  const CartanMatrix& cartan() const { return cartan_; }
  int rank() const { return cartan_.rank(); }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive() const { return npos_; }
  bool is_positive(int r) const { return r < npos_; }

  const RootCoeffs& coeffs(int r) const { return roots_[r]; }
  int coeff(int r, int i) const { return roots_[r][i]; }
  int height(int r) const;

  int root_index(const RootCoeffs& c) const;  // -1 if not a root
  int simple_root(int i) const { return simple_[i]; }
  int negate(int r) const { return r < npos_ ? r + npos_ : r - npos_; }

  int pairing(int r, int j) const;         // <beta, alpha_j^vee>
  int reflect(int simple, int r) const {  // s_simple(beta)
    return reflect_[r * rank() + simple];
  }

  /// Delta_D = Delta intersected with the span of D, as root indices.
  std::vector<int> sub_system(SimpleSubset D) const;
  std::vector<int> sub_system_pos(SimpleSubset D) const;
  int num_pos_in(SimpleSubset D) const;

  SimpleSubset support(int r) const;
  bool in_span(int r, SimpleSubset D) const { return support(r).subset_of(D); }

  /// e.g. "a1+a2", "-a1".
  std::string root_to_string(int r) const;

 private:
  std::string name_;
  CartanMatrix cartan_;
  std::vector<RootCoeffs> roots_;
  std::vector<int16_t> reflect_;  // [root * rank + simple]
  std::vector<int> simple_;
  int npos_ = 0;
};

}  // namespace dcosets

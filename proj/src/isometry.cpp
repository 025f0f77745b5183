#include "dcosets/isometry.hpp"

#include <stdexcept>

namespace dcosets {

PartialIsometry::PartialIsometry(const RootSystem& src, const RootSystem& dst,
                                 const std::array<int8_t, kMaxRank>& map)
    : src_(&src), dst_(&dst), map_(map) {
  for (int i = 0; i < src.rank(); ++i) {
    if (map_[i] < 0) continue;
    if (map_[i] >= dst.rank()) throw std::invalid_argument("isometry image out of range");
    domain_.add(i);
    if (range_.contains(map_[i])) throw std::invalid_argument("isometry not injective");
    range_.add(map_[i]);
  }
  for (int i = src.rank(); i < kMaxRank; ++i) map_[i] = -1;
  for (int i : domain_.indices())
    for (int j : domain_.indices())
      if (src.cartan()(i, j) != dst.cartan()(map_[i], map_[j]))
        throw std::invalid_argument("map does not preserve Cartan integers");
}

PartialIsometry PartialIsometry::empty_map(const RootSystem& src, const RootSystem& dst) {
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  return PartialIsometry(src, dst, m);
}

PartialIsometry PartialIsometry::identity(const RootSystem& rs) {
  return identity_on(rs, SimpleSubset::full(rs.rank()));
}

PartialIsometry PartialIsometry::identity_on(const RootSystem& rs, SimpleSubset D) {
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  for (int i : D.indices()) m[i] = static_cast<int8_t>(i);
  return PartialIsometry(rs, rs, m);
}

int PartialIsometry::preimage(int j) const {
  for (int i : domain_.indices())
    if (map_[i] == j) return i;
  return -1;
}

PartialIsometry PartialIsometry::inverse() const {
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  for (int i : domain_.indices()) m[map_[i]] = static_cast<int8_t>(i);
  return PartialIsometry(*dst_, *src_, m);
}

PartialIsometry PartialIsometry::restrict(SimpleSubset D) const {
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  for (int i : (domain_ & D).indices()) m[i] = map_[i];
  return PartialIsometry(*src_, *dst_, m);
}

int PartialIsometry::apply_root(int root) const {
  if (!src_->in_span(root, domain_)) return -1;
  RootCoeffs out{};
  for (int i : domain_.indices()) out[map_[i]] = static_cast<int8_t>(src_->coeff(root, i));
  return dst_->root_index(out);
}

int PartialIsometry::apply_root_inverse(int root) const {
  if (!dst_->in_span(root, range_)) return -1;
  RootCoeffs out{};
  for (int i : domain_.indices()) out[i] = static_cast<int8_t>(dst_->coeff(root, map_[i]));
  return src_->root_index(out);
}

std::string PartialIsometry::to_string() const {
  if (domain_.empty()) return "empty";
  std::string out;
  for (int i : domain_.indices()) {
    if (!out.empty()) out += ",";
    out += std::to_string(i + 1) + ">" + std::to_string(map_[i] + 1);
  }
  return out;
}

std::vector<PartialIsometry> enumerate_partial_isometries(const RootSystem& src,
                                                          const RootSystem& dst) {
  std::vector<PartialIsometry> out;
  const int r1 = src.rank(), r2 = dst.rank();
  // Odometer over all partial maps; -1 marks "undefined" per slot.
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  while (true) {
    bool injective = true;
    SimpleSubset used;
    for (int i = 0; i < r1 && injective; ++i) {
      if (m[i] < 0) continue;
      if (used.contains(m[i])) injective = false;
      used.add(m[i]);
    }
    if (injective) {
      bool ok = true;
      for (int i = 0; i < r1 && ok; ++i)
        for (int j = 0; j < r1 && ok; ++j)
          if (m[i] >= 0 && m[j] >= 0 && src.cartan()(i, j) != dst.cartan()(m[i], m[j]))
            ok = false;
      if (ok) out.push_back(PartialIsometry(src, dst, m));
    }
    int k = 0;
    while (k < r1 && m[k] == r2 - 1) m[k++] = -1;
    if (k == r1) break;
    ++m[k];
  }
  return out;
}

PartialIsometry compose_isometries(const PartialIsometry& a, const PartialIsometry& c) {
  if (a.target().name() != c.source().name() || a.range() != c.domain())
    throw std::invalid_argument("compose: range of first must equal domain of second");
  std::array<int8_t, kMaxRank> m;
  m.fill(-1);
  for (int i : a.domain().indices()) m[i] = static_cast<int8_t>(c(a(i)));
  return PartialIsometry(a.source(), c.target(), m);
}

bool PartialSimpleMap::is_bijection_of(SimpleSubset S) const {
  if (domain != S) return false;
  SimpleSubset image;
  for (int i : S.indices()) {
    if (!defined(i)) return false;
    if (image.contains(map[i])) return false;
    image.add(map[i]);
  }
  return image == S;
}

namespace {

// Index of a simple root equal to root r, or -1.
int as_simple(const RootSystem& rs, int r) {
  for (int i = 0; i < rs.rank(); ++i)
    if (rs.simple_root(i) == r) return i;
  return -1;
}

void require_params(const PairSetup& s, int v1, int v2) {
  if (!s.W1->is_min_rep(v1, SimpleSubset(), s.C1()))
    throw std::invalid_argument("v1 not in W1^{C1}");
  if (!s.W2->is_min_rep(v2, s.A2(), SimpleSubset()))
    throw std::invalid_argument("v2 not in ^{A2}W2");
}

}  // namespace

PartialSimpleMap chain_map_d(const PairSetup& s, int v1, int v2) {
  const RootSystem& rs1 = s.W1->root_system();
  const RootSystem& rs2 = s.W2->root_system();
  PartialSimpleMap d;
  for (int alpha : s.A1().indices()) {
    int r2 = s.W2->act_inverse(v2, rs2.simple_root(s.a(alpha)));
    int beta = as_simple(rs2, r2);
    if (beta < 0 || !s.C2().contains(beta)) continue;
    int r1 = s.W1->act(v1, rs1.simple_root(s.c.preimage(beta)));
    int gamma = as_simple(rs1, r1);
    if (gamma < 0) continue;
    d.map[alpha] = static_cast<int8_t>(gamma);
    d.domain.add(alpha);
  }
  return d;
}

PartialSimpleMap chain_map_e(const PairSetup& s, int v1, int v2) {
  const RootSystem& rs1 = s.W1->root_system();
  const RootSystem& rs2 = s.W2->root_system();
  PartialSimpleMap e;
  for (int beta : s.C2().indices()) {
    int r1 = s.W1->act(v1, rs1.simple_root(s.c.preimage(beta)));
    int gamma = as_simple(rs1, r1);
    if (gamma < 0 || !s.A1().contains(gamma)) continue;
    int r2 = s.W2->act_inverse(v2, rs2.simple_root(s.a(gamma)));
    int delta = as_simple(rs2, r2);
    if (delta < 0) continue;
    e.map[beta] = static_cast<int8_t>(delta);
    e.domain.add(beta);
  }
  return e;
}

SimpleSubset largest_invariant_subset(const PartialSimpleMap& m, SimpleSubset start) {
  SimpleSubset S = start;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i : S.indices()) {
      if (!m.defined(i) || !S.contains(m(i))) {
        S.remove(i);
        changed = true;
      }
    }
  }
  return S;
}

StableSubsets stable_subsets(const PairSetup& s, int v1, int v2) {
  require_params(s, v1, v2);
  StableSubsets st;
  st.A1vv = largest_invariant_subset(chain_map_d(s, v1, v2), s.A1());
  st.C2vv = largest_invariant_subset(chain_map_e(s, v1, v2), s.C2());
  return st;
}

InducedIsometries induced_isometries(const PairSetup& s, int v1, int v2,
                                     const StableSubsets& st) {
  const RootSystem& rs1 = s.W1->root_system();
  const RootSystem& rs2 = s.W2->root_system();
  std::array<int8_t, kMaxRank> m1, m2;
  m1.fill(-1);
  m2.fill(-1);
  for (int alpha : st.A1vv.indices()) {
    int r2 = s.W2->act_inverse(v2, rs2.simple_root(s.a(alpha)));
    int beta = as_simple(rs2, r2);
    if (beta < 0 || !st.C2vv.contains(beta))
      throw std::logic_error("v2^-1 a left the stable subset");
    m1[alpha] = static_cast<int8_t>(beta);

    int r1 = s.W1->act_inverse(v1, rs1.simple_root(alpha));
    int gamma = as_simple(rs1, r1);
    if (gamma < 0 || !s.C1().contains(gamma))
      throw std::logic_error("v1^-1 left the simple roots");
    m2[alpha] = static_cast<int8_t>(s.c(gamma));
  }
  InducedIsometries out;
  out.v2inv_a = PartialIsometry(rs1, rs2, m1);
  out.c_v1inv = PartialIsometry(rs1, rs2, m2);
  PartialSimpleMap d = chain_map_d(s, v1, v2);
  out.d.domain = st.A1vv;
  out.d.map.fill(-1);
  for (int alpha : st.A1vv.indices()) out.d.map[alpha] = static_cast<int8_t>(d(alpha));
  if (!out.d.is_bijection_of(st.A1vv))
    throw std::logic_error("composite map is not a bijection of the stable subset");
  return out;
}

}  // namespace dcosets

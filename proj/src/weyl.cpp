#include "dcosets/weyl.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcosets {

WeylGroup WeylGroup::generate(const RootSystem& rs) {
  WeylGroup W;
  W.rs_ = &rs;
  const int nr = rs.num_roots();
  const int rank = rs.rank();

  std::vector<std::vector<int16_t>> gen(rank);
  for (int i = 0; i < rank; ++i) {
    gen[i].resize(nr);
    for (int r = 0; r < nr; ++r) gen[i][r] = static_cast<int16_t>(rs.reflect(i, r));
  }

  WeylElement id;
  id.perm.resize(nr);
  for (int r = 0; r < nr; ++r) id.perm[r] = static_cast<int16_t>(r);
  W.el_.push_back(std::move(id));
  W.index_[W.el_[0].perm] = 0;

  // BFS over right multiplication; discovery order is by length, so the
  // recorded path is a reduced word.
  for (size_t head = 0; head < W.el_.size(); ++head) {
    for (int i = 0; i < rank; ++i) {
      const WeylElement cur = W.el_[head];  // copy: el_ may reallocate
      std::vector<int16_t> perm(nr);
      for (int r = 0; r < nr; ++r) perm[r] = cur.perm[gen[i][r]];
      auto it = W.index_.find(perm);
      if (it != W.index_.end()) continue;
      WeylElement e;
      e.perm = std::move(perm);
      e.word = cur.word;
      e.word.push_back(static_cast<int8_t>(i));
      e.length = cur.length + 1;
      W.index_[e.perm] = static_cast<int>(W.el_.size());
      W.el_.push_back(std::move(e));
    }
  }

  const int n = W.order();
  W.simple_.resize(rank);
  for (int i = 0; i < rank; ++i) {
    std::vector<int16_t> perm(gen[i].begin(), gen[i].end());
    W.simple_[i] = W.index_.at(perm);
  }

  W.mult_.assign(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int16_t> perm(nr);
      for (int r = 0; r < nr; ++r) perm[r] = W.el_[a].perm[W.el_[b].perm[r]];
      W.mult_[static_cast<size_t>(a) * n + b] = W.index_.at(perm);
    }
  }
  W.inv_.resize(n);
  for (int a = 0; a < n; ++a) {
    std::vector<int16_t> perm(nr);
    for (int r = 0; r < nr; ++r) perm[W.el_[a].perm[r]] = static_cast<int16_t>(r);
    W.inv_[a] = W.index_.at(perm);
  }

  // Sanity: length equals the number of inversions.
  for (int a = 0; a < n; ++a) {
    int invs = 0;
    for (int r = 0; r < rs.num_positive(); ++r)
      if (!rs.is_positive(W.el_[a].perm[r])) ++invs;
    if (invs != W.el_[a].length) throw std::logic_error("length != inversion count");
  }
  return W;
}

std::string WeylGroup::word_string(int w) const {
  if (el_[w].word.empty()) return "e";
  std::string out;
  for (int8_t i : el_[w].word) {
    if (!out.empty()) out += " ";
    out += "s" + std::to_string(i + 1);
  }
  return out;
}

int WeylGroup::index_of_perm(const std::vector<int16_t>& perm) const {
  auto it = index_.find(perm);
  return it == index_.end() ? -1 : it->second;
}

bool WeylGroup::maps_to_positive(int w, SimpleSubset S) const {
  for (int i : S.indices())
    if (!rs_->is_positive(act(w, rs_->simple_root(i)))) return false;
  return true;
}

bool WeylGroup::inverse_maps_to_positive(int w, SimpleSubset S) const {
  return maps_to_positive(inv_[w], S);
}

std::vector<int> WeylGroup::min_reps(SimpleSubset A, SimpleSubset C) const {
  std::vector<int> out;
  for (int w = 0; w < order(); ++w)
    if (is_min_rep(w, A, C)) out.push_back(w);
  return out;
}

bool WeylGroup::is_min_rep(int w, SimpleSubset A, SimpleSubset C) const {
  return inverse_maps_to_positive(w, A) && maps_to_positive(w, C);
}

bool WeylGroup::in_parabolic(int w, SimpleSubset A) const {
  // w lies in W_A iff every inversion root of w lies in Delta_A.
  for (int r = 0; r < rs_->num_positive(); ++r)
    if (!rs_->is_positive(act(w, r)) && !rs_->in_span(r, A)) return false;
  return true;
}

std::vector<int> WeylGroup::parabolic_subgroup(SimpleSubset A) const {
  std::vector<int> out;
  for (int w = 0; w < order(); ++w)
    if (in_parabolic(w, A)) out.push_back(w);
  return out;
}

SimpleSubset WeylGroup::cap_w(SimpleSubset A, int w, SimpleSubset C) const {
  SimpleSubset out;
  for (int a : A.indices()) {
    int r = act_inverse(w, rs_->simple_root(a));
    for (int c : C.indices())
      if (r == rs_->simple_root(c)) out.add(a);
  }
  return out;
}

WeylGroup::Factorization WeylGroup::parabolic_factorize(int v, SimpleSubset D,
                                                        SimpleSubset A,
                                                        SimpleSubset C) const {
  if (!D.subset_of(A)) throw std::invalid_argument("parabolic_factorize: D not in A");
  if (!is_min_rep(v, D, C))
    throw std::invalid_argument("parabolic_factorize: v not in ^D W^C");
  Factorization out{-1, -1};
  int found = 0;
  for (int w : min_reps(A, C)) {
    int u = mult(v, inverse(w));
    if (!in_parabolic(u, A)) continue;
    if (length(v) != length(u) + length(w)) continue;
    if (!is_min_rep(u, D, cap_w(A, w, C))) continue;
    out = {u, w};
    ++found;
  }
  if (found != 1) throw std::logic_error("parabolic factorization not unique");
  return out;
}

WeylGroup::Factorization WeylGroup::parabolic_factorize_right(int v, SimpleSubset A,
                                                              SimpleSubset C,
                                                              SimpleSubset E) const {
  // v = w u  <=>  v^-1 = u^-1 w^-1 factored on the other side.
  Factorization f = parabolic_factorize(inverse(v), E, C, A);
  return {inverse(f.u), inverse(f.w)};
}

bool WeylGroup::cap_identity_check(SimpleSubset A, SimpleSubset C, int w) const {
  if (!is_min_rep(w, A, C)) throw std::invalid_argument("w not in ^A W^C");
  SimpleSubset cap = cap_w(A, w, C);

  // Delta_A+ cap w(Delta_C+) = Delta_{A cap w(C)}+
  std::vector<int> lhs;
  for (int r : rs_->sub_system_pos(A)) {
    int p = act_inverse(w, r);
    if (rs_->is_positive(p) && rs_->in_span(p, C)) lhs.push_back(r);
  }
  std::vector<int> rhs = rs_->sub_system_pos(cap);
  if (lhs != rhs) return false;

  // A cap w(Delta_C+) = A cap w(C)
  SimpleSubset lhs2;
  for (int a : A.indices()) {
    int r = act_inverse(w, rs_->simple_root(a));
    if (rs_->is_positive(r) && rs_->in_span(r, C)) lhs2.add(a);
  }
  return lhs2 == cap;
}

}  // namespace dcosets

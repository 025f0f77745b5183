#include "dcosets/fingroup.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace dcosets {

Mat Mat::identity(int n, int q) {
  Mat m;
  m.n = static_cast<int8_t>(n);
  m.q = static_cast<int8_t>(q);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  Mat r;
  r.n = n;
  r.q = q;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k) s += at(i, k) * o.at(k, j);
      r.at(i, j) = static_cast<int8_t>(s % q);
    }
  return r;
}

int Mat::det() const {
  if (n == 1) return e[0] % q;
  if (n == 2) return ((at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0)) % q + q) % q;
  int d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
          at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
          at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  return ((d % q) + q) % q;
}

uint32_t Mat::encode() const {
  uint32_t code = 0;
  for (int i = n * n - 1; i >= 0; --i) code = code * q + static_cast<uint32_t>(e[i]);
  return code;
}

std::string Mat::to_string() const {
  std::string out = "[";
  for (int i = 0; i < n; ++i) {
    if (i) out += ";";
    for (int j = 0; j < n; ++j) {
      if (j) out += ",";
      out += std::to_string(at(i, j));
    }
  }
  return out + "]";
}

FinGroup FinGroup::build(std::string_view type, int q) {
  bool sl;
  int n;
  if (type == "SL2") {
    sl = true;
    n = 2;
  } else if (type == "SL3") {
    sl = true;
    n = 3;
  } else if (type == "GL2") {
    sl = false;
    n = 2;
  } else {
    throw std::invalid_argument("unsupported group type: " + std::string(type));
  }
  if (q != 2 && q != 3) throw std::invalid_argument("unsupported modulus");
  if (type == "SL3" && q != 2) throw std::invalid_argument("SL3 supported over F2 only");

  FinGroup G;
  G.name_ = std::string(type) + "/F" + std::to_string(q);
  G.q_ = q;
  G.n_ = n;
  G.rankH_ = sl ? n - 1 : n;
  G.rs_ = std::make_shared<RootSystem>(RootSystem::build("A" + std::to_string(n - 1)));

  // Enumerate all invertible matrices with the determinant constraint.
  int cells = n * n;
  int total = 1;
  for (int i = 0; i < cells; ++i) total *= q;
  for (int code = 0; code < total; ++code) {
    Mat m;
    m.n = static_cast<int8_t>(n);
    m.q = static_cast<int8_t>(q);
    int c = code;
    for (int i = 0; i < cells; ++i) {
      m.e[i] = static_cast<int8_t>(c % q);
      c /= q;
    }
    int d = m.det();
    if (sl ? d == 1 : d != 0) G.mats_.push_back(m);
  }
  std::sort(G.mats_.begin(), G.mats_.end(),
            [](const Mat& a, const Mat& b) { return a.encode() < b.encode(); });
  const int N = static_cast<int>(G.mats_.size());
  if (static_cast<int64_t>(N) * N > 1000000)
    throw std::invalid_argument("group size cap exceeded");
  for (int i = 0; i < N; ++i) G.code_index_[G.mats_[i].encode()] = i;
  G.id_ = G.index_of(Mat::identity(n, q));

  G.mul_.resize(static_cast<size_t>(N) * N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      G.mul_[static_cast<size_t>(a) * N + b] = G.index_of(G.mats_[a] * G.mats_[b]);
  G.inv_.assign(N, -1);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (G.mul_[static_cast<size_t>(a) * N + b] == G.id_) G.inv_[a] = b;

  // Root alpha = sum c_k (e_k - e_{k+1}) acts through the matrix unit E_ij.
  const RootSystem& rs = *G.rs_;
  G.root_entry_.resize(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) {
    std::array<int, 4> wt{};
    for (int k = 0; k < rs.rank(); ++k) {
      wt[k] += rs.coeff(r, k);
      wt[k + 1] -= rs.coeff(r, k);
    }
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k) {
      if (wt[k] == 1) i = k;
      if (wt[k] == -1) j = k;
    }
    if (i < 0 || j < 0) throw std::logic_error("bad root weight");
    G.root_entry_[r] = {static_cast<int8_t>(i), static_cast<int8_t>(j)};
  }

  // Fill every subgroup cache up front; afterwards the object is
  // immutable and safe for shared reads.
  for (uint32_t bits = 0; bits < (1u << rs.rank()); ++bits) {
    SimpleSubset D(bits);
    G.parabolic(D);
    G.levi(D);
    G.levi_derived(D);
    G.levi_center(D);
    G.levi_unipotent(D);
    G.radical(D);
    G.radical_minus(D);
    G.levi_project(D, G.id());
  }
  G.torus();
  return G;
}

int FinGroup::index_of(const Mat& m) const {
  auto it = code_index_.find(m.encode());
  if (it == code_index_.end()) throw std::invalid_argument("matrix not in group");
  return it->second;
}

int FinGroup::one_param(int root, int t) const {
  Mat m = Mat::identity(n_, q_);
  m.at(root_entry_[root][0], root_entry_[root][1]) = static_cast<int8_t>(((t % q_) + q_) % q_);
  return index_of(m);
}

std::vector<int> FinGroup::root_subgroup(int root) const {
  std::vector<int> out;
  for (int t = 0; t < q_; ++t) out.push_back(one_param(root, t));
  return out;
}

Subgroup FinGroup::make_subgroup(std::vector<int> members) const {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Subgroup s;
  s.mask.assign(order(), false);
  for (int g : members) s.mask[g] = true;
  for (int g : members)
    for (int h : members)
      if (!s.mask[mul(g, h)]) throw std::logic_error("set is not closed under product");
  s.elems.assign(members.begin(), members.end());
  return s;
}

Subgroup FinGroup::closure(const std::vector<int>& gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<int32_t> out;
  std::queue<int> todo;
  seen[id()] = true;
  out.push_back(id());
  todo.push(id());
  while (!todo.empty()) {
    int g = todo.front();
    todo.pop();
    for (int h : gens) {
      int x = mul(g, h);
      if (!seen[x]) {
        seen[x] = true;
        out.push_back(x);
        todo.push(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  Subgroup s;
  s.elems = std::move(out);
  s.mask = std::move(seen);
  return s;
}

Subgroup FinGroup::intersect(const Subgroup& x, const Subgroup& y) const {
  Subgroup s;
  s.mask.assign(order(), false);
  for (int g : x.elems)
    if (y.contains(g)) {
      s.elems.push_back(g);
      s.mask[g] = true;
    }
  return s;
}

Subgroup FinGroup::product_set(const Subgroup& x, const Subgroup& y) const {
  std::vector<int> out;
  for (int g : x.elems)
    for (int h : y.elems) out.push_back(mul(g, h));
  return make_subgroup(std::move(out));
}

Subgroup FinGroup::conj_subgroup(int g, const Subgroup& x) const {
  std::vector<int> out;
  out.reserve(x.elems.size());
  for (int h : x.elems) out.push_back(conj(g, h));
  std::sort(out.begin(), out.end());
  Subgroup s;
  s.mask.assign(order(), false);
  for (int h : out) s.mask[h] = true;
  s.elems.assign(out.begin(), out.end());
  return s;
}

Subgroup FinGroup::trivial() const { return make_subgroup({id()}); }

Subgroup FinGroup::whole() const {
  std::vector<int> all(order());
  for (int i = 0; i < order(); ++i) all[i] = i;
  Subgroup s;
  s.elems.assign(all.begin(), all.end());
  s.mask.assign(order(), true);
  return s;
}

const Subgroup& FinGroup::torus() const {
  if (torus_.mask.empty()) {
    std::vector<int> out;
    for (int g = 0; g < order(); ++g) {
      const Mat& m = mats_[g];
      bool diag = true;
      for (int i = 0; i < n_ && diag; ++i)
        for (int j = 0; j < n_; ++j)
          if (i != j && m.at(i, j) != 0) {
            diag = false;
            break;
          }
      if (diag) out.push_back(g);
    }
    torus_ = make_subgroup(std::move(out));
  }
  return torus_;
}

const Subgroup& FinGroup::parabolic(SimpleSubset D) const {
  auto it = parabolic_.find(D.bits());
  if (it != parabolic_.end()) return it->second;
  std::vector<int> gens = torus().elems;
  const RootSystem& rs = *rs_;
  for (int r = 0; r < rs.num_positive(); ++r) gens.push_back(one_param(r, 1));
  for (int r : rs.sub_system_pos(D)) gens.push_back(one_param(rs.negate(r), 1));
  return parabolic_.emplace(D.bits(), closure(gens)).first->second;
}

const Subgroup& FinGroup::levi(SimpleSubset D) const {
  auto it = levi_.find(D.bits());
  if (it != levi_.end()) return it->second;
  std::vector<int> gens = torus().elems;
  for (int r : rs_->sub_system(D)) gens.push_back(one_param(r, 1));
  return levi_.emplace(D.bits(), closure(gens)).first->second;
}

const Subgroup& FinGroup::levi_derived(SimpleSubset D) const {
  auto it = levi_derived_.find(D.bits());
  if (it != levi_derived_.end()) return it->second;
  std::vector<int> gens = {id()};
  for (int r : rs_->sub_system(D)) gens.push_back(one_param(r, 1));
  return levi_derived_.emplace(D.bits(), closure(gens)).first->second;
}

const Subgroup& FinGroup::levi_center(SimpleSubset D) const {
  auto it = levi_center_.find(D.bits());
  if (it != levi_center_.end()) return it->second;
  const Subgroup& M = levi(D);
  std::vector<int> out;
  for (int z : M.elems) {
    bool central = true;
    for (int m : M.elems)
      if (mul(z, m) != mul(m, z)) {
        central = false;
        break;
      }
    if (central) out.push_back(z);
  }
  return levi_center_.emplace(D.bits(), make_subgroup(std::move(out))).first->second;
}

const Subgroup& FinGroup::levi_unipotent(SimpleSubset D) const {
  auto it = levi_unipotent_.find(D.bits());
  if (it != levi_unipotent_.end()) return it->second;
  std::vector<int> gens = {id()};
  for (int r : rs_->sub_system_pos(D)) gens.push_back(one_param(r, 1));
  return levi_unipotent_.emplace(D.bits(), closure(gens)).first->second;
}

const Subgroup& FinGroup::radical(SimpleSubset D) const {
  auto it = radical_.find(D.bits());
  if (it != radical_.end()) return it->second;
  std::vector<int> gens = {id()};
  for (int r = 0; r < rs_->num_positive(); ++r)
    if (!rs_->in_span(r, D)) gens.push_back(one_param(r, 1));
  return radical_.emplace(D.bits(), closure(gens)).first->second;
}

const Subgroup& FinGroup::radical_minus(SimpleSubset D) const {
  auto it = radical_minus_.find(D.bits());
  if (it != radical_minus_.end()) return it->second;
  std::vector<int> gens = {id()};
  for (int r = 0; r < rs_->num_positive(); ++r)
    if (!rs_->in_span(r, D)) gens.push_back(one_param(rs_->negate(r), 1));
  return radical_minus_.emplace(D.bits(), closure(gens)).first->second;
}

int FinGroup::levi_project(SimpleSubset D, int p) const {
  auto it = levi_proj_.find(D.bits());
  if (it == levi_proj_.end()) {
    std::vector<int32_t> proj(order(), -1);
    const Subgroup& M = levi(D);
    const Subgroup& U = radical(D);
    for (int m : M.elems)
      for (int u : U.elems) {
        int x = mul(m, u);
        if (proj[x] != -1 && proj[x] != m)
          throw std::logic_error("Levi factorization not unique");
        proj[x] = m;
      }
    it = levi_proj_.emplace(D.bits(), std::move(proj)).first;
  }
  int m = it->second[p];
  if (m < 0) throw std::invalid_argument("element outside the parabolic");
  return m;
}

std::vector<int> FinGroup::rep_section(const WeylGroup& W, int variant) const {
  // n_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t), t = +-1.
  const RootSystem& rs = *rs_;
  int t = variant == 0 ? 1 : q_ - 1;
  int tinv = t;  // t = +-1 is its own inverse mod q
  std::vector<int> sdot(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) {
    int r = rs.simple_root(i);
    int a = one_param(r, t);
    int b = one_param(rs.negate(r), q_ - tinv);
    sdot[i] = mul(mul(a, b), a);
  }
  std::vector<int> out(W.order());
  for (int w = 0; w < W.order(); ++w) {
    int g = id();
    for (int8_t i : W.word(w)) g = mul(g, sdot[i]);
    out[w] = g;
  }
  // The section must normalize H and permute the root subgroups as w does.
  for (int w = 0; w < W.order(); ++w) {
    for (int h : torus().elems)
      if (!torus().contains(conj(out[w], h)))
        throw std::logic_error("representative does not normalize the torus");
    for (int r = 0; r < rs.num_roots(); ++r) {
      int img = conj(out[w], one_param(r, 1));
      const auto& ur = root_subgroup(W.act(w, r));
      if (std::find(ur.begin(), ur.end(), img) == ur.end())
        throw std::logic_error("representative acts wrongly on a root subgroup");
    }
  }
  return out;
}

}  // namespace dcosets

#include "dcosets/rootsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dcosets {

std::string SimpleSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

CartanMatrix::CartanMatrix(int rank, const int* entries) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) throw std::invalid_argument("cartan rank out of range");
  for (int i = 0; i < rank * rank; ++i) e_[i] = static_cast<int8_t>(entries[i]);
  validate();
}

void CartanMatrix::validate() const {
  for (int i = 0; i < rank_; ++i) {
    if ((*this)(i, i) != 2) throw std::invalid_argument("cartan diagonal must be 2");
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      int v = (*this)(i, j);
      if (v > 0) throw std::invalid_argument("cartan off-diagonal must be <= 0");
      if ((v == 0) != ((*this)(j, i) == 0))
        throw std::invalid_argument("cartan zero pattern must be symmetric");
    }
  }
}

namespace {

// Cartan matrix of one irreducible factor, Bourbaki numbering.
// B_n: alpha_n short; C_n: alpha_n long; D_n: alpha_n attached to alpha_{n-2};
// G2: alpha_1 short.
void fill_factor(char letter, int rank, int off, int total, std::vector<int>& m) {
  auto at = [&](int i, int j) -> int& { return m[(off + i) * total + (off + j)]; };
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      at(i, i + 1) = -1;
      at(i + 1, i) = -1;
    }
  };
  switch (letter) {
    case 'A':
      chain(rank);
      break;
    case 'B':
      chain(rank);
      at(rank - 2, rank - 1) = -2;
      break;
    case 'C':
      chain(rank);
      at(rank - 1, rank - 2) = -2;
      break;
    case 'D':
      chain(rank - 1);
      at(rank - 3, rank - 1) = -1;
      at(rank - 1, rank - 3) = -1;
      break;
    case 'G':
      at(0, 1) = -1;
      at(1, 0) = -3;
      break;
    default:
      throw std::invalid_argument("unsupported type letter");
  }
}

bool factor_supported(char letter, int rank) {
  switch (letter) {
    case 'A': return rank >= 1 && rank <= 4;
    case 'B': return rank >= 2 && rank <= 4;
    case 'C': return rank >= 3 && rank <= 4;
    case 'D': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

}  // namespace

RootSystem RootSystem::build(std::string_view type) {
  // Parse "A2" or a product "A1xA1".
  std::vector<std::pair<char, int>> factors;
  size_t cur = 0;
  while (cur < type.size()) {
    char letter = static_cast<char>(std::toupper(type[cur]));
    ++cur;
    if (cur >= type.size() || !std::isdigit(type[cur]))
      throw std::invalid_argument("bad root system type: " + std::string(type));
    int rank = type[cur] - '0';
    ++cur;
    if (!factor_supported(letter, rank))
      throw std::invalid_argument("unsupported root system type: " + std::string(type));
    factors.push_back({letter, rank});
    if (cur < type.size()) {
      if (type[cur] != 'x' && type[cur] != 'X')
        throw std::invalid_argument("bad root system type: " + std::string(type));
      ++cur;
    }
  }
  if (factors.empty()) throw std::invalid_argument("empty root system type");

  int total = 0;
  for (auto& [l, r] : factors) total += r;
  if (total > 4) throw std::invalid_argument("total rank capped at 4: " + std::string(type));

  std::vector<int> entries(total * total, 0);
  for (int i = 0; i < total; ++i) entries[i * total + i] = 2;
  int off = 0;
  for (auto& [l, r] : factors) {
    fill_factor(l, r, off, total, entries);
    off += r;
  }

  RootSystem rs;
  rs.cartan_ = CartanMatrix(total, entries.data());
  rs.name_ = std::string(type);

  // Close the simple roots under simple reflections.
  std::set<RootCoeffs> seen;
  std::vector<RootCoeffs> queue;
  for (int i = 0; i < total; ++i) {
    RootCoeffs c{};
    c[i] = 1;
    seen.insert(c);
    queue.push_back(c);
  }
  auto pair_with = [&](const RootCoeffs& c, int j) {
    int s = 0;
    for (int i = 0; i < total; ++i) s += c[i] * rs.cartan_(i, j);
    return s;
  };
  while (!queue.empty()) {
    RootCoeffs c = queue.back();
    queue.pop_back();
    for (int j = 0; j < total; ++j) {
      RootCoeffs r = c;
      r[j] = static_cast<int8_t>(r[j] - pair_with(c, j));
      if (seen.insert(r).second) queue.push_back(r);
    }
  }

  std::vector<RootCoeffs> pos, neg;
  for (const auto& c : seen) {
    bool nonneg = true, nonpos = true;
    for (int i = 0; i < total; ++i) {
      if (c[i] < 0) nonneg = false;
      if (c[i] > 0) nonpos = false;
    }
    if (nonneg == nonpos) throw std::logic_error("mixed-sign root");
    if (nonneg) pos.push_back(c);
  }
  auto ht = [&](const RootCoeffs& c) {
    int h = 0;
    for (int i = 0; i < total; ++i) h += c[i];
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const RootCoeffs& x, const RootCoeffs& y) {
    if (ht(x) != ht(y)) return ht(x) < ht(y);
    return x < y;
  });
  rs.npos_ = static_cast<int>(pos.size());
  rs.roots_ = pos;
  for (const auto& c : pos) {
    RootCoeffs n{};
    for (int i = 0; i < total; ++i) n[i] = static_cast<int8_t>(-c[i]);
    rs.roots_.push_back(n);
  }
  if (static_cast<int>(seen.size()) != 2 * rs.npos_)
    throw std::logic_error("root count mismatch");

  rs.simple_.resize(total);
  for (int i = 0; i < total; ++i) {
    RootCoeffs c{};
    c[i] = 1;
    rs.simple_[i] = rs.root_index(c);
  }

  rs.reflect_.resize(rs.roots_.size() * total);
  for (int r = 0; r < static_cast<int>(rs.roots_.size()); ++r) {
    for (int j = 0; j < total; ++j) {
      RootCoeffs c = rs.roots_[r];
      c[j] = static_cast<int8_t>(c[j] - rs.pairing(r, j));
      int idx = rs.root_index(c);
      if (idx < 0) throw std::logic_error("reflection left the root set");
      rs.reflect_[r * total + j] = static_cast<int16_t>(idx);
    }
  }
  return rs;
}

int RootSystem::height(int r) const {
  int h = 0;
  for (int i = 0; i < rank(); ++i) h += roots_[r][i];
  return h;
}

int RootSystem::root_index(const RootCoeffs& c) const {
  for (int r = 0; r < static_cast<int>(roots_.size()); ++r)
    if (roots_[r] == c) return r;
  return -1;
}

int RootSystem::pairing(int r, int j) const {
  int s = 0;
  for (int i = 0; i < rank(); ++i) s += roots_[r][i] * cartan_(i, j);
  return s;
}

std::vector<int> RootSystem::sub_system(SimpleSubset D) const {
  std::vector<int> out;
  for (int r = 0; r < num_roots(); ++r)
    if (in_span(r, D)) out.push_back(r);
  return out;
}

std::vector<int> RootSystem::sub_system_pos(SimpleSubset D) const {
  std::vector<int> out;
  for (int r = 0; r < npos_; ++r)
    if (in_span(r, D)) out.push_back(r);
  return out;
}

int RootSystem::num_pos_in(SimpleSubset D) const {
  int n = 0;
  for (int r = 0; r < npos_; ++r)
    if (in_span(r, D)) ++n;
  return n;
}

SimpleSubset RootSystem::support(int r) const {
  SimpleSubset s;
  for (int i = 0; i < rank(); ++i)
    if (roots_[r][i] != 0) s.add(i);
  return s;
}

std::string RootSystem::root_to_string(int r) const {
  std::string out;
  for (int i = 0; i < rank(); ++i) {
    int c = roots_[r][i];
    if (c == 0) continue;
    if (!out.empty() && c > 0) out += "+";
    if (c == -1)
      out += "-";
    else if (c != 1)
      out += std::to_string(c);
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

}  // namespace dcosets

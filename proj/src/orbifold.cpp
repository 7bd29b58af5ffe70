#include "pqs/orbifold.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pqs {

// --- Signature -------------------------------------------------------------

Signature::Signature(int genus_prime, std::vector<int> multiplicities)
    : genus(genus_prime), m(std::move(multiplicities)) {
  if (genus < 0) throw std::invalid_argument("negative base genus");
  for (int x : m) {
    if (x < 2) throw std::invalid_argument("branch multiplicity below 2");
  }
  std::sort(m.begin(), m.end());
}

namespace {

int parse_positive(std::string_view tok) {
  if (tok.empty()) throw std::invalid_argument("empty number in signature");
  int v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad character in signature: " + std::string(tok));
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw std::invalid_argument("number too large in signature");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Signature Signature::parse(std::string_view text) {
  text = trim(text);
  int genus = 0;
  if (auto semi = text.find(';'); semi != std::string_view::npos) {
    genus = parse_positive(trim(text.substr(0, semi)));
    text = trim(text.substr(semi + 1));
  }
  std::vector<int> ms;
  if (!text.empty() && text != "-") {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      std::string_view tok = trim(text.substr(start, comma - start));
      int count = 1;
      if (auto caret = tok.find('^'); caret != std::string_view::npos) {
        count = parse_positive(trim(tok.substr(caret + 1)));
        tok = trim(tok.substr(0, caret));
        if (count < 1) throw std::invalid_argument("zero exponent in signature");
      }
      const int v = parse_positive(tok);
      for (int i = 0; i < count; ++i) ms.push_back(v);
      start = comma + 1;
    }
  }
  return Signature(genus, std::move(ms));
}

Rational Signature::theta() const {
  Rational t(2 * genus - 2);
  for (int x : m) t += Rational(x - 1, x);
  return t;
}

std::string Signature::to_string() const {
  std::string s = std::to_string(genus) + ";";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(m[i]);
  }
  return s;
}

std::string Signature::compact() const {
  if (m.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!s.empty()) s += ',';
    s += std::to_string(m[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

RhGenus rh_genus(std::int64_t group_order, const Signature& sig) {
  const Rational two_g_minus_2 = Rational(group_order) * sig.theta();
  RhGenus out;
  if (two_g_minus_2.denominator() != 1 || two_g_minus_2.numerator() % 2 != 0) return out;
  out.integral = true;
  out.genus = two_g_minus_2.numerator() / 2 + 1;
  return out;
}

// --- generating vectors ----------------------------------------------------------

bool is_generating_vector(const FiniteGroup& g, const Signature& sig,
                          std::span<const Elem> hyperbolic, std::span<const Elem> branch) {
  if (hyperbolic.size() != 2 * static_cast<std::size_t>(sig.genus) || branch.size() != sig.r()) return false;
  Elem prod = FiniteGroup::identity();
  for (std::size_t i = 0; i < hyperbolic.size(); i += 2) {
    const Elem a = hyperbolic[i], b = hyperbolic[i + 1];
    prod = g.mul(prod, g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  }
  for (std::size_t i = 0; i < branch.size(); ++i) {
    if (g.element_order(branch[i]) != sig.m[i]) return false;
    prod = g.mul(prod, branch[i]);
  }
  if (prod != FiniteGroup::identity()) return false;
  std::vector<Elem> all(hyperbolic.begin(), hyperbolic.end());
  all.insert(all.end(), branch.begin(), branch.end());
  return generates(g, all);
}

namespace {

// Rows whose entries fit in `bits` bits each pack into one 64-bit key, first
// entry most significant, so key order is row order.
int packing_bits(std::size_t order, std::size_t stride) {
  const int bits = std::max(1, static_cast<int>(std::bit_width(order - 1)));
  return stride > 0 && bits * stride <= 64 ? bits : 0;
}

std::uint64_t pack_row(std::span<const Elem> row, int bits) {
  std::uint64_t key = 0;
  for (Elem x : row) key = (key << bits) | x;
  return key;
}

}  // namespace

VectorSet::VectorSet(const FiniteGroup& g, Signature sig, std::vector<Elem> flat, std::size_t count)
    : group_(&g), sig_(std::move(sig)), stride_(2 * sig_.genus + sig_.r()), flat_(std::move(flat)),
      count_(count) {
  bits_ = packing_bits(g.order(), stride_);
  if (bits_) {
    keys_.resize(count_);
    for (std::size_t i = 0; i < count_; ++i) keys_[i] = pack_row(entries(i), bits_);
  }
}

GeneratingVector VectorSet::at(std::size_t i) const {
  GeneratingVector v;
  v.group = group_;
  v.signature = sig_;
  auto h = hyperbolic(i);
  auto b = branch(i);
  v.hyperbolic.assign(h.begin(), h.end());
  v.branch.assign(b.begin(), b.end());
  return v;
}

std::optional<std::size_t> VectorSet::find(std::span<const Elem> key) const {
  if (key.size() != stride_) return std::nullopt;
  if (stride_ == 0) return count_ > 0 ? std::optional<std::size_t>(0) : std::nullopt;
  if (bits_) {
    const std::uint64_t k = pack_row(key, bits_);
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) return std::nullopt;
    return static_cast<std::size_t>(it - keys_.begin());
  }
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto e = entries(mid);
    if (std::lexicographical_compare(e.begin(), e.end(), key.begin(), key.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_ && std::equal(key.begin(), key.end(), entries(lo).begin())) return lo;
  return std::nullopt;
}

namespace {

// Sorts rows of the given stride and removes duplicates; returns row count.
std::size_t sort_unique_rows(std::vector<Elem>& flat, std::size_t stride, std::size_t order) {
  const std::size_t rows = flat.size() / stride;
  if (const int bits = packing_bits(order, stride)) {
    std::vector<std::uint64_t> keys(rows);
    for (std::size_t i = 0; i < rows; ++i) keys[i] = pack_row({flat.data() + i * stride, stride}, bits);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    flat.resize(keys.size() * stride);
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::uint64_t k = keys[i];
      for (std::size_t j = stride; j-- > 0; k >>= bits) flat[i * stride + j] = static_cast<Elem>(k & mask);
    }
    return keys.size();
  }
  std::vector<std::size_t> idx(rows);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto row = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * stride); };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + stride, row(b), row(b) + stride);
  });
  std::vector<Elem> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < rows; ++k) {
    const std::size_t i = idx[k];
    if (!out.empty() && std::equal(row(i), row(i) + stride, out.end() - static_cast<std::ptrdiff_t>(stride))) continue;
    out.insert(out.end(), row(i), row(i) + stride);
  }
  flat = std::move(out);
  return flat.size() / stride;
}

// Genus-0 search: gamma_1 over conjugacy class representatives, the middle
// entries over elements of the required order, the last one forced.
void search_genus0(const FiniteGroup& g, const Signature& sig, std::vector<Elem>& found) {
  const std::size_t r = sig.r();
  std::vector<Elem> cur(r);
  std::vector<Elem> prefix(r + 1, FiniteGroup::identity());

  const auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos + 1 == r) {
      const Elem last = g.inv(prefix[pos]);
      if (g.element_order(last) != sig.m[pos]) return;
      cur[pos] = last;
      if (!generates(g, cur)) return;
      found.insert(found.end(), cur.begin(), cur.end());
      return;
    }
    for (Elem x : g.elements_of_order(sig.m[pos])) {
      cur[pos] = x;
      prefix[pos + 1] = g.mul(prefix[pos], x);
      self(self, pos + 1);
    }
  };

  for (const auto& cls : g.conjugacy_classes()) {
    const Elem rep = cls.front();
    if (g.element_order(rep) != sig.m[0]) continue;
    cur[0] = rep;
    prefix[1] = rep;
    if (r == 1) {
      if (rep == FiniteGroup::identity() && generates(g, cur)) found.push_back(rep);
      continue;
    }
    rec(rec, 1);
  }
}

// Direct search over all tuples; used for g' > 0 only.
void search_general(const FiniteGroup& g, const Signature& sig, std::vector<Elem>& found) {
  const std::size_t h = 2 * static_cast<std::size_t>(sig.genus);
  const std::size_t stride = h + sig.r();
  std::vector<Elem> cur(stride);
  const auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == stride) {
      if (is_generating_vector(g, sig, std::span<const Elem>(cur).first(h),
                               std::span<const Elem>(cur).subspan(h))) {
        found.insert(found.end(), cur.begin(), cur.end());
      }
      return;
    }
    if (pos < h) {
      for (Elem x = 0; x < static_cast<Elem>(g.order()); ++x) {
        cur[pos] = x;
        self(self, pos + 1);
      }
    } else {
      for (Elem x : g.elements_of_order(sig.m[pos - h])) {
        cur[pos] = x;
        self(self, pos + 1);
      }
    }
  };
  rec(rec, 0);
}

}  // namespace

VectorSet enumerate_generating_vectors(const FiniteGroup& g, const Signature& sig) {
  const std::size_t stride = 2 * static_cast<std::size_t>(sig.genus) + sig.r();
  if (stride == 0) {
    // The empty vector generates only the trivial group.
    return VectorSet(g, sig, {}, g.order() == 1 ? 1 : 0);
  }
  std::vector<Elem> found;
  if (sig.genus == 0) {
    search_genus0(g, sig, found);
    // Expand class representatives to all simultaneous conjugates.
    const std::size_t reps = found.size() / stride;
    std::vector<Elem> all;
    all.reserve(found.size() * static_cast<std::size_t>(g.order()));
    for (std::size_t k = 0; k < reps; ++k) {
      for (Elem c = 0; c < static_cast<Elem>(g.order()); ++c) {
        for (std::size_t i = 0; i < stride; ++i) all.push_back(g.conj(found[k * stride + i], c));
      }
    }
    found = std::move(all);
  } else {
    search_general(g, sig, found);
  }
  const std::size_t count = sort_unique_rows(found, stride, g.order());
  return VectorSet(g, sig, std::move(found), count);
}

std::vector<Elem> stabilizer_set(const FiniteGroup& g, std::span<const Elem> branch) {
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  for (Elem x : branch) {
    Elem p = x;
    while (p != FiniteGroup::identity()) {
      if (!in[p]) {
        for (Elem y : g.conjugacy_classes()[g.class_index(p)]) in[y] = true;
      }
      p = g.mul(p, x);
    }
  }
  std::vector<Elem> out;
  for (Elem e = 0; e < static_cast<Elem>(g.order()); ++e) {
    if (in[e]) out.push_back(e);
  }
  return out;
}

// --- Hurwitz moves -----------------------------------------------------------------

void braid_move(const FiniteGroup& g, std::span<Elem> v, std::size_t i, bool inverse) {
  const Elem a = v[i], b = v[i + 1];
  if (!inverse) {
    v[i] = g.mul(g.mul(a, b), g.inv(a));
    v[i + 1] = a;
  } else {
    v[i] = b;
    v[i + 1] = g.mul(g.mul(g.inv(b), a), b);
  }
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;  // the smaller index stays the root
  }
  std::vector<std::size_t> parent;
};

// Generators of the braids whose permutation preserves the ordered
// multiplicities: sigma_i inside blocks of equal m, and the pure braids
// A_ij = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1. Blocks are
// contiguous, so A_ij with m_i = m_j is already a word in the block's sigma_k.
using BraidWord = std::vector<std::pair<std::size_t, bool>>;  // (position, inverse)

std::vector<BraidWord> colour_preserving_braids(const std::vector<int>& m) {
  std::vector<BraidWord> out;
  const std::size_t r = m.size();
  for (std::size_t i = 0; i + 1 < r; ++i) {
    if (m[i] == m[i + 1]) out.push_back({{i, false}});
  }
  for (std::size_t i = 0; i + 1 < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (m[i] == m[j]) continue;
      BraidWord w;
      for (std::size_t k = j - 1; k > i; --k) w.push_back({k, false});
      w.push_back({i, false});
      w.push_back({i, false});
      for (std::size_t k = i + 1; k < j; ++k) w.push_back({k, true});
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

HurwitzClasses hurwitz_classes(const VectorSet& vs) {
  if (vs.signature().genus != 0) throw std::invalid_argument("Hurwitz classes need a genus-0 signature");
  const FiniteGroup& g = vs.group();
  const std::size_t n = vs.size();
  UnionFind uf(n);
  const auto braids = colour_preserving_braids(vs.signature().m);
  std::vector<Elem> w(vs.stride());
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = vs.entries(k);
    for (const auto& word : braids) {
      std::copy(v.begin(), v.end(), w.begin());
      for (const auto& [pos, inv] : word) braid_move(g, w, pos, inv);
      uf.unite(k, *vs.find(w));
    }
    for (Elem c : g.generators()) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = g.conj(v[i], c);
      uf.unite(k, *vs.find(w));
    }
  }
  HurwitzClasses out;
  out.class_of.resize(n);
  std::vector<std::size_t> id(n, static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t root = uf.find(k);
    if (id[root] == static_cast<std::size_t>(-1)) {
      id[root] = out.representatives.size();
      out.representatives.push_back(k);
    }
    out.class_of[k] = id[root];
  }
  return out;
}

FamilyOrbits hurwitz_orbits(const VectorSet& v1, const HurwitzClasses& c1, const VectorSet& v2,
                            const HurwitzClasses& c2, bool swap_allowed,
                            const std::optional<std::vector<Automorphism>>& aut_generators) {
  FamilyOrbits out;
  if (!aut_generators) {
    out.reason = "N not computed: automorphism group unavailable";
    return out;
  }
  if (swap_allowed && v1.signature() != v2.signature()) {
    throw std::invalid_argument("factor swap requires equal signatures");
  }
  const std::size_t n1 = c1.count(), n2 = c2.count();

  // Action of each automorphism generator on the classes of one factor.
  const auto class_perm = [](const VectorSet& vs, const HurwitzClasses& hc, const Automorphism& a) {
    std::vector<std::size_t> perm(hc.count());
    std::vector<Elem> w(vs.stride());
    for (std::size_t c = 0; c < hc.count(); ++c) {
      const auto v = vs.entries(hc.representatives[c]);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = a[v[i]];
      perm[c] = hc.class_of[*vs.find(w)];
    }
    return perm;
  };
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> moves;
  for (const auto& a : *aut_generators) moves.emplace_back(class_perm(v1, c1, a), class_perm(v2, c2, a));

  std::vector<bool> seen(n1 * n2, false);
  for (std::size_t start = 0; start < n1 * n2; ++start) {
    if (seen[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> orbit;
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t a = queue[h] / n2, b = queue[h] % n2;
      orbit.emplace_back(a, b);
      const auto visit = [&](std::size_t x, std::size_t y) {
        const std::size_t key = x * n2 + y;
        if (!seen[key]) {
          seen[key] = true;
          queue.push_back(key);
        }
      };
      for (const auto& [p1, p2] : moves) visit(p1[a], p2[b]);
      if (swap_allowed) visit(b, a);
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  out.computed = true;
  return out;
}

}  // namespace pqs

#include "pqs/group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace pqs {

// --- Permutation -------------------------------------------------------------

Permutation::Permutation(std::vector<std::uint16_t> images) : images_(std::move(images)) {}

Permutation Permutation::from_one_based(std::span<const int> images) {
  const std::size_t n = images.size();
  std::vector<std::uint16_t> out(n);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = images[i];
    if (v < 1 || static_cast<std::size_t>(v) > n || hit[v - 1]) {
      throw std::invalid_argument("permutation images are not a bijection on 1.." +
                                  std::to_string(n));
    }
    hit[v - 1] = true;
    out[i] = static_cast<std::uint16_t>(v - 1);
  }
  return Permutation(std::move(out));
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<std::uint16_t> out(degree);
  std::iota(out.begin(), out.end(), std::uint16_t{0});
  return Permutation(std::move(out));
}

Permutation Permutation::then(const Permutation& other) const {
  std::vector<std::uint16_t> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = other.images_[images_[i]];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint16_t> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[images_[i]] = static_cast<std::uint16_t>(i);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::string to_string(const GroupLabel& label) {
  return "G(" + std::to_string(label.order) + "," + std::to_string(label.index) + ")";
}

// --- FiniteGroup ---------------------------------------------------------------

FiniteGroup FiniteGroup::from_generators(GroupLabel label, std::string name, std::size_t degree,
                                         std::vector<Permutation> generators, int declared_order) {
  if (degree == 0) throw GroupError("degree must be positive");
  for (const auto& p : generators) {
    if (p.degree() != degree) throw GroupError("generator degree differs from group degree");
  }

  FiniteGroup g;
  g.label_ = label;
  g.name_ = std::move(name);
  g.degree_ = degree;
  g.generator_perms_ = std::move(generators);

  g.elements_.push_back(Permutation::identity(degree));
  g.index_.emplace(g.elements_.front(), 0);
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (const auto& gen : g.generator_perms_) {
      Permutation y = g.elements_[head].then(gen);
      if (g.index_.contains(y)) continue;
      if (declared_order > 0 && g.elements_.size() >= static_cast<std::size_t>(declared_order)) {
        throw GroupError("closure exceeds declared order " + std::to_string(declared_order));
      }
      g.index_.emplace(y, static_cast<Elem>(g.elements_.size()));
      g.elements_.push_back(std::move(y));
    }
  }
  const std::size_t n = g.elements_.size();
  if (declared_order > 0 && n != static_cast<std::size_t>(declared_order)) {
    throw GroupError("generators generate a group of order " + std::to_string(n) +
                     ", declared order " + std::to_string(declared_order));
  }
  if (n > 65535) throw GroupError("group too large for the element table");

  for (const auto& gen : g.generator_perms_) g.generators_.push_back(g.index_.at(gen));

  g.table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      g.table_[a * n + b] = g.index_.at(g.elements_[a].then(g.elements_[b]));
    }
  }
  g.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.table_[a * n + b] == 0) {
        g.inverse_[a] = static_cast<Elem>(b);
        break;
      }
    }
  }
  g.orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    int k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = g.table_[x * n + a];
      ++k;
    }
    g.orders_[a] = k;
    if (k >= 2) g.by_order_[k].push_back(static_cast<Elem>(a));
  }
  for (const auto& [m, elems] : g.by_order_) g.distinct_orders_.push_back(m);

  for (std::size_t a = 0; a < n && g.abelian_; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (g.table_[a * n + b] != g.table_[b * n + a]) {
        g.abelian_ = false;
        break;
      }
    }
  }

  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  g.class_of_.assign(n, unassigned);
  for (std::size_t x = 0; x < n; ++x) {
    if (g.class_of_[x] != unassigned) continue;
    std::vector<Elem> cls;
    for (std::size_t h = 0; h < n; ++h) {
      const Elem y = g.conj(static_cast<Elem>(x), static_cast<Elem>(h));
      if (g.class_of_[y] == unassigned) {
        g.class_of_[y] = g.classes_.size();
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

std::optional<Elem> FiniteGroup::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteGroup::pow(Elem a, long k) const {
  const long m = orders_[a];
  k %= m;
  if (k < 0) k += m;
  Elem x = identity();
  for (long i = 0; i < k; ++i) x = mul(x, a);
  return x;
}

std::span<const Elem> FiniteGroup::elements_of_order(int m) const {
  static const std::vector<Elem> identity_only{0};
  if (m == 1) return identity_only;
  auto it = by_order_.find(m);
  if (it == by_order_.end()) return {};
  return it->second;
}

int element_order(const FiniteGroup& g, const Permutation& p) {
  auto e = g.find(p);
  if (!e) throw GroupError("permutation is not an element of " + g.name());
  return g.element_order(*e);
}

std::vector<Elem> subgroup_generated(const FiniteGroup& g, std::span<const Elem> elements) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> out{FiniteGroup::identity()};
  seen[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Elem s : elements) {
      const Elem y = g.mul(out[head], s);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool generates(const FiniteGroup& g, std::span<const Elem> elements) {
  const std::size_t n = g.order();
  if (n == 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Elem> queue;
  queue.reserve(n);
  queue.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Elem s : elements) {
      const Elem y = g.mul(queue[head], s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
        if (queue.size() == n) return true;
      }
    }
  }
  return false;
}

// --- automorphisms ---------------------------------------------------------------

namespace {

std::vector<Elem> irredundant_generators(const FiniteGroup& g) {
  std::vector<Elem> gens;
  std::size_t reached = 1;
  for (Elem s : g.generators()) {
    gens.push_back(s);
    const std::size_t now = subgroup_generated(g, gens).size();
    if (now == reached) {
      gens.pop_back();
    } else {
      reached = now;
    }
  }
  return gens;
}

class AutomorphismSearch {
 public:
  AutomorphismSearch(const FiniteGroup& g, std::vector<Elem> gens, std::uint64_t budget)
      : g_(g), gens_(std::move(gens)), images_(gens_.size()), budget_(budget) {}

  bool run(std::vector<Automorphism>& out) {
    out_ = &out;
    descend(0);
    return !exhausted_;
  }

 private:
  static constexpr Elem kUnset = static_cast<Elem>(-1);

  // Extends the partial assignment to <gens_[0..k]>, or fails on a conflict.
  bool extend(std::size_t k, Automorphism& map) const {
    map.assign(g_.order(), kUnset);
    map[0] = 0;
    std::vector<Elem> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Elem x = queue[head];
      for (std::size_t i = 0; i <= k; ++i) {
        const Elem y = g_.mul(x, gens_[i]);
        const Elem fy = g_.mul(map[x], images_[i]);
        if (map[y] == kUnset) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    }
    return true;
  }

  void descend(std::size_t k) {
    if (exhausted_) return;
    for (Elem cand : g_.elements_of_order(g_.element_order(gens_[k]))) {
      if (++examined_ > budget_) {
        exhausted_ = true;
        return;
      }
      images_[k] = cand;
      Automorphism map;
      if (!extend(k, map)) continue;
      if (k + 1 < gens_.size()) {
        descend(k + 1);
        if (exhausted_) return;
        continue;
      }
      std::vector<bool> hit(g_.order(), false);
      bool bijective = true;
      for (Elem v : map) {
        if (hit[v]) {
          bijective = false;
          break;
        }
        hit[v] = true;
      }
      if (bijective) out_->push_back(std::move(map));
    }
  }

  const FiniteGroup& g_;
  std::vector<Elem> gens_;
  std::vector<Elem> images_;
  std::uint64_t budget_;
  std::uint64_t examined_ = 0;
  bool exhausted_ = false;
  std::vector<Automorphism>* out_ = nullptr;
};

}  // namespace

AutomorphismResult automorphisms(const FiniteGroup& g, const AutomorphismBound& bound) {
  AutomorphismResult result;
  if (g.order() > bound.max_order) {
    result.reason = "not computed: order " + std::to_string(g.order()) + " exceeds bound " +
                    std::to_string(bound.max_order);
    return result;
  }
  Automorphism ident(g.order());
  std::iota(ident.begin(), ident.end(), Elem{0});
  if (g.order() == 1) {
    result.maps = std::vector<Automorphism>{ident};
    return result;
  }
  std::vector<Automorphism> maps;
  AutomorphismSearch search(g, irredundant_generators(g), bound.max_candidates);
  if (!search.run(maps)) {
    result.reason = "not computed: candidate budget exceeded";
    return result;
  }
  auto it = std::find(maps.begin(), maps.end(), ident);
  if (it != maps.end()) std::rotate(maps.begin(), it, it + 1);
  result.maps = std::move(maps);
  return result;
}

std::vector<Automorphism> automorphism_generators(const FiniteGroup& g,
                                                  std::span<const Automorphism> all) {
  std::vector<Automorphism> gens;
  std::set<Automorphism> group;
  Automorphism ident(g.order());
  std::iota(ident.begin(), ident.end(), Elem{0});
  group.insert(ident);
  for (const auto& a : all) {
    if (group.contains(a)) continue;
    gens.push_back(a);
    std::vector<Automorphism> queue(group.begin(), group.end());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& s : gens) {
        Automorphism c(g.order());
        for (std::size_t x = 0; x < c.size(); ++x) c[x] = s[queue[head][x]];
        if (group.insert(c).second) queue.push_back(std::move(c));
      }
    }
  }
  return gens;
}

// --- catalog ------------------------------------------------------------------

CatalogError::CatalogError(std::size_t line, const std::string& what)
    : std::runtime_error("catalog line " + std::to_string(line) + ": " + what), line_(line) {}

void GroupCatalog::add(GroupPtr group) {
  auto pos = std::lower_bound(groups_.begin(), groups_.end(), group->label(),
                              [](const GroupPtr& a, const GroupLabel& l) { return a->label() < l; });
  if (pos != groups_.end() && (*pos)->label() == group->label()) {
    throw GroupError("duplicate label " + to_string(group->label()));
  }
  groups_.insert(pos, std::move(group));
}

std::vector<GroupCatalog::GroupPtr> GroupCatalog::groups_of_order(int order) const {
  std::vector<GroupPtr> out;
  for (const auto& g : groups_) {
    if (g->order() == order) out.push_back(g);
  }
  return out;
}

GroupCatalog::GroupPtr GroupCatalog::find(GroupLabel label) const {
  for (const auto& g : groups_) {
    if (g->label() == label) return g;
  }
  return nullptr;
}

GroupCatalog::GroupPtr GroupCatalog::find(std::string_view key) const {
  std::string k(key);
  if (k.starts_with("G(") && k.ends_with(")")) k = k.substr(2, k.size() - 3);
  for (char& c : k) {
    if (c == '/') c = ',';
  }
  if (auto comma = k.find(','); comma != std::string::npos) {
    try {
      std::size_t used = 0;
      const int order = std::stoi(k.substr(0, comma), &used);
      const int index = std::stoi(k.substr(comma + 1));
      if (auto g = find(GroupLabel{order, index})) return g;
    } catch (const std::exception&) {
    }
  }
  for (const auto& g : groups_) {
    if (g->name() == key) return g;
  }
  return nullptr;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw CatalogError(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

GroupCatalog parse_catalog(std::string_view text) {
  GroupCatalog catalog;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;

  struct Pending {
    std::size_t line;
    GroupLabel label;
    std::size_t degree;
    std::string name;
    std::vector<Permutation> gens;
  };
  std::optional<Pending> pending;

  while (std::getline(in, raw)) {
    ++lineno;
    const auto toks = split_ws(raw);
    if (toks.empty() || toks.front().starts_with("#")) continue;
    const std::string& kw = toks.front();
    if (kw == "group") {
      if (pending) throw CatalogError(lineno, "'group' before 'end' of previous group");
      if (toks.size() < 4) throw CatalogError(lineno, "expected: group <order> <index> <degree> [<name>]");
      Pending p;
      p.line = lineno;
      p.label = {parse_int(toks[1], lineno), parse_int(toks[2], lineno)};
      const int degree = parse_int(toks[3], lineno);
      if (p.label.order < 1 || degree < 1) throw CatalogError(lineno, "order and degree must be positive");
      p.degree = static_cast<std::size_t>(degree);
      for (std::size_t i = 4; i < toks.size(); ++i) {
        if (i > 4) p.name += ' ';
        p.name += toks[i];
      }
      if (p.name.empty()) p.name = to_string(p.label);
      pending = std::move(p);
    } else if (kw == "perm") {
      if (!pending) throw CatalogError(lineno, "'perm' outside a group block");
      if (toks.size() - 1 != pending->degree) {
        throw CatalogError(lineno, "expected " + std::to_string(pending->degree) + " images");
      }
      std::vector<int> images;
      for (std::size_t i = 1; i < toks.size(); ++i) images.push_back(parse_int(toks[i], lineno));
      try {
        pending->gens.push_back(Permutation::from_one_based(images));
      } catch (const std::invalid_argument& e) {
        throw CatalogError(lineno, e.what());
      }
    } else if (kw == "end") {
      if (!pending) throw CatalogError(lineno, "'end' outside a group block");
      try {
        auto g = FiniteGroup::from_generators(pending->label, pending->name, pending->degree,
                                              std::move(pending->gens), pending->label.order);
        catalog.add(std::make_shared<const FiniteGroup>(std::move(g)));
      } catch (const GroupError& e) {
        throw CatalogError(pending->line, e.what());
      }
      pending.reset();
    } else {
      throw CatalogError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (pending) throw CatalogError(lineno, "missing 'end' for group starting at line " +
                                              std::to_string(pending->line));
  return catalog;
}

GroupCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError(0, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

}  // namespace pqs

#include "pqs/presentation.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <type_traits>

namespace pqs {

void Presentation::validate() const {
  for (const auto& r : relators) {
    for (int x : r) {
      if (x == 0 || std::abs(x) > generator_count) throw std::invalid_argument("relator letter out of range");
    }
  }
}

std::size_t Presentation::total_length() const {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.size();
  return n;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word power(int generator, int n) {
  const int letter = n >= 0 ? generator + 1 : -(generator + 1);
  return Word(static_cast<std::size_t>(std::abs(n)), letter);
}

// --- Reidemeister-Schreier ---------------------------------------------------------

SchreierRewriter::SchreierRewriter(std::vector<std::vector<int>> action)
    : gens_(static_cast<int>(action.size())), action_(std::move(action)) {
  cosets_ = gens_ ? static_cast<int>(action_[0].size()) : 1;
  inverse_action_.assign(gens_, std::vector<int>(cosets_, -1));
  for (int k = 0; k < gens_; ++k) {
    if (static_cast<int>(action_[k].size()) != cosets_) throw std::invalid_argument("ragged coset action");
    for (int c = 0; c < cosets_; ++c) {
      const int d = action_[k][c];
      if (d < 0 || d >= cosets_ || inverse_action_[k][d] != -1) {
        throw std::invalid_argument("generator does not act as a permutation of the cosets");
      }
      inverse_action_[k][d] = c;
    }
  }
  label_.assign(cosets_, std::vector<int>(gens_, -1));
  std::vector<bool> seen(cosets_, false);
  std::vector<int> queue{0};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int c = queue[h];
    for (int k = 0; k < gens_; ++k) {
      const int d = action_[k][c];
      if (!seen[d]) {
        seen[d] = true;
        label_[c][k] = 0;
        queue.push_back(d);
      }
      const int e = inverse_action_[k][c];
      if (!seen[e]) {
        seen[e] = true;
        label_[e][k] = 0;
        queue.push_back(e);
      }
    }
  }
  if (static_cast<int>(queue.size()) != cosets_) throw std::invalid_argument("coset action is not transitive");
  for (int c = 0; c < cosets_; ++c) {
    for (int k = 0; k < gens_; ++k) {
      if (label_[c][k] == -1) label_[c][k] = ++count_;
    }
  }
}

int SchreierRewriter::act(int coset, int letter) const {
  return letter > 0 ? action_[letter - 1][coset] : inverse_action_[-letter - 1][coset];
}

Word SchreierRewriter::rewrite(const Word& w, int start, int* end) const {
  Word out;
  int c = start;
  for (int x : w) {
    if (x > 0) {
      const int l = label_[c][x - 1];
      if (l) out.push_back(l);
      c = action_[x - 1][c];
    } else {
      const int d = inverse_action_[-x - 1][c];
      const int l = label_[d][-x - 1];
      if (l) out.push_back(-l);
      c = d;
    }
  }
  if (end) *end = c;
  return free_reduce(out);
}

Presentation SchreierRewriter::subgroup_presentation(const std::vector<Word>& relators) const {
  Presentation p;
  p.generator_count = count_;
  for (int c = 0; c < cosets_; ++c) {
    for (const auto& r : relators) {
      int end = 0;
      Word w = rewrite(r, c, &end);
      if (end != c) throw std::invalid_argument("relator does not act trivially on the cosets");
      if (!w.empty()) p.relators.push_back(std::move(w));
    }
  }
  return p;
}

// --- abelianization -------------------------------------------------------------

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), std::vector<mpz_class>(p.generator_count, 0));
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (int x : p.relators[i]) m[i][std::abs(x) - 1] += x > 0 ? 1 : -1;
  }
  return m;
}

namespace {

template <class T>
bool checked_fma(T& acc, const T& a, const T& b) {  // acc -= a * b
  if constexpr (std::is_same_v<T, std::int64_t>) {
    std::int64_t prod = 0;
    if (__builtin_mul_overflow(a, b, &prod)) return false;
    if (__builtin_sub_overflow(acc, prod, &acc)) return false;
    return true;
  } else {
    acc -= a * b;
    return true;
  }
}

template <class T>
T abs_value(const T& x) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return x < 0 ? -x : x;
  } else {
    return abs(x);
  }
}

// Eliminates unit pivots; fills the residual dense matrix. Returns false on
// int64 overflow.
template <class T>
bool sparse_reduce(const Presentation& p, IntMatrix& residual, int& residual_cols) {
  using Row = std::vector<std::pair<int, T>>;  // sorted by column, nonzero entries
  std::vector<Row> rows;
  for (const auto& r : p.relators) {
    std::vector<int> cols;
    for (int x : r) cols.push_back(std::abs(x) - 1);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    Row row;
    for (int c : cols) row.emplace_back(c, T(0));
    for (int x : r) {
      auto it = std::lower_bound(row.begin(), row.end(), std::abs(x) - 1,
                                 [](const auto& e, int c) { return e.first < c; });
      it->second += x > 0 ? 1 : -1;
    }
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int n = p.generator_count;
  std::vector<std::set<int>> col_rows(n);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);
  }
  std::vector<bool> row_alive(rows.size(), true), col_alive(n, true);

  while (true) {
    int best_row = -1, best_col = -1;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (!row_alive[i]) continue;
      for (const auto& [c, v] : rows[i]) {
        if (abs_value(v) != 1) continue;
        const std::size_t cost = (col_rows[c].size() - 1) * (rows[i].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_row = i;
          best_col = c;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_row < 0) break;

    const Row pivot = rows[best_row];
    T u = 0;
    for (const auto& [c, v] : pivot) {
      if (c == best_col) u = v;
    }
    const std::vector<int> targets(col_rows[best_col].begin(), col_rows[best_col].end());
    for (int s : targets) {
      if (s == best_row) continue;
      T factor = 0;
      for (const auto& [c, v] : rows[s]) {
        if (c == best_col) factor = v * u;  // u = +-1, so v/u = v*u
      }
      // rows[s] -= factor * pivot, merged by column
      Row merged;
      merged.reserve(rows[s].size() + pivot.size());
      std::size_t a = 0, b = 0;
      while (a < rows[s].size() || b < pivot.size()) {
        if (b == pivot.size() || (a < rows[s].size() && rows[s][a].first < pivot[b].first)) {
          merged.push_back(rows[s][a++]);
        } else if (a == rows[s].size() || pivot[b].first < rows[s][a].first) {
          T val = 0;
          if (!checked_fma(val, factor, pivot[b].second)) return false;
          merged.emplace_back(pivot[b].first, val);
          col_rows[pivot[b].first].insert(s);
          ++b;
        } else {
          T val = rows[s][a].second;
          if (!checked_fma(val, factor, pivot[b].second)) return false;
          merged.emplace_back(rows[s][a].first, val);
          ++a;
          ++b;
        }
      }
      Row cleaned;
      for (auto& e : merged) {
        if (e.second == 0) {
          col_rows[e.first].erase(s);
        } else {
          cleaned.push_back(std::move(e));
        }
      }
      rows[s] = std::move(cleaned);
      if (rows[s].empty()) row_alive[s] = false;
    }
    for (const auto& [c, v] : pivot) col_rows[c].erase(best_row);
    row_alive[best_row] = false;
    col_alive[best_col] = false;
  }

  std::vector<int> col_index(n, -1);
  residual_cols = 0;
  for (int c = 0; c < n; ++c) {
    if (col_alive[c]) col_index[c] = residual_cols++;
  }
  residual.clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!row_alive[i] || rows[i].empty()) continue;
    std::vector<mpz_class> dense(residual_cols, 0);
    for (const auto& [c, v] : rows[i]) {
      if constexpr (std::is_same_v<T, std::int64_t>) {
        dense[col_index[c]] = mpz_class(static_cast<long>(v));
      } else {
        dense[col_index[c]] = v;
      }
    }
    residual.push_back(std::move(dense));
  }
  return true;
}

}  // namespace

AbelianInvariants abelianization(const Presentation& p) {
  p.validate();
  IntMatrix residual;
  int cols = 0;
  if (!sparse_reduce<std::int64_t>(p, residual, cols)) sparse_reduce<mpz_class>(p, residual, cols);
  std::vector<mpz_class> orders;
  const auto diag = residual.empty() ? std::vector<mpz_class>{} : smith_diagonal(std::move(residual));
  for (const auto& d : diag) orders.push_back(d);
  for (int k = static_cast<int>(diag.size()); k < cols; ++k) orders.push_back(0);
  return AbelianInvariants::from_cyclic_orders(orders);
}

// --- Tietze -------------------------------------------------------------------

namespace {

void normalize_relators(Presentation& p) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (auto& r : p.relators) {
    Word w = cyclic_reduce(r);
    if (w.empty()) continue;
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  p.relators = std::move(out);
}

}  // namespace

Presentation simplify(const Presentation& input, std::size_t max_length) {
  Presentation p = input;
  p.validate();
  normalize_relators(p);
  while (true) {
    // occurrences of each generator per relator
    const int n = p.generator_count;
    std::vector<std::size_t> total(n, 0);
    for (const auto& r : p.relators) {
      for (int x : r) ++total[std::abs(x) - 1];
    }
    long best_growth = std::numeric_limits<long>::max();
    std::size_t best_rel = 0;
    int best_gen = -1;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      const auto& r = p.relators[i];
      std::vector<int> count(n, 0);
      for (int x : r) ++count[std::abs(x) - 1];
      for (int x : r) {
        const int g = std::abs(x) - 1;
        if (count[g] != 1) continue;
        const long others = static_cast<long>(total[g]) - 1;
        const long growth = others * (static_cast<long>(r.size()) - 2) - static_cast<long>(r.size());
        if (growth < best_growth) {
          best_growth = growth;
          best_rel = i;
          best_gen = g;
        }
      }
    }
    if (best_gen < 0) break;
    if (best_growth > 0 && p.total_length() + static_cast<std::size_t>(best_growth) > max_length) break;

    // r = u g^e v  =>  g = u^-1 v^-1 (e = 1) or g = v u (e = -1)
    const Word r = p.relators[best_rel];
    std::size_t pos = 0;
    while (std::abs(r[pos]) - 1 != best_gen) ++pos;
    const Word u(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
    const Word v(r.begin() + static_cast<std::ptrdiff_t>(pos) + 1, r.end());
    Word value;
    if (r[pos] > 0) {
      value = inverse(u);
      const Word vi = inverse(v);
      value.insert(value.end(), vi.begin(), vi.end());
    } else {
      value = v;
      value.insert(value.end(), u.begin(), u.end());
    }
    const auto renumber = [&](int x) {
      const int g = std::abs(x) - 1;
      const int ng = g > best_gen ? g - 1 : g;
      return x > 0 ? ng + 1 : -(ng + 1);
    };
    value = free_reduce(value);
    for (int& x : value) x = renumber(x);
    const Word value_inv = inverse(value);

    std::vector<Word> next;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i == best_rel) continue;
      Word w;
      for (int x : p.relators[i]) {
        if (std::abs(x) - 1 == best_gen) {
          const Word& sub = x > 0 ? value : value_inv;
          w.insert(w.end(), sub.begin(), sub.end());
        } else {
          w.push_back(renumber(x));
        }
      }
      next.push_back(std::move(w));
    }
    p.generator_count = n - 1;
    p.relators = std::move(next);
    normalize_relators(p);
  }
  return p;
}

// --- coset enumeration ------------------------------------------------------------

namespace {

// Hasselgrove-Leech-Trotter enumeration with coincidence processing.
class CosetTable {
 public:
  CosetTable(int gens, std::size_t limit) : cols_(2 * gens), limit_(limit) { add(); }

  bool overflowed() const { return overflow_; }
  std::size_t defined() const { return parent_.size(); }
  bool alive(int c) const { return parent_[c] == c; }
  std::int64_t live_count() const {
    std::int64_t n = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) n += alive(static_cast<int>(c));
    return n;
  }

  static int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

  int get(int c, int col) const { return table_[static_cast<std::size_t>(c) * cols_ + col]; }
  void set(int c, int col, int v) { table_[static_cast<std::size_t>(c) * cols_ + col] = v; }

  // Defines c.col as a new coset; false if the limit is hit.
  bool define(int c, int col) {
    if (parent_.size() >= limit_) {
      overflow_ = true;
      return false;
    }
    const int d = add();
    set(c, col, d);
    set(d, col ^ 1, c);
    return true;
  }

  // Scans relator w at coset a, filling in deductions and new cosets.
  bool scan_and_fill(int a, const Word& w) {
    if (w.empty()) return true;
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && get(f, column(w[i])) >= 0) f = get(f, column(w[i++]));
      if (i > j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && get(b, column(w[j]) ^ 1) >= 0) b = get(b, column(w[j--]) ^ 1);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        set(f, column(w[i]), b);
        set(b, column(w[i]) ^ 1, f);
        return true;
      }
      if (!define(f, column(w[i]))) return false;
    }
  }

  bool fill_row(int c) {
    for (int col = 0; col < cols_ && alive(c); ++col) {
      if (get(c, col) < 0 && !define(c, col)) return false;
    }
    return true;
  }

 private:
  int add() {
    const int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + cols_, -1);
    return c;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (l < k) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int g = queue[h];
      for (int col = 0; col < cols_; ++col) {
        const int d = get(g, col);
        if (d < 0) continue;
        set(d, col ^ 1, -1);
        const int mu = rep(g);
        const int nu = rep(d);
        if (get(mu, col) >= 0) {
          merge(nu, get(mu, col), queue);
        } else if (get(nu, col ^ 1) >= 0) {
          merge(mu, get(nu, col ^ 1), queue);
        } else {
          set(mu, col, nu);
          set(nu, col ^ 1, mu);
        }
      }
    }
  }

  int cols_;
  std::size_t limit_;
  bool overflow_ = false;
  std::vector<int> parent_;
  std::vector<int> table_;
};

}  // namespace

std::optional<std::int64_t> coset_enumeration_bounded(const Presentation& input, std::size_t limit) {
  Presentation p = simplify(input);
  if (p.generator_count == 0) return 1;
  CosetTable t(p.generator_count, std::max<std::size_t>(limit, 1));
  for (std::size_t c = 0; c < t.defined(); ++c) {
    const int a = static_cast<int>(c);
    for (const auto& r : p.relators) {
      if (!t.alive(a)) break;
      if (!t.scan_and_fill(a, r)) return std::nullopt;
    }
    if (t.alive(a) && !t.fill_row(a)) return std::nullopt;
  }
  return t.live_count();
}

}  // namespace pqs

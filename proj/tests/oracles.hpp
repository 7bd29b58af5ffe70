#pragma once

// Independent reference computations used by the unit and acceptance tests.
// They work on raw permutations or plain integers rather than the library's
// element tables, so they do not share code paths with what they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "pqs/group.hpp"

namespace oracle {

inline int perm_order(const pqs::Permutation& p) {
  // lcm of cycle lengths
  std::vector<bool> seen(p.degree(), false);
  std::int64_t l = 1;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    l = std::lcm(l, len);
  }
  return static_cast<int>(l);
}

inline std::size_t closure_size(const std::vector<pqs::Permutation>& gens, std::size_t degree) {
  std::set<pqs::Permutation> seen{pqs::Permutation::identity(degree)};
  std::vector<pqs::Permutation> queue(seen.begin(), seen.end());
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& s : gens) {
      auto y = queue[h].then(s);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen.size();
}

/// Counts tuples (x_1..x_r) of G with ord(x_i) = m_i, x_1...x_r = 1 and
/// <x_i> = G, by running over all of G^(r-1).
inline std::size_t naive_vector_count(const pqs::FiniteGroup& g, const std::vector<int>& m) {
  const std::size_t r = m.size();
  const std::size_t n = g.order();
  std::vector<pqs::Permutation> elems;
  for (std::size_t i = 0; i < n; ++i) elems.push_back(g.element(static_cast<pqs::Elem>(i)));
  std::vector<int> ord(n);
  for (std::size_t i = 0; i < n; ++i) ord[i] = perm_order(elems[i]);
  if (r == 0) return n == 1 ? 1 : 0;

  std::size_t count = 0;
  std::vector<std::size_t> idx(r - 1, 0);
  while (true) {
    pqs::Permutation prod = pqs::Permutation::identity(g.degree());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < r && ok; ++i) {
      ok = ord[idx[i]] == m[i];
      prod = prod.then(elems[idx[i]]);
    }
    if (ok) {
      const pqs::Permutation last = prod.inverse();
      if (perm_order(last) == m[r - 1]) {
        std::vector<pqs::Permutation> gens;
        for (std::size_t i = 0; i + 1 < r; ++i) gens.push_back(elems[idx[i]]);
        gens.push_back(last);
        if (closure_size(gens, g.degree()) == n) ++count;
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return count;
}

/// gcd of all k x k minors, k = 1 or 2, by explicit expansion.
inline mpz_class minor_gcd(const std::vector<std::vector<mpz_class>>& m, int k) {
  mpz_class g = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  if (k == 1) {
    for (const auto& r : m)
      for (const auto& x : r) g = gcd(g, x);
    return g;
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i + 1; j < rows; ++j)
      for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = a + 1; b < cols; ++b) {
          const mpz_class d = m[i][a] * m[j][b] - m[i][b] * m[j][a];
          g = gcd(g, d);
        }
  return g;
}

/// d_1 * ... * d_k from a diagonal matrix (0 if the diagonal is too short).
inline mpz_class diagonal_prefix_product(const std::vector<std::vector<mpz_class>>& s, std::size_t k) {
  mpz_class p = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (i >= s.size() || i >= s[0].size()) return 0;
    p *= s[i][i];
  }
  return abs(p);
}

}  // namespace oracle

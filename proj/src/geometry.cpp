#include "pqs/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pqs/orbifold.hpp"

namespace pqs {

SingularityType::SingularityType(int n_, int a_) : n(n_), a(a_) {
  if (n < 2 || a < 1 || a >= n || std::gcd(n, a) != 1) {
    throw std::invalid_argument("invalid singularity type 1/" + std::to_string(n_) + "(1," +
                                std::to_string(a_) + ")");
  }
}

SingularityType SingularityType::normalized() const {
  int inv = 1;
  while ((inv * a) % n != 1) ++inv;
  return SingularityType(n, std::min(a, inv));
}

std::string SingularityType::to_string() const { return std::to_string(a) + "/" + std::to_string(n); }

std::string basket_to_string(const Basket& basket) {
  if (basket.empty()) return "-";
  Basket sorted = basket;
  std::sort(sorted.begin(), sorted.end());
  std::string s;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (!s.empty()) s += ',';
    s += sorted[i].to_string();
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

Basket parse_basket(std::string_view text) {
  std::string cleaned;
  for (char c : text) {
    if (c != ' ' && c != '\t') cleaned += c;
  }
  Basket out;
  if (cleaned.empty() || cleaned == "-") return out;
  std::stringstream in(cleaned);
  for (std::string tok; std::getline(in, tok, ',');) {
    int count = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      count = std::stoi(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    const auto slash = tok.find('/');
    if (slash == std::string::npos || count < 1) throw std::invalid_argument("bad basket token: " + tok);
    std::size_t used_a = 0, used_n = 0;
    const int a = std::stoi(tok.substr(0, slash), &used_a);
    const int n = std::stoi(tok.substr(slash + 1), &used_n);
    if (used_a != slash || used_n != tok.size() - slash - 1) throw std::invalid_argument("bad basket token: " + tok);
    for (int k = 0; k < count; ++k) out.emplace_back(n, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> hj_expansion(int n, int a) {
  SingularityType check(n, a);
  std::vector<int> b;
  // n/a = ceil(n/a) - (ceil(n/a) a - n)/a
  while (a > 0) {
    const int q = (n + a - 1) / a;
    b.push_back(q);
    const int rest = q * a - n;
    n = a;
    a = rest;
  }
  return b;
}

Rational hj_value(std::span<const int> s) {
  if (s.empty()) throw std::invalid_argument("empty Hirzebruch-Jung string");
  Rational v(s.back());
  for (std::size_t k = s.size() - 1; k-- > 0;) v = Rational(s[k]) - 1 / v;
  return v;
}

Rational kx_squared(std::int64_t g1, std::int64_t g2, std::int64_t order) {
  if (g1 < 2 || g2 < 2) throw std::invalid_argument("curve genera must be at least 2");
  if (order < 1) throw std::invalid_argument("group order must be positive");
  return Rational(8 * (g1 - 1) * (g2 - 1), order);
}

Rational resolution_correction(const SingularityType& t) {
  const auto b = hj_expansion(t.n, t.a);
  const std::size_t len = b.size();
  // Tridiagonal system: -b_i d_i + d_{i-1} + d_{i+1} = b_i - 2.
  std::vector<Rational> diag(len), rhs(len);
  for (std::size_t i = 0; i < len; ++i) {
    diag[i] = Rational(-b[i]);
    rhs[i] = Rational(b[i] - 2);
  }
  for (std::size_t i = 1; i < len; ++i) {
    if (diag[i - 1] == 0) throw std::logic_error("singular Hirzebruch-Jung intersection matrix");
    const Rational f = Rational(1) / diag[i - 1];
    diag[i] -= f;
    rhs[i] -= f * rhs[i - 1];
  }
  std::vector<Rational> d(len);
  for (std::size_t i = len; i-- > 0;) {
    Rational r = rhs[i];
    if (i + 1 < len) r -= d[i + 1];
    if (diag[i] == 0) throw std::logic_error("singular Hirzebruch-Jung intersection matrix");
    d[i] = r / diag[i];
  }
  Rational k(0);
  for (std::size_t i = 0; i < len; ++i) k -= d[i] * Rational(b[i] - 2);
  return k;
}

bool is_rdp(const SingularityType& t) { return t.a == t.n - 1; }

EulerChi euler_and_chi(std::int64_t g1, std::int64_t g2, std::int64_t order, const Basket& basket) {
  EulerChi out;
  out.euler_x = Rational(4 * (g1 - 1) * (g2 - 1), order);
  Rational ks2 = kx_squared(g1, g2, order);
  out.euler = out.euler_x;
  for (const auto& t : basket) {
    out.euler_x += Rational(t.n - 1, t.n);
    out.euler += Rational(t.n - 1, t.n) + Rational(static_cast<std::int64_t>(hj_expansion(t.n, t.a).size()));
    ks2 -= resolution_correction(t);
  }
  out.chi = (ks2 + out.euler) / 12;
  out.integral = out.euler.denominator() == 1 && out.chi.denominator() == 1;
  return out;
}

std::vector<FixedPoint> fixed_points(const FiniteGroup& g, std::span<const Elem> branch1,
                                     std::span<const Elem> branch2) {
  std::vector<FixedPoint> out;
  const std::size_t order = g.order();
  std::vector<int> exponent_in_b(order);
  std::vector<bool> visited(order);
  for (std::size_t i = 0; i < branch1.size(); ++i) {
    const Elem gi = branch1[i];
    const int mi = g.element_order(gi);
    for (std::size_t j = 0; j < branch2.size(); ++j) {
      const Elem dj = branch2[j];
      const int mj = g.element_order(dj);
      std::fill(exponent_in_b.begin(), exponent_in_b.end(), -1);
      for (int t = 0; t < mj; ++t) exponent_in_b[g.pow(dj, t)] = t;
      std::fill(visited.begin(), visited.end(), false);
      // double cosets <gamma_i> b <delta_j>
      for (Elem b = 0; b < order; ++b) {
        if (visited[b]) continue;
        for (int s = 0; s < mi; ++s) {
          Elem x = g.mul(g.pow(gi, s), b);
          for (int t = 0; t < mj; ++t) {
            visited[x] = true;
            x = g.mul(x, dj);
          }
        }
        int k0 = 1;
        int e = -1;
        for (; k0 <= mi; ++k0) {
          const Elem conj = g.mul(g.mul(g.inv(b), g.pow(gi, k0)), b);
          if (exponent_in_b[conj] >= 0) {
            e = exponent_in_b[conj];
            break;
          }
        }
        const int n = mi / k0;
        if (n == 1) continue;
        const int a = e / (mj / n);
        FixedPoint p;
        p.i = i;
        p.j = j;
        p.b = b;
        p.k0 = k0;
        p.e = e;
        p.type = SingularityType(n, a);
        out.push_back(p);
      }
    }
  }
  return out;
}

Basket fixed_point_data(const FiniteGroup& g, std::span<const Elem> branch1, std::span<const Elem> branch2) {
  Basket out;
  for (const auto& p : fixed_points(g, branch1, branch2)) out.push_back(p.type.normalized());
  std::sort(out.begin(), out.end());
  return out;
}

bool action_is_free(const FiniteGroup& g, std::span<const Elem> branch1, std::span<const Elem> branch2) {
  const auto s1 = stabilizer_set(g, branch1);
  const auto s2 = stabilizer_set(g, branch2);
  std::vector<Elem> common;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
  return common.size() == 1;
}

SurfaceInvariants surface_invariants(const FiniteGroup& g, std::span<const Elem> branch1,
                                     std::span<const Elem> branch2) {
  const auto signature_of = [&](std::span<const Elem> v) {
    std::vector<int> m;
    for (Elem x : v) m.push_back(g.element_order(x));
    return Signature(0, m);
  };
  const auto r1 = rh_genus(g.order(), signature_of(branch1));
  const auto r2 = rh_genus(g.order(), signature_of(branch2));
  if (!r1.hyperbolic() || !r2.hyperbolic()) throw std::invalid_argument("curve genera must be at least 2");

  SurfaceInvariants s;
  s.g1 = r1.genus;
  s.g2 = r2.genus;
  s.basket = fixed_point_data(g, branch1, branch2);
  s.kx2 = kx_squared(s.g1, s.g2, g.order());
  s.ks2 = s.kx2;
  s.rdp_only = true;
  for (const auto& t : s.basket) {
    s.ks2 -= resolution_correction(t);
    s.rdp_only = s.rdp_only && is_rdp(t);
  }
  const auto ec = euler_and_chi(s.g1, s.g2, g.order(), s.basket);
  s.euler = ec.euler;
  s.chi = ec.chi;
  s.integral = ec.integral;
  s.free = s.basket.empty();
  s.minimality_unverified = s.ks2 <= 0 || !s.rdp_only;
  return s;
}

}  // namespace pqs

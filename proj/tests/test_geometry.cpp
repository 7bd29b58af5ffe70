#include <numeric>
#include <random>

#include "doctest.h"
#include "pqs/geometry.hpp"
#include "pqs/orbifold.hpp"
#include "support.hpp"

using namespace pqs;

namespace {

// Closed form for the correction of 1/n(1,q) with q q' = 1 mod n:
// (2 + q + q')/n + sum(b_i - 2) - 2.
Rational closed_form_correction(int n, int q, const std::vector<int>& b) {
  int qi = 1;
  while ((qi * q) % n != 1) ++qi;
  Rational k(2 + q + qi, n);
  for (int x : b) k += x - 2;
  return k - 2;
}

}  // namespace

TEST_CASE("singularity types and baskets") {
  CHECK_THROWS(SingularityType(4, 2));
  CHECK_THROWS(SingularityType(1, 0));
  CHECK(SingularityType(5, 3).normalized() == SingularityType(5, 2));
  CHECK(SingularityType(3, 2).normalized() == SingularityType(3, 2));
  CHECK(basket_to_string({}) == "-");
  CHECK(basket_to_string({SingularityType(2, 1), SingularityType(2, 1)}) == "1/2^2");
  CHECK(basket_to_string({SingularityType(3, 2), SingularityType(3, 1)}) == "1/3,2/3");
  const auto b = parse_basket("1/3, 1/2^4, 2/3");
  CHECK(b.size() == 6);
  CHECK(basket_to_string(b) == "1/2^4,1/3,2/3");
  CHECK(parse_basket(basket_to_string(b)) == b);
  CHECK(parse_basket("-").empty());
  CHECK_THROWS(parse_basket("1/4^x"));
}

TEST_CASE("Hirzebruch-Jung strings") {
  CHECK(hj_expansion(2, 1) == std::vector<int>{2});
  CHECK(hj_expansion(4, 1) == std::vector<int>{4});
  CHECK(hj_expansion(5, 2) == std::vector<int>{3, 2});
  CHECK(hj_expansion(3, 2) == std::vector<int>{2, 2});
  CHECK_THROWS(hj_expansion(6, 2));
  for (int n = 2; n <= 50; ++n) {
    for (int a = 1; a < n; ++a) {
      if (std::gcd(n, a) != 1) continue;
      const auto b = hj_expansion(n, a);
      CHECK(hj_value(b) == Rational(n, a));
      for (int x : b) CHECK(x >= 2);
      const Rational k = resolution_correction(SingularityType(n, a));
      CHECK(k == closed_form_correction(n, a, b));
      CHECK(k >= 0);
      CHECK((k == 0) == is_rdp(SingularityType(n, a)));
    }
  }
  CHECK(resolution_correction(SingularityType(2, 1)) == 0);
  CHECK(resolution_correction(SingularityType(3, 1)) == Rational(1, 3));
  CHECK(resolution_correction(SingularityType(4, 1)) == 1);
  CHECK(is_rdp(SingularityType(3, 2)));
  CHECK_FALSE(is_rdp(SingularityType(4, 1)));
}

TEST_CASE("K_X^2, Euler number and chi") {
  CHECK(kx_squared(21, 4, 60) == 8);
  CHECK(kx_squared(9, 6, 60) == Rational(16, 3));
  CHECK(kx_squared(2, 2, 8) == 1);
  CHECK_THROWS(kx_squared(1, 3, 2));

  const auto e5 = euler_and_chi(9, 6, 60, parse_basket("1/3,2/3"));
  CHECK(e5.euler_x == 4);
  CHECK(e5.euler == 7);
  CHECK(e5.chi == 1);
  const auto e6 = euler_and_chi(4, 16, 60, parse_basket("1/2^2"));
  CHECK(e6.euler == 6);
  CHECK(e6.chi == 1);
  const auto bad = euler_and_chi(2, 2, 8, {});
  CHECK(bad.euler_x == Rational(1, 2));
  CHECK_FALSE(bad.integral);
}

TEST_CASE("fixed points of table actions") {
  const auto& cat = test_support::catalog();
  const auto find_basket = [&](const char* group, const char* t1, const char* t2, const char* want,
                               int ks2) {
    const auto g = cat.find(group);
    const auto v1 = enumerate_generating_vectors(*g, Signature::parse(t1));
    const auto v2 = enumerate_generating_vectors(*g, Signature::parse(t2));
    const auto h1 = hurwitz_classes(v1);
    const auto h2 = hurwitz_classes(v2);
    for (std::size_t a : h1.representatives) {
      for (std::size_t b : h2.representatives) {
        const auto s = surface_invariants(*g, v1.branch(a), v2.branch(b));
        if (basket_to_string(s.basket) == want && s.ks2 == ks2 && s.chi == 1) return true;
      }
    }
    return false;
  };
  CHECK(find_basket("A5", "0;2,5,5", "0;3,3,3,3", "-", 8));
  CHECK(find_basket("Z2xD4", "0;2,2,2,4", "0;2,2,2,2,4", "1/2^2", 6));
  CHECK(find_basket("A5", "0;3,5,5", "0;2,2,2,3", "1/3,2/3", 5));
  CHECK(find_basket("A5", "0;2,2,2,5", "0;3,3,5", "2/5^2", 4));
}

TEST_CASE("freeness and basket invariance") {
  const auto& cat = test_support::catalog();
  const auto g = cat.find("Z2xS4");
  const auto v1 = enumerate_generating_vectors(*g, Signature::parse("0;2,4,6"));
  const auto v2 = enumerate_generating_vectors(*g, Signature::parse("0;2,2,2,4"));
  std::mt19937 rng(11);
  int free_seen = 0, nonfree_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = v1.branch(rng() % v1.size());
    const auto b = v2.branch(rng() % v2.size());
    const Basket basket = fixed_point_data(*g, a, b);
    CHECK(action_is_free(*g, a, b) == basket.empty());
    (basket.empty() ? free_seen : nonfree_seen)++;
    const Elem c = static_cast<Elem>(rng() % g->order());
    std::vector<Elem> a2(a.begin(), a.end()), b2(b.begin(), b.end());
    for (auto& x : a2) x = g->conj(x, c);
    CHECK(fixed_point_data(*g, a2, b) == basket);
    for (auto& x : b2) x = g->conj(x, c);
    CHECK(fixed_point_data(*g, a, b2) == basket);
  }
  CHECK(nonfree_seen > 0);
  const std::vector<Elem> none;
  CHECK(action_is_free(*g, none, none));
}

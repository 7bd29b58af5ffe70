#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqs/group.hpp"
#include "pqs/rational.hpp"

namespace pqs {

/// Cyclic quotient singularity 1/n(1,a), gcd(a, n) = 1, 1 <= a < n.
struct SingularityType {
  int n = 2;
  int a = 1;

  /// Throws std::invalid_argument unless the invariants hold.
  SingularityType(int n, int a);
  SingularityType() = default;

  /// 1/n(1,a) and 1/n(1,a') with a a' = 1 mod n are the same germ; keep the smaller a.
  SingularityType normalized() const;
  std::string to_string() const;  // "a/n"

  friend bool operator==(const SingularityType&, const SingularityType&) = default;
  friend auto operator<=>(const SingularityType&, const SingularityType&) = default;
};

/// Sorted multiset of singularity types, ordered by (n, a).
using Basket = std::vector<SingularityType>;

/// "1/2^2", "1/3,2/3"; "-" for the empty basket.
std::string basket_to_string(const Basket& basket);
/// Accepts the output form and table spellings such as "1/3, 1/2^4, 2/3".
Basket parse_basket(std::string_view text);

/// n/a = b_1 - 1/(b_2 - 1/(...)).
std::vector<int> hj_expansion(int n, int a);
Rational hj_value(std::span<const int> string);

Rational kx_squared(std::int64_t g1, std::int64_t g2, std::int64_t order);

/// -(sum d_i E_i)^2 for the discrepancies d solving sum_j d_j E_i.E_j = b_i - 2.
Rational resolution_correction(const SingularityType& t);

bool is_rdp(const SingularityType& t);

struct EulerChi {
  Rational euler_x;  // e(X)
  Rational euler;    // e(S')
  Rational chi;      // (K_S'^2 + e(S')) / 12
  bool integral = false;
};

EulerChi euler_and_chi(std::int64_t g1, std::int64_t g2, std::int64_t order, const Basket& basket);

/// One G-orbit of points of C1 x C2 with nontrivial stabilizer.
///
/// The orbit is represented by the pair (<gamma_i>, b<delta_j>): the point
/// of C1 fixed by gamma_i and the point of C2 fixed by b delta_j b^-1. Its
/// stabilizer is generated by gamma_i^k0 = b delta_j^e b^-1.
struct FixedPoint {
  std::size_t i = 0;  // branch index on the first factor
  std::size_t j = 0;  // branch index on the second factor
  Elem b = 0;
  int k0 = 0;
  int e = 0;
  SingularityType type;  // as computed, before normalization
};

std::vector<FixedPoint> fixed_points(const FiniteGroup& g, std::span<const Elem> branch1,
                                     std::span<const Elem> branch2);

/// Normalized, sorted basket of the diagonal action.
Basket fixed_point_data(const FiniteGroup& g, std::span<const Elem> branch1,
                        std::span<const Elem> branch2);

bool action_is_free(const FiniteGroup& g, std::span<const Elem> branch1, std::span<const Elem> branch2);

struct SurfaceInvariants {
  std::int64_t g1 = 0, g2 = 0;
  Rational kx2;
  Rational ks2;
  Rational euler;
  Rational chi;
  Basket basket;
  bool free = false;
  bool rdp_only = false;
  bool integral = false;  // e(S') and chi are integers
  /// S' might not be minimal: K_S'^2 <= 0 or X has non-canonical points.
  bool minimality_unverified = false;
};

/// Genus-0 signatures are read off the branch element orders.
SurfaceInvariants surface_invariants(const FiniteGroup& g, std::span<const Elem> branch1,
                                     std::span<const Elem> branch2);

}  // namespace pqs

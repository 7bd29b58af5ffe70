#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqs/group.hpp"
#include "pqs/rational.hpp"

namespace pqs {

/// Signature (g'; m_1, ..., m_r) of an orbifold surface group.
struct Signature {
  int genus = 0;
  std::vector<int> m;  // ascending, each >= 2

  /// Accepts "0;2,5,5", "0;2,5^2", "2;" and the bare "2,5^2" (genus 0).
  static Signature parse(std::string_view text);
  Signature() = default;
  Signature(int genus, std::vector<int> multiplicities);

  std::size_t r() const { return m.size(); }
  /// 2g' - 2 + sum(1 - 1/m_i).
  Rational theta() const;
  /// "0;2,5,5"
  std::string to_string() const;
  /// Exponent shorthand of the branch part, "2,5^2"; "-" when empty.
  std::string compact() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct RhGenus {
  bool integral = false;
  std::int64_t genus = 0;  // meaningful only when integral
  bool hyperbolic() const { return integral && genus >= 2; }
};

/// Solves 2g - 2 = |G| * theta; non-integral solutions are reported, not thrown.
RhGenus rh_genus(std::int64_t group_order, const Signature& sig);

/// An appropriate generating system of G for a signature.
struct GeneratingVector {
  const FiniteGroup* group = nullptr;
  Signature signature;
  std::vector<Elem> hyperbolic;  // a_1, b_1, ..., a_g', b_g'
  std::vector<Elem> branch;      // gamma_1, ..., gamma_r
};

/// Checks orders, the product relation and generation.
bool is_generating_vector(const FiniteGroup& g, const Signature& sig,
                          std::span<const Elem> hyperbolic, std::span<const Elem> branch);

/// All generating vectors of (G, signature), stored flat and sorted
/// lexicographically as (hyperbolic..., branch...).
class VectorSet {
 public:
  /// flat holds count * stride entries, already sorted and unique.
  VectorSet(const FiniteGroup& g, Signature sig, std::vector<Elem> flat, std::size_t count);

  const FiniteGroup& group() const { return *group_; }
  const Signature& signature() const { return sig_; }
  std::size_t size() const { return count_; }
  std::size_t stride() const { return stride_; }
  std::span<const Elem> entries(std::size_t i) const { return {flat_.data() + i * stride_, stride_}; }
  std::span<const Elem> hyperbolic(std::size_t i) const { return entries(i).first(2 * sig_.genus); }
  std::span<const Elem> branch(std::size_t i) const { return entries(i).subspan(2 * sig_.genus); }
  GeneratingVector at(std::size_t i) const;
  std::optional<std::size_t> find(std::span<const Elem> entries) const;

 private:
  const FiniteGroup* group_;
  Signature sig_;
  std::size_t stride_;
  std::vector<Elem> flat_;
  std::size_t count_;
  int bits_ = 0;                     // per-entry width of keys_, 0 if rows do not fit
  std::vector<std::uint64_t> keys_;  // packed rows, for find
};

/// Exhaustive, duplicate-free, deterministic.
VectorSet enumerate_generating_vectors(const FiniteGroup& g, const Signature& sig);

/// Union over conjugates of all powers of the branch elements; ascending.
std::vector<Elem> stabilizer_set(const FiniteGroup& g, std::span<const Elem> branch);

/// Orbits of a VectorSet under the order-preserving braid moves and
/// simultaneous conjugation. Genus-0 signatures only.
struct HurwitzClasses {
  std::vector<std::size_t> class_of;         // per vector
  std::vector<std::size_t> representatives;  // smallest member, ascending
  std::size_t count() const { return representatives.size(); }
};

HurwitzClasses hurwitz_classes(const VectorSet& vectors);

/// Elementary braid move on positions (i, i+1), or its inverse.
void braid_move(const FiniteGroup& g, std::span<Elem> branch, std::size_t i, bool inverse = false);

/// Families of vector pairs: orbits on pairs of Hurwitz classes under
/// simultaneous Aut(G), plus the factor swap when allowed.
struct FamilyOrbits {
  bool computed = false;
  std::string reason;
  /// Each orbit lists (class in first set, class in second set), smallest first.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> orbits;
  std::size_t count() const { return orbits.size(); }
};

FamilyOrbits hurwitz_orbits(const VectorSet& v1, const HurwitzClasses& c1, const VectorSet& v2,
                            const HurwitzClasses& c2, bool swap_allowed,
                            const std::optional<std::vector<Automorphism>>& aut_generators);

}  // namespace pqs

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pqs {

/// Index of an element in a FiniteGroup's element table; 0 is the identity.
using Elem = std::uint32_t;

/// A permutation of {0, ..., degree-1}, printed 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint16_t> images);

  /// Builds from 1-based images; throws std::invalid_argument unless bijective.
  static Permutation from_one_based(std::span<const int> images);
  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint16_t operator()(std::size_t point) const { return images_[point]; }
  std::span<const std::uint16_t> images() const { return images_; }

  /// Apply *this first, then other.
  Permutation then(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint16_t> images_;
};

struct GroupLabel {
  int order = 0;
  int index = 0;
  friend bool operator==(const GroupLabel&, const GroupLabel&) = default;
  friend auto operator<=>(const GroupLabel&, const GroupLabel&) = default;
};

std::string to_string(const GroupLabel& label);

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite permutation group with its complete element table.
///
/// Elements are addressed by index. Index 0 is the identity; the remaining
/// indices follow breadth-first closure order over the generators, so the
/// numbering is reproducible for a fixed generator list. Multiplication,
/// inversion and element orders are table lookups. Instances are immutable.
class FiniteGroup {
 public:
  /// Closes the generators and checks the result against declared_order
  /// (0 skips the check). Throws GroupError on mismatch or degree problems.
  static FiniteGroup from_generators(GroupLabel label, std::string name, std::size_t degree,
                                     std::vector<Permutation> generators, int declared_order = 0);

  int order() const { return static_cast<int>(elements_.size()); }
  std::size_t degree() const { return degree_; }
  const GroupLabel& label() const { return label_; }
  const std::string& name() const { return name_; }

  std::span<const Permutation> generator_perms() const { return generator_perms_; }
  std::span<const Elem> generators() const { return generators_; }
  const Permutation& element(Elem e) const { return elements_[e]; }
  std::optional<Elem> find(const Permutation& p) const;

  static constexpr Elem identity() { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * elements_.size() + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem x, Elem g) const { return mul(mul(g, x), inverse_[g]); }  // g x g^-1
  Elem pow(Elem a, long k) const;
  int element_order(Elem a) const { return orders_[a]; }
  bool is_abelian() const { return abelian_; }

  /// Conjugacy classes, each sorted; classes ordered by smallest member.
  const std::vector<std::vector<Elem>>& conjugacy_classes() const { return classes_; }
  std::size_t class_index(Elem e) const { return class_of_[e]; }

  /// Elements of exact order m, ascending.
  std::span<const Elem> elements_of_order(int m) const;
  /// Distinct element orders >= 2, ascending.
  const std::vector<int>& element_orders() const { return distinct_orders_; }

 private:
  FiniteGroup() = default;

  GroupLabel label_;
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> generator_perms_;
  std::vector<Elem> generators_;
  std::vector<Permutation> elements_;
  std::map<Permutation, Elem> index_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<int> orders_;
  std::vector<std::vector<Elem>> classes_;
  std::vector<std::size_t> class_of_;
  std::map<int, std::vector<Elem>> by_order_;
  std::vector<int> distinct_orders_;
  bool abelian_ = true;
};

/// Order of a permutation that must belong to g; throws GroupError otherwise.
int element_order(const FiniteGroup& g, const Permutation& p);

/// Smallest subgroup containing the given elements, ascending.
std::vector<Elem> subgroup_generated(const FiniteGroup& g, std::span<const Elem> elements);

/// True iff the elements generate all of g (early exit on success).
bool generates(const FiniteGroup& g, std::span<const Elem> elements);

/// An automorphism as the image of every element index.
using Automorphism = std::vector<Elem>;

struct AutomorphismBound {
  int max_order = 384;
  /// Upper bound on candidate generator-image tuples examined.
  std::uint64_t max_candidates = 200'000'000;
};

struct AutomorphismResult {
  /// Absent when the bound was exceeded; the list is never truncated.
  std::optional<std::vector<Automorphism>> maps;
  std::string reason;
  bool computed() const { return maps.has_value(); }
};

/// All automorphisms, identity first, by backtracking over generator images.
AutomorphismResult automorphisms(const FiniteGroup& g, const AutomorphismBound& bound = {});

/// A small generating set of the group generated by the given automorphisms.
std::vector<Automorphism> automorphism_generators(const FiniteGroup& g,
                                                  std::span<const Automorphism> all);

class CatalogError : public std::runtime_error {
 public:
  CatalogError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GroupCatalog {
 public:
  using GroupPtr = std::shared_ptr<const FiniteGroup>;

  void add(GroupPtr group);
  const std::vector<GroupPtr>& groups() const { return groups_; }
  std::vector<GroupPtr> groups_of_order(int order) const;
  GroupPtr find(GroupLabel label) const;
  /// Lookup by label "G(60,5)", "60,5" or by catalog name "A5".
  GroupPtr find(std::string_view key) const;
  std::size_t size() const { return groups_.size(); }

 private:
  std::vector<GroupPtr> groups_;  // sorted by label
};

GroupCatalog parse_catalog(std::string_view text);
GroupCatalog load_catalog(const std::filesystem::path& path);

}  // namespace pqs

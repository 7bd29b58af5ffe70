#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pqs/snf.hpp"

namespace pqs {

/// Letter k+1 is generator k, -(k+1) its inverse.
using Word = std::vector<int>;

struct Presentation {
  int generator_count = 0;
  std::vector<Word> relators;

  /// Throws std::invalid_argument if a letter is 0 or out of range.
  void validate() const;
  std::size_t total_length() const;
};

Word inverse(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
/// x^n as a word in generator k (n may be negative).
Word power(int generator, int n);

/// Free-group rewriting into the subgroup generators of a transitive
/// right action of the free group on finitely many cosets.
///
/// Schreier transversal: breadth-first spanning tree from coset 0, trying
/// generators in order and each generator before its inverse. Subgroup
/// generators are the non-tree edges (coset, generator), numbered in
/// (coset, generator) order.
class SchreierRewriter {
 public:
  /// action[k][c] is the image of coset c under generator k.
  explicit SchreierRewriter(std::vector<std::vector<int>> action);

  int cosets() const { return cosets_; }
  int subgroup_generator_count() const { return count_; }
  int act(int coset, int letter) const;
  /// Rewrites w read from the given coset; returns the end coset through `end`.
  Word rewrite(const Word& w, int start, int* end = nullptr) const;
  /// Presentation of the stabilizer of coset 0: every relator rewritten at every coset.
  Presentation subgroup_presentation(const std::vector<Word>& relators) const;

 private:
  int gens_;
  int cosets_;
  std::vector<std::vector<int>> action_;  // by generator
  std::vector<std::vector<int>> inverse_action_;
  std::vector<std::vector<int>> label_;   // label_[c][k]: subgroup generator index + 1, 0 on tree edges
  int count_ = 0;
};

/// Abelian invariants of the group presented: sparse unimodular-pivot
/// elimination, then dense Smith form on what is left.
AbelianInvariants abelianization(const Presentation& p);

/// Relator exponent-sum matrix (relators x generators).
IntMatrix relation_matrix(const Presentation& p);

/// Tietze transformations: drop trivial and duplicate relators and
/// eliminate generators occurring exactly once in some relator, while
/// the total relator length stays below max_length.
Presentation simplify(const Presentation& p, std::size_t max_length = 200000);

/// Order of the presented group by HLT coset enumeration over the trivial
/// subgroup, or nullopt if more than `limit` cosets are needed.
std::optional<std::int64_t> coset_enumeration_bounded(const Presentation& p, std::size_t limit);

}  // namespace pqs

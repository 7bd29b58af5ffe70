#pragma once

#include <vector>

#include "pqs/geometry.hpp"
#include "pqs/orbifold.hpp"
#include "pqs/presentation.hpp"

namespace pqs {

/// Presentation of T1 x T2 on the generators a_1, b_1, ..., c_1, ..., c_r of
/// T1 followed by those of T2 (letters numbered in that order).
Presentation product_group_presentation(const Signature& t1, const Signature& t2);

/// The fiber product H = {(x, y) : phi1(x) = phi2(y)} as the stabilizer
/// of coset 1 in the action of T1 x T2 on G given by
///   c . t = c phi1(t)  for t in T1,   c . u = phi2(u)^-1 c  for u in T2.
class FiberProduct {
 public:
  FiberProduct(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2);

  const Presentation& presentation() const { return presentation_; }
  const SchreierRewriter& rewriter() const { return rewriter_; }
  /// One word per basket point generating its stabilizer in H.
  const std::vector<Word>& torsion_generators() const { return torsion_; }
  /// The same elements as words in the generators of T1 x T2.
  const std::vector<Word>& torsion_words() const { return torsion_words_; }
  /// Image of each generator of T1 x T2 in G x G.
  std::pair<Elem, Elem> image(const Word& w) const;
  Presentation pi1_presentation() const;

 private:
  const FiniteGroup* group_;
  std::vector<Elem> phi1_, phi2_;  // images of the T1 x T2 generators (identity on the other factor)
  Presentation product_;
  SchreierRewriter rewriter_;
  Presentation presentation_;
  std::vector<Word> torsion_words_;  // in T1 x T2 generators
  std::vector<Word> torsion_;        // rewritten into H generators
};

Presentation fiber_product_presentation(const FiniteGroup& g, const GeneratingVector& v1,
                                        const GeneratingVector& v2);
std::vector<Word> torsion_normal_generators(const FiniteGroup& g, const GeneratingVector& v1,
                                            const GeneratingVector& v2);
Presentation pi1_presentation(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2);

/// H_1(S, Z) of the quotient surface.
AbelianInvariants first_homology(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2);

}  // namespace pqs

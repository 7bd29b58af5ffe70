#include "pqs/pi1.hpp"

#include <stdexcept>

namespace pqs {

namespace {

int generator_count(const Signature& s) { return 2 * s.genus + static_cast<int>(s.r()); }

// Relators of one orbifold surface group, generators starting at `offset`.
void append_orbifold_relators(const Signature& s, int offset, std::vector<Word>& out) {
  const int h = 2 * s.genus;
  for (std::size_t i = 0; i < s.r(); ++i) out.push_back(power(offset + h + static_cast<int>(i), s.m[i]));
  Word longrel;
  for (int i = 0; i < s.genus; ++i) {
    const int a = offset + 2 * i + 1, b = offset + 2 * i + 2;
    longrel.insert(longrel.end(), {-a, -b, a, b});
  }
  for (std::size_t i = 0; i < s.r(); ++i) longrel.push_back(offset + h + static_cast<int>(i) + 1);
  if (!longrel.empty()) out.push_back(std::move(longrel));
}

std::vector<std::vector<int>> coset_action(const FiniteGroup& g, const std::vector<Elem>& phi1,
                                           const std::vector<Elem>& phi2, int n1) {
  const int total = static_cast<int>(phi1.size());
  std::vector<std::vector<int>> action(total, std::vector<int>(g.order()));
  for (int k = 0; k < total; ++k) {
    for (Elem c = 0; c < static_cast<Elem>(g.order()); ++c) {
      action[k][c] = static_cast<int>(k < n1 ? g.mul(c, phi1[k]) : g.mul(g.inv(phi2[k]), c));
    }
  }
  return action;
}

std::vector<Elem> images(const FiniteGroup&, const GeneratingVector& v, bool first, int n1, int n2) {
  std::vector<Elem> out(n1 + n2, FiniteGroup::identity());
  std::vector<Elem> own(v.hyperbolic);
  own.insert(own.end(), v.branch.begin(), v.branch.end());
  for (std::size_t k = 0; k < own.size(); ++k) out[(first ? 0 : n1) + k] = own[k];
  return out;
}

}  // namespace

Presentation product_group_presentation(const Signature& t1, const Signature& t2) {
  Presentation p;
  const int n1 = generator_count(t1), n2 = generator_count(t2);
  p.generator_count = n1 + n2;
  append_orbifold_relators(t1, 0, p.relators);
  append_orbifold_relators(t2, n1, p.relators);
  for (int x = 1; x <= n1; ++x) {
    for (int y = n1 + 1; y <= n1 + n2; ++y) p.relators.push_back({-x, -y, x, y});
  }
  return p;
}

FiberProduct::FiberProduct(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2)
    : group_(&g),
      phi1_(images(g, v1, true, generator_count(v1.signature), generator_count(v2.signature))),
      phi2_(images(g, v2, false, generator_count(v1.signature), generator_count(v2.signature))),
      product_(product_group_presentation(v1.signature, v2.signature)),
      rewriter_(coset_action(g, phi1_, phi2_, generator_count(v1.signature))),
      presentation_(rewriter_.subgroup_presentation(product_.relators)) {
  const int n1 = generator_count(v1.signature);
  const int first_c = 2 * v1.signature.genus;
  const int first_d = n1 + 2 * v2.signature.genus;

  // words in the T2 generators reaching every element of G
  std::vector<Word> reach(g.order());
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> queue{FiniteGroup::identity()};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Elem x = queue[h];
    for (int k = n1; k < product_.generator_count; ++k) {
      for (int sign : {1, -1}) {
        const Elem y = g.mul(x, sign > 0 ? phi2_[k] : g.inv(phi2_[k]));
        if (seen[y]) continue;
        seen[y] = true;
        reach[y] = reach[x];
        reach[y].push_back(sign * (k + 1));
        queue.push_back(y);
      }
    }
  }

  for (const auto& p : fixed_points(g, v1.branch, v2.branch)) {
    Word w = power(first_c + static_cast<int>(p.i), p.k0);
    const Word& b = reach[p.b];
    w.insert(w.end(), b.begin(), b.end());
    const Word d = power(first_d + static_cast<int>(p.j), p.e);
    w.insert(w.end(), d.begin(), d.end());
    const Word bi = inverse(b);
    w.insert(w.end(), bi.begin(), bi.end());
    int end = -1;
    Word rewritten = rewriter_.rewrite(w, 0, &end);
    if (end != 0) throw std::logic_error("torsion generator is not in the fiber product");
    torsion_words_.push_back(std::move(w));
    torsion_.push_back(std::move(rewritten));
  }
}

std::pair<Elem, Elem> FiberProduct::image(const Word& w) const {
  Elem a = FiniteGroup::identity(), b = FiniteGroup::identity();
  for (int x : w) {
    const int k = std::abs(x) - 1;
    a = group_->mul(a, x > 0 ? phi1_[k] : group_->inv(phi1_[k]));
    b = group_->mul(b, x > 0 ? phi2_[k] : group_->inv(phi2_[k]));
  }
  return {a, b};
}

Presentation FiberProduct::pi1_presentation() const {
  Presentation p = presentation_;
  for (const auto& w : torsion_) {
    if (!w.empty()) p.relators.push_back(w);
  }
  return p;
}

Presentation fiber_product_presentation(const FiniteGroup& g, const GeneratingVector& v1,
                                        const GeneratingVector& v2) {
  return FiberProduct(g, v1, v2).presentation();
}

std::vector<Word> torsion_normal_generators(const FiniteGroup& g, const GeneratingVector& v1,
                                            const GeneratingVector& v2) {
  return FiberProduct(g, v1, v2).torsion_generators();
}

Presentation pi1_presentation(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2) {
  return FiberProduct(g, v1, v2).pi1_presentation();
}

AbelianInvariants first_homology(const FiniteGroup& g, const GeneratingVector& v1, const GeneratingVector& v2) {
  return abelianization(pi1_presentation(g, v1, v2));
}

}  // namespace pqs

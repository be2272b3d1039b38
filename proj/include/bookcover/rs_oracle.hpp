#pragma once

#include <cstdint>
#include <vector>

#include "bookcover/errors.hpp"
#include "bookcover/integer_homology.hpp"
#include "bookcover/quotient.hpp"
#include "bookcover/schreier.hpp"
#include "bookcover/words.hpp"

namespace bookcover {

// Reidemeister-Schreier presentation of ker(phi) inside the ambient group.
// This route sees only the presentation and the coset table; it knows
// nothing about the cover's vertex and edge structure, which is exactly what
// makes it a ground truth for the structured computation.
struct SubgroupPresentation {
  std::uint64_t index = 1;  // |G|
  std::uint32_t base_generator_count = 0;
  std::uint32_t schreier_generator_count = 0;
  std::vector<Word> relators;  // over the Schreier generators, freely reduced
};

// Cosets are the elements of the image group (right multiplication action);
// Schreier generators from a BFS spanning tree, tree generators pruned; one
// rewritten relator per (base relator, coset).
inline SubgroupPresentation schreier_presentation(const GroupPresentation& p,
                                                  const FiniteQuotient& q,
                                                  const Caps& caps = {}) {
  if (!check_homomorphism(p, q))
    throw MalformedInput("images do not define a homomorphism");
  const std::vector<Perm>& elements = q.group->elements(caps.max_group_order);
  CosetRewriter rw(elements, q.images);

  SubgroupPresentation sp;
  sp.index = elements.size();
  sp.base_generator_count = static_cast<std::uint32_t>(p.generators.size());
  sp.schreier_generator_count = rw.subgroup_gen_count();
  sp.relators.reserve(elements.size() * p.relators.size());
  for (const Word& rel : p.relators)
    for (std::uint32_t c = 0; c < rw.coset_count(); ++c) {
      Word w = rw.rewrite(c, rel);
      free_reduce(w);
      sp.relators.push_back(std::move(w));
    }
  return sp;
}

// Exponent sums: rows = rewritten relators, cols = Schreier generators.
inline IntMatrix abelianization_matrix(const SubgroupPresentation& sp) {
  IntMatrix m(sp.relators.size(), sp.schreier_generator_count);
  for (std::size_t r = 0; r < sp.relators.size(); ++r) {
    const auto sums = exponent_sums(sp.relators[r], sp.schreier_generator_count);
    for (std::size_t g = 0; g < sums.size(); ++g) m.at(r, g) = sums[g];
  }
  return m;
}

// First homology of the cover straight from the subgroup presentation.
inline HomologyResult rs_homology(const GroupPresentation& p, const FiniteQuotient& q,
                                  const Caps& caps = {}) {
  return cokernel_homology(abelianization_matrix(schreier_presentation(p, q, caps)));
}

}  // namespace bookcover

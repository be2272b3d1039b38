#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "bookcover/errors.hpp"
#include "bookcover/perm_group.hpp"
#include "bookcover/permutation.hpp"
#include "bookcover/presentation.hpp"

namespace bookcover {

// Homomorphism from pi_1(X) onto a finite permutation group, given by the
// images of the presentation generators. The image group and its order are
// computed eagerly, so quotient values are safe to query concurrently.
struct FiniteQuotient {
  std::uint32_t degree = 1;
  std::vector<Perm> images;  // aligned with presentation generators
  std::shared_ptr<const PermGroup> group;

  const Int& group_order() const { return group->order(); }
};

inline FiniteQuotient make_quotient(const GroupPresentation& p, std::uint32_t degree,
                                    std::vector<Perm> images, const Caps& caps = {}) {
  if (degree == 0) throw MalformedInput("quotient: degree must be positive");
  if (degree > caps.max_degree)
    throw CapExceeded("quotient degree " + std::to_string(degree) + " exceeds cap " +
                      std::to_string(caps.max_degree));
  if (images.size() != p.generators.size())
    throw MalformedInput("quotient: expected one image per generator");
  for (const Perm& g : images)
    if (g.degree() != degree) throw MalformedInput("quotient: image degree mismatch");
  FiniteQuotient q;
  q.degree = degree;
  q.group = std::make_shared<PermGroup>(degree, images);
  q.images = std::move(images);
  return q;
}

inline FiniteQuotient trivial_quotient(const GroupPresentation& p, const Caps& caps = {}) {
  return make_quotient(p, 1, std::vector<Perm>(p.generators.size(), Perm::identity(1)), caps);
}

// JSON schema: {"points": n, "images": {"gen": "(1 2)(3 4 5)", ...}}.
// Cycle notation is 1-based; omitted generators map to the identity; names
// not present in the presentation are rejected.
inline FiniteQuotient quotient_from_json(const GroupPresentation& p, const nlohmann::json& j,
                                         const Caps& caps = {}) {
  detail::require_keys(j, {"points", "images"}, "quotient");
  const std::uint32_t degree = detail::get_u32(j, "points", "quotient");
  const auto& images_json = j.at("images");
  if (!images_json.is_object())
    throw MalformedInput("quotient: \"images\" must be an object");
  std::vector<Perm> images(p.generators.size(), Perm::identity(degree));
  for (const auto& item : images_json.items()) {
    auto it = p.index_of.find(item.key());
    if (it == p.index_of.end())
      throw MalformedInput("quotient: unknown generator \"" + item.key() + "\"");
    if (!item.value().is_string())
      throw MalformedInput("quotient: image of \"" + item.key() + "\" must be a string");
    images[it->second] = Perm::parse_cycles(item.value().get<std::string>(), degree);
  }
  return make_quotient(p, degree, std::move(images), caps);
}

inline nlohmann::json quotient_to_json(const GroupPresentation& p, const FiniteQuotient& q) {
  nlohmann::json images = nlohmann::json::object();
  for (std::size_t g = 0; g < q.images.size(); ++g)
    if (!q.images[g].is_identity()) images[p.generators[g].name] = q.images[g].cycle_string();
  return {{"points", q.degree}, {"images", images}};
}

inline Perm evaluate(const FiniteQuotient& q, const Word& w) {
  Perm result = Perm::identity(q.degree);
  for (std::int32_t l : w) {
    const std::uint32_t g = letter_gen(l);
    if (g >= q.images.size()) throw MalformedInput("word letter out of range");
    result = l > 0 ? result * q.images[g] : result * q.images[g].inverse();
  }
  return result;
}

// True iff every relator maps to the identity.
inline bool check_homomorphism(const GroupPresentation& p, const FiniteQuotient& q) {
  if (q.images.size() != p.generators.size())
    throw MalformedInput("quotient does not match presentation generators");
  for (const Word& rel : p.relators)
    if (!evaluate(q, rel).is_identity()) return false;
  return true;
}

inline Int element_order(const FiniteQuotient& q, const Word& w) {
  return evaluate(q, w).order();
}

// Order of the subgroup generated by the evaluated words. Strategy:
// Schreier-Sims stabilizer chain (no enumeration); the configured order cap
// is enforced on the result to signal quotients too large for desk scale.
inline Int image_subgroup_order(const FiniteQuotient& q, const std::vector<Word>& words,
                                const Caps& caps = {}) {
  std::vector<Perm> gens;
  gens.reserve(words.size());
  for (const Word& w : words) gens.push_back(evaluate(q, w));
  PermGroup sub(q.degree, std::move(gens));
  if (sub.order() > caps.max_group_order)
    throw CapExceeded("subgroup order " + sub.order().str() + " exceeds cap");
  return sub.order();
}

// One representative per left coset of the generated subgroup, ordered by
// lexicographically minimal representative. Backed by bounded enumeration of
// the image group (the documented strategy for coset labels).
inline std::vector<Perm> coset_labels(const FiniteQuotient& q,
                                      const std::vector<Word>& subgroup_words,
                                      const Caps& caps = {}) {
  std::vector<Perm> sub_gens;
  sub_gens.reserve(subgroup_words.size());
  for (const Word& w : subgroup_words) sub_gens.push_back(evaluate(q, w));
  const std::vector<Perm>& all = q.group->elements(caps.max_group_order);
  const std::vector<Perm> sub =
      PermGroup::closure(q.degree, sub_gens, caps.max_group_order);
  for (const Perm& h : sub)
    if (!q.group->contains(h))
      throw MalformedInput("coset_labels: words do not generate a subgroup of the image");
  return left_cosets(all, sub).reps;
}

}  // namespace bookcover

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bookcover/bigint.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/permutation.hpp"

namespace bookcover {

// Permutation group given by generators.
//
// Order and membership come from a deterministic Schreier-Sims stabilizer
// chain (base points are smallest moved points, orbits explored in BFS
// order, generators in insertion order) and never enumerate the group.
// Element lists are built on demand by BFS closure and refuse to grow past
// the caller's cap; that bounded enumeration backs coset labeling.
class PermGroup {
 public:
  PermGroup(std::uint32_t degree, std::vector<Perm> generators)
      : degree_(degree), gens_(std::move(generators)) {
    for (const Perm& g : gens_)
      if (g.degree() != degree_)
        throw InternalError("generator degree mismatch");
    build_chain();
  }

  std::uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const Int& order() const { return order_; }

  bool contains(const Perm& p) const {
    if (p.degree() != degree_) return false;
    auto [level, residue] = sift(p, 0);
    (void)level;
    return residue.is_identity();
  }

  // Sorted element list; throws CapExceeded if the group is larger than cap.
  const std::vector<Perm>& elements(std::uint64_t cap) const {
    std::lock_guard<std::mutex> lock(elements_mutex_);
    if (order_ > cap)
      throw CapExceeded("group order " + order_.str() + " exceeds enumeration cap");
    if (elements_.empty()) {
      elements_ = closure(degree_, gens_, cap);
    }
    return elements_;
  }

  // BFS closure of a generating set, sorted lexicographically.
  static std::vector<Perm> closure(std::uint32_t degree,
                                   const std::vector<Perm>& gens,
                                   std::uint64_t cap) {
    std::unordered_set<Perm, PermHash> seen;
    std::deque<Perm> queue;
    const Perm id = Perm::identity(degree);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
      Perm e = std::move(queue.front());
      queue.pop_front();
      for (const Perm& g : gens) {
        Perm next = e * g;
        if (seen.insert(next).second) {
          if (seen.size() > cap)
            throw CapExceeded("group enumeration exceeds cap of " + std::to_string(cap));
          queue.push_back(std::move(next));
        }
      }
    }
    std::vector<Perm> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Perm> gens;
    std::vector<std::uint32_t> orbit;                      // BFS order
    std::unordered_map<std::uint32_t, Perm> transversal;   // point -> u, base^u = point
  };

  void build_chain() {
    for (const Perm& g : gens_) insert_generator(g);
    order_ = 1;
    for (const Level& level : levels_) order_ *= Int(level.orbit.size());
  }

  void insert_generator(const Perm& g) {
    auto [level, residue] = sift(g, 0);
    if (residue.is_identity()) return;
    if (level == levels_.size()) {
      Level fresh;
      fresh.base = residue.smallest_moved();
      levels_.push_back(std::move(fresh));
    }
    levels_[level].gens.push_back(residue);
    complete_level(level);
  }

  // Re-verifies Schreier generators of one level after its generating set
  // changed. Residues that fail to sift are inserted strictly deeper, so the
  // recursion terminates; deeper insertions never invalidate this level's
  // orbit or transversal.
  void complete_level(std::size_t level) {
    rebuild_orbit(level);
    Level& lv = levels_[level];
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      const std::uint32_t p = lv.orbit[oi];
      const Perm& up = lv.transversal.at(p);
      for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
        const Perm& s = lv.gens[gi];
        const std::uint32_t q = s[p];
        Perm schreier = up * s * lv.transversal.at(q).inverse();
        auto [deeper, residue] = sift(std::move(schreier), level + 1);
        if (residue.is_identity()) continue;
        if (deeper == levels_.size()) {
          Level fresh;
          fresh.base = residue.smallest_moved();
          levels_.push_back(std::move(fresh));
        }
        levels_[deeper].gens.push_back(residue);
        complete_level(deeper);
      }
    }
  }

  void rebuild_orbit(std::size_t level) {
    Level& lv = levels_[level];
    lv.orbit.clear();
    lv.transversal.clear();
    lv.orbit.push_back(lv.base);
    lv.transversal.emplace(lv.base, Perm::identity(degree_));
    for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
      const std::uint32_t p = lv.orbit[i];
      for (const Perm& g : lv.gens) {
        const std::uint32_t q = g[p];
        if (lv.transversal.find(q) == lv.transversal.end()) {
          lv.transversal.emplace(q, lv.transversal.at(p) * g);
          lv.orbit.push_back(q);
        }
      }
    }
  }

  // Returns (levels_.size(), id) on success, else the level where the orbit
  // misses and the partially reduced residue.
  std::pair<std::size_t, Perm> sift(Perm g, std::size_t from) const {
    for (std::size_t level = from; level < levels_.size(); ++level) {
      if (g.is_identity()) return {levels_.size(), std::move(g)};
      const Level& lv = levels_[level];
      const std::uint32_t x = g[lv.base];
      auto it = lv.transversal.find(x);
      if (it == lv.transversal.end()) return {level, std::move(g)};
      g = g * it->second.inverse();
    }
    return {levels_.size(), std::move(g)};
  }

  std::uint32_t degree_;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  Int order_ = 1;
  mutable std::mutex elements_mutex_;
  mutable std::vector<Perm> elements_;
};

// Partition of a sorted group element list into left cosets g*H.
// Representatives are the lexicographically minimal coset members; because
// the scan follows the sorted list, reps come out sorted as well.
struct CosetPartition {
  std::vector<Perm> reps;
  std::unordered_map<Perm, std::uint32_t, PermHash> coset_of;
};

inline CosetPartition left_cosets(const std::vector<Perm>& group_elements,
                                  const std::vector<Perm>& subgroup_elements) {
  CosetPartition part;
  part.coset_of.reserve(group_elements.size());
  for (const Perm& g : group_elements) {
    if (part.coset_of.find(g) != part.coset_of.end()) continue;
    const auto index = static_cast<std::uint32_t>(part.reps.size());
    part.reps.push_back(g);
    for (const Perm& h : subgroup_elements) {
      auto [it, fresh] = part.coset_of.emplace(g * h, index);
      if (!fresh && it->second != index)
        throw InternalError("coset partition: subgroup list is not a subgroup");
      (void)it;
    }
  }
  if (part.reps.size() * subgroup_elements.size() != group_elements.size())
    throw InternalError("coset partition: Lagrange count failed");
  return part;
}

// Lexicographically minimal member of the coset g*<h> for cyclic <h>.
inline Perm min_in_cyclic_coset(const Perm& g, const Perm& h) {
  Perm best = g;
  Perm cur = g * h;
  while (cur != g) {
    if (cur < best) best = cur;
    cur = cur * h;
  }
  return best;
}

}  // namespace bookcover

#pragma once

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "bookcover/errors.hpp"
#include "bookcover/permutation.hpp"
#include "bookcover/words.hpp"

namespace bookcover {

// Coset machinery over an explicitly enumerated finite group: cosets are the
// elements of the sorted list, acted on by right multiplication by the
// generator images. Builds the coset table, a BFS spanning tree rooted at
// the identity coset, a numbering of the surviving (non-tree) Schreier
// generators, and Reidemeister rewriting of words relative to the tree
// transversal.
class CosetRewriter {
 public:
  CosetRewriter(const std::vector<Perm>& cosets, const std::vector<Perm>& gen_images)
      : coset_count_(static_cast<std::uint32_t>(cosets.size())),
        gen_count_(static_cast<std::uint32_t>(gen_images.size())) {
    std::unordered_map<Perm, std::uint32_t, PermHash> index;
    index.reserve(cosets.size());
    for (std::uint32_t c = 0; c < coset_count_; ++c) index.emplace(cosets[c], c);
    index_ = std::move(index);

    table_.assign(static_cast<std::size_t>(coset_count_) * gen_count_, 0);
    inv_table_.assign(table_.size(), 0);
    std::vector<Perm> inverses;
    inverses.reserve(gen_count_);
    for (const Perm& g : gen_images) inverses.push_back(g.inverse());
    for (std::uint32_t c = 0; c < coset_count_; ++c)
      for (std::uint32_t g = 0; g < gen_count_; ++g) {
        table_[c * gen_count_ + g] = lookup(cosets[c] * gen_images[g]);
        inv_table_[c * gen_count_ + g] = lookup(cosets[c] * inverses[g]);
      }

    identity_coset_ = lookup(Perm::identity(cosets.empty() ? 0 : cosets[0].degree()));

    // BFS tree from the identity coset; forward edges first, then backward,
    // generators in order. tree_[c * N + g] marks the edge c --g--> c*g.
    tree_.assign(table_.size(), 0);
    std::vector<char> seen(coset_count_, 0);
    std::deque<std::uint32_t> queue{identity_coset_};
    seen[identity_coset_] = 1;
    while (!queue.empty()) {
      const std::uint32_t c = queue.front();
      queue.pop_front();
      for (std::uint32_t g = 0; g < gen_count_; ++g) {
        const std::uint32_t d = table_[c * gen_count_ + g];
        if (!seen[d]) {
          seen[d] = 1;
          tree_[c * gen_count_ + g] = 1;
          queue.push_back(d);
        }
      }
      for (std::uint32_t g = 0; g < gen_count_; ++g) {
        const std::uint32_t d = inv_table_[c * gen_count_ + g];
        if (!seen[d]) {
          seen[d] = 1;
          tree_[d * gen_count_ + g] = 1;  // edge d --g--> c
          queue.push_back(d);
        }
      }
    }
    for (char s : seen)
      if (!s) throw InternalError("coset graph is not connected");

    // Number the surviving Schreier generators row by row.
    pair_index_.assign(table_.size(), -1);
    std::int32_t next = 0;
    for (std::uint32_t c = 0; c < coset_count_; ++c)
      for (std::uint32_t g = 0; g < gen_count_; ++g)
        if (!tree_[c * gen_count_ + g]) pair_index_[c * gen_count_ + g] = next++;
    subgroup_gen_count_ = static_cast<std::uint32_t>(next);
  }

  std::uint32_t coset_count() const { return coset_count_; }
  std::uint32_t gen_count() const { return gen_count_; }
  std::uint32_t subgroup_gen_count() const { return subgroup_gen_count_; }
  std::uint32_t identity_coset() const { return identity_coset_; }

  std::uint32_t coset_of(const Perm& p) const { return lookup(p); }

  std::int32_t pair_index(std::uint32_t coset, std::uint32_t gen) const {
    return pair_index_[coset * gen_count_ + gen];
  }

  std::uint32_t step(std::uint32_t coset, std::int32_t word_letter) const {
    const std::uint32_t g = letter_gen(word_letter);
    return word_letter > 0 ? table_[coset * gen_count_ + g]
                           : inv_table_[coset * gen_count_ + g];
  }

  // Reidemeister rewriting of w read from `start`: the word, over the
  // surviving Schreier generators, of  rep(start) * w * rep(start . w)^{-1}.
  Word rewrite(std::uint32_t start, const Word& w) const {
    Word out;
    std::uint32_t c = start;
    for (std::int32_t l : w) {
      const std::uint32_t g = letter_gen(l);
      if (l > 0) {
        const std::int32_t idx = pair_index(c, g);
        if (idx >= 0) out.push_back(letter(static_cast<std::uint32_t>(idx)));
        c = table_[c * gen_count_ + g];
      } else {
        c = inv_table_[c * gen_count_ + g];
        const std::int32_t idx = pair_index(c, g);
        if (idx >= 0) out.push_back(letter(static_cast<std::uint32_t>(idx), true));
      }
    }
    return out;
  }

  // Exponent sums of rewrite(start, w) without materializing the word.
  std::vector<std::int64_t> rewrite_exponents(std::uint32_t start, const Word& w) const {
    std::vector<std::int64_t> sums(subgroup_gen_count_, 0);
    std::uint32_t c = start;
    for (std::int32_t l : w) {
      const std::uint32_t g = letter_gen(l);
      if (l > 0) {
        const std::int32_t idx = pair_index(c, g);
        if (idx >= 0) ++sums[static_cast<std::size_t>(idx)];
        c = table_[c * gen_count_ + g];
      } else {
        c = inv_table_[c * gen_count_ + g];
        const std::int32_t idx = pair_index(c, g);
        if (idx >= 0) --sums[static_cast<std::size_t>(idx)];
      }
    }
    return sums;
  }

 private:
  std::uint32_t lookup(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InternalError("permutation not in coset list");
    return it->second;
  }

  std::uint32_t coset_count_;
  std::uint32_t gen_count_;
  std::uint32_t subgroup_gen_count_ = 0;
  std::uint32_t identity_coset_ = 0;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<std::uint8_t> tree_;
  std::vector<std::int32_t> pair_index_;
};

}  // namespace bookcover

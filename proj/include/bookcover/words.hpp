#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "bookcover/errors.hpp"

namespace bookcover {

// Word in a free group: letters are +-(generator index + 1).
using Word = std::vector<std::int32_t>;

inline std::int32_t letter(std::uint32_t gen, bool inverse = false) {
  const auto v = static_cast<std::int32_t>(gen) + 1;
  return inverse ? -v : v;
}

inline std::uint32_t letter_gen(std::int32_t l) {
  return static_cast<std::uint32_t>((l < 0 ? -l : l) - 1);
}

inline void free_reduce(Word& w) {
  Word out;
  out.reserve(w.size());
  for (std::int32_t l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  w = std::move(out);
}

inline Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline void append(Word& w, const Word& tail) {
  w.insert(w.end(), tail.begin(), tail.end());
}

inline Word power(const Word& w, std::int64_t e) {
  Word out;
  const Word base = e < 0 ? inverse(w) : w;
  const std::uint64_t n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  for (std::uint64_t i = 0; i < n; ++i) append(out, base);
  return out;
}

// Exponent sum of each generator; length = generator count.
inline std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t gen_count) {
  std::vector<std::int64_t> sums(gen_count, 0);
  for (std::int32_t l : w) {
    const std::uint32_t g = letter_gen(l);
    if (g >= gen_count) throw InternalError("word letter out of range");
    sums[g] += l > 0 ? 1 : -1;
  }
  return sums;
}

}  // namespace bookcover

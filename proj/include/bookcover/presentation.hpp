#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "bookcover/book.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/integer_homology.hpp"
#include "bookcover/words.hpp"

namespace bookcover {

enum class GenRole : std::uint8_t { Circle, Handle, Crosscap, Boundary, StableLetter };

struct GeneratorInfo {
  std::string name;
  GenRole role = GenRole::Circle;
  std::uint32_t owner = 0;    // circle / surface / edge index, by role
  std::uint32_t ordinal = 0;  // 1-based position among the owner's generators
};

// Finite presentation of the fundamental group of a book complex, built from
// its graph-of-groups structure: free surface groups, one t per circle, one
// stable letter per non-tree edge, one relator per edge.
struct GroupPresentation {
  std::vector<GeneratorInfo> generators;
  std::vector<Word> relators;  // one per book edge, in edge order

  std::vector<std::uint32_t> circle_gen;             // circle i -> index of t_i
  std::vector<std::vector<std::uint32_t>> surface_gens;  // handles/crosscaps, then sigmas
  std::vector<std::int32_t> stable_letter;           // edge -> generator index, -1 on tree edges
  std::vector<std::uint8_t> edge_in_tree;
  std::unordered_map<std::string, std::uint32_t> index_of;

  std::uint32_t stable_letter_count() const {
    std::uint32_t n = 0;
    for (std::int32_t s : stable_letter)
      if (s >= 0) ++n;
    return n;
  }
};

// Local generator layout of a surface group: orientable pages list
// x_1, y_1, ..., x_g, y_g then sigma_1..sigma_{s-1}; non-orientable pages
// list x_1..x_r then sigma_1..sigma_{s-1}.
inline std::uint32_t local_sigma_index(const SurfaceType& s, std::uint32_t k) {
  return (s.orientable ? 2 * s.genus : s.genus) + k;
}

// Boundary word of component k (0-based) over the local generators. The
// first s-1 components are free generators; the last is the word making the
// closed-up surface relation hold:
//   orientable:      ([x_1,y_1]...[x_g,y_g] s_1...s_{s-1})^{-1}
//   non-orientable:  (x_1^2...x_r^2 s_1...s_{s-1})^{-1}
// Punctured spheres (g = 0) degenerate to (s_1...s_{s-1})^{-1}.
inline Word boundary_word_local(const SurfaceType& s, std::uint32_t k) {
  if (k >= s.boundary_count)
    throw MalformedInput("boundary index " + std::to_string(k) + " out of range");
  if (k + 1 < s.boundary_count) return {letter(local_sigma_index(s, k))};
  Word w;
  if (s.orientable) {
    for (std::uint32_t h = 0; h < s.genus; ++h) {
      const std::uint32_t x = 2 * h, y = 2 * h + 1;
      w.push_back(letter(x));
      w.push_back(letter(y));
      w.push_back(letter(x, true));
      w.push_back(letter(y, true));
    }
  } else {
    for (std::uint32_t c = 0; c < s.genus; ++c) {
      w.push_back(letter(c));
      w.push_back(letter(c));
    }
  }
  for (std::uint32_t t = 0; t + 1 < s.boundary_count; ++t)
    w.push_back(letter(local_sigma_index(s, t)));
  return inverse(w);
}

// Orientation character on a local generator of a non-orientable surface:
// crosscaps reverse, boundaries do not.
inline int w1_local(const SurfaceType& s, std::uint32_t local_gen) {
  return (!s.orientable && local_gen < s.genus) ? 1 : 0;
}

namespace detail {

// BFS spanning tree of the bipartite graph, rooted at circle 0. Neighbors of
// a vertex are visited sorted by (kind: circles first, index, edge index),
// which pins the tree and hence the whole presentation.
inline std::vector<std::uint8_t> spanning_tree(const BookComplex& book) {
  const std::size_t vertices = book.circle_count + book.surfaces.size();
  std::vector<std::uint8_t> in_tree(book.edges.size(), 0);
  if (vertices == 0) return in_tree;

  // vertex ids: circles 0..m-1, surfaces m..m+k-1
  std::vector<std::vector<std::uint32_t>> incident(vertices);
  for (std::uint32_t e = 0; e < book.edges.size(); ++e) {
    incident[book.edges[e].circle].push_back(e);
    incident[book.circle_count + book.edges[e].surface].push_back(e);
  }
  auto other_end = [&](std::uint32_t e, std::size_t v) -> std::size_t {
    const std::size_t c = book.edges[e].circle;
    const std::size_t s = book.circle_count + book.edges[e].surface;
    return v == c ? s : c;
  };
  for (auto& list : incident)
    std::sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
      return a < b;  // edge order; endpoints of a bipartite vertex share a kind
    });

  std::vector<char> seen(vertices, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t e : incident[v]) {
      const std::size_t w = other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        in_tree[e] = 1;
        queue.push_back(w);
      }
    }
  }
  return in_tree;
}

}  // namespace detail

inline Word boundary_word(const GroupPresentation& p, const BookComplex& book,
                          std::uint32_t j, std::uint32_t k);

// Presentation of pi_1: generators are all surface generators (surface
// order), then t_i per circle, then u_e per non-tree edge; each edge (j, k,
// i, d) contributes the relator  boundary_word(j,k) * u_e t_i^{-d} u_e^{-1}
// with u_e = 1 on tree edges. Deterministic: identical books give identical
// presentations.
inline GroupPresentation present(const BookComplex& book) {
  {
    ValidationReport report = validate(book);
    if (!report.empty())
      throw MalformedInput("present: invalid book (" + report.front().rule + ": " +
                           report.front().detail + ")");
  }

  GroupPresentation p;
  auto add_gen = [&](std::string name, GenRole role, std::uint32_t owner,
                     std::uint32_t ordinal) -> std::uint32_t {
    const auto idx = static_cast<std::uint32_t>(p.generators.size());
    p.index_of.emplace(name, idx);
    p.generators.push_back({std::move(name), role, owner, ordinal});
    return idx;
  };

  p.surface_gens.resize(book.surfaces.size());
  for (std::uint32_t j = 0; j < book.surfaces.size(); ++j) {
    const SurfaceType& s = book.surfaces[j];
    const std::string js = std::to_string(j);
    if (s.orientable) {
      for (std::uint32_t h = 0; h < s.genus; ++h) {
        p.surface_gens[j].push_back(
            add_gen("x" + js + "_" + std::to_string(h + 1), GenRole::Handle, j, h + 1));
        p.surface_gens[j].push_back(
            add_gen("y" + js + "_" + std::to_string(h + 1), GenRole::Handle, j, h + 1));
      }
    } else {
      for (std::uint32_t c = 0; c < s.genus; ++c)
        p.surface_gens[j].push_back(
            add_gen("x" + js + "_" + std::to_string(c + 1), GenRole::Crosscap, j, c + 1));
    }
    for (std::uint32_t b = 0; b + 1 < s.boundary_count; ++b)
      p.surface_gens[j].push_back(
          add_gen("s" + js + "_" + std::to_string(b + 1), GenRole::Boundary, j, b + 1));
  }
  p.circle_gen.resize(book.circle_count);
  for (std::uint32_t i = 0; i < book.circle_count; ++i)
    p.circle_gen[i] = add_gen("t" + std::to_string(i), GenRole::Circle, i, 1);

  p.edge_in_tree = detail::spanning_tree(book);
  p.stable_letter.assign(book.edges.size(), -1);
  for (std::uint32_t e = 0; e < book.edges.size(); ++e)
    if (!p.edge_in_tree[e])
      p.stable_letter[e] = static_cast<std::int32_t>(
          add_gen("u" + std::to_string(e), GenRole::StableLetter, e, 1));

  for (std::uint32_t e = 0; e < book.edges.size(); ++e) {
    const BookEdge& edge = book.edges[e];
    Word rel = boundary_word(p, book, edge.surface, edge.boundary_index);
    const Word t_part = power({letter(p.circle_gen[edge.circle])}, -edge.degree);
    if (p.stable_letter[e] >= 0) {
      const auto u = static_cast<std::uint32_t>(p.stable_letter[e]);
      rel.push_back(letter(u));
      append(rel, t_part);
      rel.push_back(letter(u, true));
    } else {
      append(rel, t_part);
    }
    free_reduce(rel);
    p.relators.push_back(std::move(rel));
  }
  return p;
}

// Boundary word of surface j, component k, over the global generators.
inline Word boundary_word(const GroupPresentation& p, const BookComplex& book,
                          std::uint32_t j, std::uint32_t k) {
  if (j >= book.surfaces.size())
    throw MalformedInput("surface index " + std::to_string(j) + " out of range");
  Word local = boundary_word_local(book.surfaces[j], k);
  Word global;
  global.reserve(local.size());
  for (std::int32_t l : local) {
    const std::uint32_t g = p.surface_gens[j][letter_gen(l)];
    global.push_back(l > 0 ? letter(g) : letter(g, true));
  }
  return global;
}

// Exponent-sum matrix of the relators: rows = relators, cols = generators.
inline IntMatrix abelianization_matrix(const GroupPresentation& p) {
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    const auto sums = exponent_sums(p.relators[r], p.generators.size());
    for (std::size_t g = 0; g < sums.size(); ++g) m.at(r, g) = sums[g];
  }
  return m;
}

// Plain-text export: one "gen:" line, one "rel:" line per relator. A token
// with an uppercase first letter is the inverse of the lowercase generator.
inline std::string export_text(const GroupPresentation& p) {
  std::ostringstream out;
  out << "gen:";
  for (const GeneratorInfo& g : p.generators) out << ' ' << g.name;
  out << '\n';
  for (const Word& rel : p.relators) {
    out << "rel:";
    for (std::int32_t l : rel) {
      std::string name = p.generators[letter_gen(l)].name;
      if (l < 0) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
      out << ' ' << name;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace bookcover

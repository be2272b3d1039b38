#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bookcover/errors.hpp"

namespace bookcover {

// Compact surface with boundary: the base of a page. genus counts handles
// when orientable and crosscaps when not.
struct SurfaceType {
  bool orientable = true;
  std::uint32_t genus = 0;
  std::uint32_t boundary_count = 0;

  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
};

inline std::int64_t euler_characteristic(const SurfaceType& s) {
  const auto g = static_cast<std::int64_t>(s.genus);
  const auto b = static_cast<std::int64_t>(s.boundary_count);
  return s.orientable ? 2 - 2 * g - b : 2 - g - b;
}

// Rank of the free group pi_1 of the surface.
inline std::uint32_t surface_free_rank(const SurfaceType& s) {
  return (s.orientable ? 2 * s.genus : s.genus) + s.boundary_count - 1;
}

// One vertical boundary annulus glued to a binding: boundary component
// `boundary_index` of page `surface` wraps `degree` times around circle
// `circle`. The sign of `degree` is chosen orientation data.
struct BookEdge {
  std::uint32_t surface = 0;
  std::uint32_t boundary_index = 0;
  std::uint32_t circle = 0;
  std::int64_t degree = 1;

  friend bool operator==(const BookEdge&, const BookEdge&) = default;
};

// Combinatorial spine of a book of I-bundles: circle vertex spaces from the
// bindings, surface vertex spaces from the pages, and the attaching degrees.
// Immutable value after construction; safe to share across workers.
struct BookComplex {
  std::uint32_t circle_count = 0;
  std::vector<SurfaceType> surfaces;
  std::vector<BookEdge> edges;

  friend bool operator==(const BookComplex&, const BookComplex&) = default;
};

struct ValidationIssue {
  std::string rule;
  std::string detail;
};
using ValidationReport = std::vector<ValidationIssue>;

// Reports every violated invariant; never aborts. A book is valid iff the
// report is empty.
inline ValidationReport validate(const BookComplex& book) {
  ValidationReport report;
  auto flag = [&](std::string rule, std::string detail) {
    report.push_back({std::move(rule), std::move(detail)});
  };

  if (book.circle_count == 0) flag("circle count", "book has no circles");

  for (std::size_t j = 0; j < book.surfaces.size(); ++j) {
    const SurfaceType& s = book.surfaces[j];
    if (s.boundary_count == 0)
      flag("closed page", "surface " + std::to_string(j) + " has no boundary");
    if (!s.orientable && s.genus == 0)
      flag("crosscap count", "non-orientable surface " + std::to_string(j) +
                                 " needs at least one crosscap");
    if (euler_characteristic(s) >= 0)
      flag("non-negative Euler characteristic",
           "surface " + std::to_string(j) + " has chi = " +
               std::to_string(euler_characteristic(s)));
  }

  bool indices_ok = true;
  for (std::size_t e = 0; e < book.edges.size(); ++e) {
    const BookEdge& edge = book.edges[e];
    if (edge.surface >= book.surfaces.size()) {
      flag("edge surface index", "edge " + std::to_string(e) + " references surface " +
                                     std::to_string(edge.surface));
      indices_ok = false;
      continue;
    }
    if (edge.circle >= book.circle_count) {
      flag("edge circle index", "edge " + std::to_string(e) + " references circle " +
                                    std::to_string(edge.circle));
      indices_ok = false;
    }
    if (edge.boundary_index >= book.surfaces[edge.surface].boundary_count) {
      flag("edge boundary index",
           "edge " + std::to_string(e) + " references boundary " +
               std::to_string(edge.boundary_index) + " of surface " +
               std::to_string(edge.surface));
      indices_ok = false;
    }
    if (edge.degree == 0)
      flag("zero degree", "edge " + std::to_string(e) + " has degree 0");
  }

  if (indices_ok) {
    // Every boundary component is attached exactly once.
    std::vector<std::vector<std::uint32_t>> hits(book.surfaces.size());
    for (std::size_t j = 0; j < book.surfaces.size(); ++j)
      hits[j].assign(book.surfaces[j].boundary_count, 0);
    for (const BookEdge& edge : book.edges) ++hits[edge.surface][edge.boundary_index];
    for (std::size_t j = 0; j < hits.size(); ++j)
      for (std::size_t k = 0; k < hits[j].size(); ++k) {
        if (hits[j][k] == 0)
          flag("boundary unattached", "surface " + std::to_string(j) + " boundary " +
                                          std::to_string(k) + " is attached to no circle");
        else if (hits[j][k] > 1)
          flag("boundary attached twice", "surface " + std::to_string(j) + " boundary " +
                                              std::to_string(k) + " is attached " +
                                              std::to_string(hits[j][k]) + " times");
      }

    // Connectivity of the bipartite graph: circles 0..m-1, then surfaces.
    const std::size_t vertices = book.circle_count + book.surfaces.size();
    if (vertices > 0) {
      std::vector<char> seen(vertices, 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (const BookEdge& edge : book.edges) {
          const std::size_t a = edge.circle;
          const std::size_t b = book.circle_count + edge.surface;
          if (a == v && !seen[b]) {
            seen[b] = 1;
            stack.push_back(b);
          } else if (b == v && !seen[a]) {
            seen[a] = 1;
            stack.push_back(a);
          }
        }
      }
      if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        flag("disconnected", "underlying graph is not connected");
    }
  }

  return report;
}

inline bool is_valid(const BookComplex& book) { return validate(book).empty(); }

inline std::uint32_t circle_valence(const BookComplex& book, std::uint32_t circle) {
  if (circle >= book.circle_count)
    throw MalformedInput("circle index " + std::to_string(circle) + " out of range");
  std::uint32_t count = 0;
  for (const BookEdge& edge : book.edges)
    if (edge.circle == circle) ++count;
  return count;
}

struct GlobalBounds {
  std::uint64_t val = 1;  // max circle valence (at least 1)
  std::uint64_t d = 1;    // max |degree| over edges (at least 1)
  std::uint32_t m = 0;    // circle count
};

inline GlobalBounds global_bounds(const BookComplex& book) {
  GlobalBounds b;
  b.m = book.circle_count;
  for (std::uint32_t i = 0; i < book.circle_count; ++i)
    b.val = std::max<std::uint64_t>(b.val, circle_valence(book, i));
  for (const BookEdge& edge : book.edges) {
    const auto mag = static_cast<std::uint64_t>(edge.degree < 0 ? -edge.degree : edge.degree);
    b.d = std::max(b.d, mag);
  }
  return b;
}

// First Betti number of the underlying bipartite graph (assumes connected).
inline std::uint32_t graph_first_betti(const BookComplex& book) {
  const auto vertices = book.circle_count + static_cast<std::uint32_t>(book.surfaces.size());
  const auto edges = static_cast<std::uint32_t>(book.edges.size());
  return edges + 1 - vertices;
}

namespace detail {
inline void require_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                         const char* what) {
  if (!j.is_object()) throw MalformedInput(std::string(what) + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (item.key() == k) known = true;
    if (!known)
      throw MalformedInput(std::string(what) + ": unknown key \"" + item.key() + "\"");
  }
  for (const char* k : keys)
    if (!j.contains(k))
      throw MalformedInput(std::string(what) + ": missing key \"" + k + "\"");
}

inline std::uint32_t get_u32(const nlohmann::json& j, const char* key, const char* what) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned())
    throw MalformedInput(std::string(what) + ": \"" + key + "\" must be a non-negative integer");
  const auto u = v.get<std::uint64_t>();
  if (u > 0xffffffffull)
    throw MalformedInput(std::string(what) + ": \"" + key + "\" too large");
  return static_cast<std::uint32_t>(u);
}
}  // namespace detail

// Strict schema; unknown keys rejected, semantic checks left to validate().
inline BookComplex book_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"circles", "surfaces", "edges"}, "book");
  BookComplex book;
  book.circle_count = detail::get_u32(j, "circles", "book");
  const auto& surfaces = j.at("surfaces");
  if (!surfaces.is_array()) throw MalformedInput("book: \"surfaces\" must be an array");
  for (const auto& sj : surfaces) {
    detail::require_keys(sj, {"orientable", "genus", "boundary"}, "surface");
    if (!sj.at("orientable").is_boolean())
      throw MalformedInput("surface: \"orientable\" must be a boolean");
    SurfaceType s;
    s.orientable = sj.at("orientable").get<bool>();
    s.genus = detail::get_u32(sj, "genus", "surface");
    s.boundary_count = detail::get_u32(sj, "boundary", "surface");
    book.surfaces.push_back(s);
  }
  const auto& edges = j.at("edges");
  if (!edges.is_array()) throw MalformedInput("book: \"edges\" must be an array");
  for (const auto& ej : edges) {
    detail::require_keys(ej, {"surface", "boundary_index", "circle", "degree"}, "edge");
    BookEdge e;
    e.surface = detail::get_u32(ej, "surface", "edge");
    e.boundary_index = detail::get_u32(ej, "boundary_index", "edge");
    e.circle = detail::get_u32(ej, "circle", "edge");
    if (!ej.at("degree").is_number_integer())
      throw MalformedInput("edge: \"degree\" must be an integer");
    e.degree = ej.at("degree").get<std::int64_t>();
    book.edges.push_back(e);
  }
  return book;
}

inline nlohmann::json book_to_json(const BookComplex& book) {
  nlohmann::json j;
  j["circles"] = book.circle_count;
  j["surfaces"] = nlohmann::json::array();
  for (const SurfaceType& s : book.surfaces)
    j["surfaces"].push_back({{"orientable", s.orientable},
                             {"genus", s.genus},
                             {"boundary", s.boundary_count}});
  j["edges"] = nlohmann::json::array();
  for (const BookEdge& e : book.edges)
    j["edges"].push_back({{"surface", e.surface},
                          {"boundary_index", e.boundary_index},
                          {"circle", e.circle},
                          {"degree", e.degree}});
  return j;
}

}  // namespace bookcover

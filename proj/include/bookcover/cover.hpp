#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "bookcover/book.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/perm_group.hpp"
#include "bookcover/presentation.hpp"
#include "bookcover/quotient.hpp"

namespace bookcover {

// Component of the preimage of a circle vertex space: the left coset of
// <phi(t_i)> containing its fiber labels. Regularity makes the covering
// degree D_i independent of the lift.
struct CircleLift {
  std::uint32_t base_circle = 0;
  Perm label;  // lexicographically minimal coset member
  std::uint64_t degree_over_base = 1;
};

// One boundary circle of a surface lift, identified with the edge lift it
// traverses. orbit_index names the corresponding boundary component of the
// canonical (identity-labeled) lift, which deck translation carries to this
// one; the sign computation is done once per base surface and transported.
struct BoundaryLift {
  std::uint32_t base_boundary = 0;
  Perm label;  // minimal member of the edge-lift coset
  std::uint32_t orbit_index = 0;
  std::uint32_t circle_lift = 0;  // global index
  std::int64_t elevation_degree = 1;
};

struct SurfaceLift {
  std::uint32_t base_surface = 0;
  Perm label;
  std::uint64_t degree_over_base = 1;
  SurfaceType topology;
  std::vector<BoundaryLift> boundary_lifts;  // ordered by (base_boundary, label)
};

// Shared per-base-surface data: the image subgroup, the local generator
// images, and the boundary orbit structure of the canonical lift.
struct SurfaceCoverData {
  std::vector<Perm> subgroup_elements;  // sorted
  std::vector<Perm> local_images;
  std::uint64_t subgroup_order = 1;
  SurfaceType lift_topology;
  std::vector<Word> local_boundary_words;
  std::vector<Perm> boundary_image;          // beta_k = phi(b_k)
  std::vector<std::uint64_t> boundary_order;  // ord(beta_k)
  std::vector<std::vector<Perm>> boundary_orbit_reps;  // [k], sorted minimal reps
  std::vector<std::unordered_map<Perm, std::uint32_t, PermHash>> orbit_index_of;  // [k]
};

// The lifted decomposition of the regular cover defined by a quotient.
// Everything downstream (matrix assembly, bounds, reports) reads from this
// immutable value.
struct CoveredComplex {
  BookComplex base;
  GroupPresentation presentation;
  FiniteQuotient quotient;
  std::uint64_t total_degree = 1;

  std::vector<CircleLift> circle_lifts;        // grouped by base circle
  std::vector<std::uint64_t> circle_offset;    // size m+1
  std::vector<std::uint64_t> circle_degree;    // D_i per base circle
  std::vector<std::unordered_map<Perm, std::uint32_t, PermHash>> circle_coset_of;

  std::vector<SurfaceLift> surface_lifts;      // grouped by base surface
  std::vector<std::uint64_t> surface_offset;   // size k+1
  std::vector<SurfaceCoverData> surface_data;

  std::vector<std::uint32_t> edge_of_boundary_flat;  // (j,k) -> edge index
  std::uint64_t edge_lift_count = 0;

  std::uint32_t edge_of_boundary(std::uint32_t j, std::uint32_t k) const {
    std::uint32_t off = 0;
    for (std::uint32_t jj = 0; jj < j; ++jj) off += base.surfaces[jj].boundary_count;
    return edge_of_boundary_flat[off + k];
  }

  // Betti number of the lifted graph: edge lifts minus vertex lifts plus one.
  std::uint64_t graph_betti() const {
    return edge_lift_count + 1 - circle_lifts.size() - surface_lifts.size();
  }
};

namespace detail {

inline std::uint64_t order_u64(const Perm& p) {
  return p.order().convert_to<std::uint64_t>();
}

inline Perm evaluate_images(const std::vector<Perm>& images, std::uint32_t degree,
                            const Word& w) {
  Perm r = Perm::identity(degree);
  for (std::int32_t l : w)
    r = l > 0 ? r * images[letter_gen(l)] : r * images[letter_gen(l)].inverse();
  return r;
}

// Orientability of the lift: the lift is orientable iff ker(phi) restricted
// to the surface group lies inside the orientation character's kernel, which
// holds iff pairing phi with w1 does not grow the image. The pairing is
// realized on two extra points swapped by orientation-reversing generators.
inline bool surface_lift_orientable(std::uint32_t degree,
                                    const std::vector<Perm>& local_images,
                                    const SurfaceType& s) {
  if (s.orientable) return true;
  std::vector<Perm> extended;
  extended.reserve(local_images.size());
  for (std::size_t i = 0; i < local_images.size(); ++i) {
    std::vector<std::uint32_t> img(degree + 2);
    for (std::uint32_t x = 0; x < degree; ++x) img[x] = local_images[i][x];
    const bool reverses = w1_local(s, static_cast<std::uint32_t>(i)) == 1;
    img[degree] = reverses ? degree + 1 : degree;
    img[degree + 1] = reverses ? degree : degree + 1;
    extended.emplace_back(std::move(img));
  }
  const PermGroup plain(degree, local_images);
  const PermGroup paired(degree + 2, extended);
  return paired.order() == plain.order();
}

// Classification arithmetic: recover the lift's genus/crosscap count from
// its Euler characteristic and boundary count.
inline SurfaceType solve_lift_topology(std::int64_t chi_hat, std::uint64_t s_hat,
                                       bool orientable) {
  SurfaceType t;
  t.orientable = orientable;
  t.boundary_count = static_cast<std::uint32_t>(s_hat);
  const std::int64_t rest = 2 - chi_hat - static_cast<std::int64_t>(s_hat);
  if (orientable) {
    if (rest < 0 || rest % 2 != 0)
      throw InternalError("lift topology: genus parity violation");
    t.genus = static_cast<std::uint32_t>(rest / 2);
  } else {
    if (rest < 1) throw InternalError("lift topology: missing crosscaps");
    t.genus = static_cast<std::uint32_t>(rest);
  }
  return t;
}

}  // namespace detail

// Orientability of the lift of one surface over the subgroup generated by
// the given generator words (orientable bases lift orientably, no
// computation). Words are over the ambient presentation's generators and
// must list the surface's local generators in order.
inline bool lift_orientable(const FiniteQuotient& q, const SurfaceType& s,
                            const std::vector<Word>& surface_gen_words) {
  if (s.orientable) return true;
  std::vector<Perm> images;
  images.reserve(surface_gen_words.size());
  for (const Word& w : surface_gen_words) images.push_back(evaluate(q, w));
  return detail::surface_lift_orientable(q.degree, images, s);
}

// Homeomorphism type shared by all lifts of the surface.
inline SurfaceType lift_topology(const FiniteQuotient& q, const SurfaceType& s,
                                 const std::vector<Word>& surface_gen_words) {
  std::vector<Perm> images;
  images.reserve(surface_gen_words.size());
  for (const Word& w : surface_gen_words) images.push_back(evaluate(q, w));
  const PermGroup sub(q.degree, images);
  const std::uint64_t sub_order = sub.order().convert_to<std::uint64_t>();
  std::uint64_t s_hat = 0;
  for (std::uint32_t k = 0; k < s.boundary_count; ++k) {
    const Perm beta = detail::evaluate_images(images, q.degree, boundary_word_local(s, k));
    s_hat += sub_order / detail::order_u64(beta);
  }
  const std::int64_t chi_hat =
      static_cast<std::int64_t>(sub_order) * euler_characteristic(s);
  return detail::solve_lift_topology(
      chi_hat, s_hat, detail::surface_lift_orientable(q.degree, images, s));
}

// Lifts the whole decomposition. Circle lifts are cosets G/<phi(t_i)>,
// surface lifts are cosets G/phi(pi_1 Sigma_j), and a boundary lift labeled
// w attaches to the circle lift containing w * phi(u_e), where u_e is the
// edge's stable letter (identity on tree edges). Elevation degrees are
// |d_e| / gcd(D_i, |d_e|) with the base edge's sign.
inline CoveredComplex lift(const BookComplex& book, const GroupPresentation& p,
                           const FiniteQuotient& q, const Caps& caps = {}) {
  if (!check_homomorphism(p, q))
    throw MalformedInput("images do not define a homomorphism");

  CoveredComplex cov;
  cov.base = book;
  cov.presentation = p;
  cov.quotient = q;

  const std::vector<Perm>& elements = q.group->elements(caps.max_group_order);
  cov.total_degree = elements.size();

  // Circle lifts.
  cov.circle_offset.assign(book.circle_count + 1, 0);
  cov.circle_degree.assign(book.circle_count, 1);
  cov.circle_coset_of.resize(book.circle_count);
  for (std::uint32_t i = 0; i < book.circle_count; ++i) {
    const Perm& t = q.images[p.circle_gen[i]];
    const std::uint64_t d_i = detail::order_u64(t);
    std::vector<Perm> cyclic;
    cyclic.reserve(d_i);
    Perm cur = Perm::identity(q.degree);
    for (std::uint64_t a = 0; a < d_i; ++a) {
      cyclic.push_back(cur);
      cur = cur * t;
    }
    CosetPartition part = left_cosets(elements, cyclic);
    cov.circle_degree[i] = d_i;
    cov.circle_offset[i] = cov.circle_lifts.size();
    for (const Perm& rep : part.reps)
      cov.circle_lifts.push_back({i, rep, d_i});
    cov.circle_coset_of[i] = std::move(part.coset_of);
  }
  cov.circle_offset[book.circle_count] = cov.circle_lifts.size();

  // Boundary -> edge table (valid books attach each boundary exactly once).
  {
    std::uint32_t total = 0;
    for (const SurfaceType& s : book.surfaces) total += s.boundary_count;
    cov.edge_of_boundary_flat.assign(total, 0);
    std::uint32_t off = 0;
    std::vector<std::uint32_t> offsets(book.surfaces.size());
    for (std::uint32_t j = 0; j < book.surfaces.size(); ++j) {
      offsets[j] = off;
      off += book.surfaces[j].boundary_count;
    }
    for (std::uint32_t e = 0; e < book.edges.size(); ++e)
      cov.edge_of_boundary_flat[offsets[book.edges[e].surface] +
                                book.edges[e].boundary_index] = e;
  }

  // Surface lifts.
  cov.surface_offset.assign(book.surfaces.size() + 1, 0);
  cov.surface_data.resize(book.surfaces.size());
  for (std::uint32_t j = 0; j < book.surfaces.size(); ++j) {
    const SurfaceType& s = book.surfaces[j];
    SurfaceCoverData& data = cov.surface_data[j];

    data.local_images.reserve(p.surface_gens[j].size());
    for (std::uint32_t g : p.surface_gens[j]) data.local_images.push_back(q.images[g]);
    data.subgroup_elements =
        PermGroup::closure(q.degree, data.local_images, caps.max_group_order);
    data.subgroup_order = data.subgroup_elements.size();
    const std::uint64_t big_q = data.subgroup_order;

    std::uint64_t s_hat = 0;
    data.local_boundary_words.resize(s.boundary_count);
    data.boundary_image.resize(s.boundary_count);
    data.boundary_order.resize(s.boundary_count);
    for (std::uint32_t k = 0; k < s.boundary_count; ++k) {
      data.local_boundary_words[k] = boundary_word_local(s, k);
      data.boundary_image[k] =
          detail::evaluate_images(data.local_images, q.degree, data.local_boundary_words[k]);
      data.boundary_order[k] = detail::order_u64(data.boundary_image[k]);
      s_hat += big_q / data.boundary_order[k];
    }
    data.lift_topology = detail::solve_lift_topology(
        static_cast<std::int64_t>(big_q) * euler_characteristic(s), s_hat,
        detail::surface_lift_orientable(q.degree, data.local_images, s));

    // Orbits of right multiplication by beta_k on the canonical lift's fiber.
    data.boundary_orbit_reps.resize(s.boundary_count);
    data.orbit_index_of.resize(s.boundary_count);
    std::unordered_map<Perm, std::uint32_t, PermHash> position;
    position.reserve(data.subgroup_elements.size());
    for (std::uint32_t idx = 0; idx < data.subgroup_elements.size(); ++idx)
      position.emplace(data.subgroup_elements[idx], idx);
    for (std::uint32_t k = 0; k < s.boundary_count; ++k) {
      std::vector<char> used(data.subgroup_elements.size(), 0);
      for (std::uint32_t idx = 0; idx < data.subgroup_elements.size(); ++idx) {
        if (used[idx]) continue;
        const Perm& rep = data.subgroup_elements[idx];  // minimal: scan is sorted
        const auto orbit_id =
            static_cast<std::uint32_t>(data.boundary_orbit_reps[k].size());
        data.boundary_orbit_reps[k].push_back(rep);
        data.orbit_index_of[k].emplace(rep, orbit_id);
        Perm cur = rep;
        do {
          used[position.at(cur)] = 1;
          cur = cur * data.boundary_image[k];
        } while (cur != rep);
      }
      if (data.boundary_orbit_reps[k].size() != big_q / data.boundary_order[k])
        throw InternalError("boundary orbit count mismatch");
    }

    // One lift per coset of the image subgroup.
    CosetPartition part = left_cosets(elements, data.subgroup_elements);
    cov.surface_offset[j] = cov.surface_lifts.size();
    for (const Perm& rep : part.reps) {
      SurfaceLift sl;
      sl.base_surface = j;
      sl.label = rep;
      sl.degree_over_base = big_q;
      sl.topology = data.lift_topology;
      for (std::uint32_t k = 0; k < s.boundary_count; ++k) {
        const std::uint32_t e = cov.edge_of_boundary(j, k);
        const BookEdge& edge = book.edges[e];
        const Perm edge_path = p.stable_letter[e] >= 0
                                   ? q.images[static_cast<std::uint32_t>(p.stable_letter[e])]
                                   : Perm::identity(q.degree);
        const std::uint64_t d_i = cov.circle_degree[edge.circle];
        const std::uint64_t d_abs =
            static_cast<std::uint64_t>(edge.degree < 0 ? -edge.degree : edge.degree);
        const std::uint64_t g = std::gcd(d_i, d_abs);
        const std::int64_t elevation =
            (edge.degree < 0 ? -1 : 1) * static_cast<std::int64_t>(d_abs / g);
        for (std::uint32_t o = 0; o < data.boundary_orbit_reps[k].size(); ++o) {
          const Perm w = rep * data.boundary_orbit_reps[k][o];
          BoundaryLift bl;
          bl.base_boundary = k;
          bl.orbit_index = o;
          bl.label = min_in_cyclic_coset(w, data.boundary_image[k]);
          const Perm target = w * edge_path;
          bl.circle_lift = static_cast<std::uint32_t>(
              cov.circle_offset[edge.circle] +
              cov.circle_coset_of[edge.circle].at(target));
          bl.elevation_degree = elevation;
          sl.boundary_lifts.push_back(std::move(bl));
        }
      }
      std::sort(sl.boundary_lifts.begin(), sl.boundary_lifts.end(),
                [](const BoundaryLift& a, const BoundaryLift& b) {
                  if (a.base_boundary != b.base_boundary)
                    return a.base_boundary < b.base_boundary;
                  return a.label < b.label;
                });
      cov.edge_lift_count += sl.boundary_lifts.size();
      cov.surface_lifts.push_back(std::move(sl));
    }
  }
  cov.surface_offset[book.surfaces.size()] = cov.surface_lifts.size();

  // Degree-sum law and elevation counting, checked on every computed cover:
  // over each circle lift above the target of a base edge, the elevation
  // degrees sum to d_e and number gcd(D_i, |d_e|).
  {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::int64_t, std::uint64_t>>
        incidence;  // (edge, circle lift) -> (degree sum, count)
    for (std::uint32_t li = 0; li < cov.surface_lifts.size(); ++li) {
      const SurfaceLift& sl = cov.surface_lifts[li];
      for (const BoundaryLift& bl : sl.boundary_lifts) {
        const std::uint32_t e = cov.edge_of_boundary(sl.base_surface, bl.base_boundary);
        auto& cell = incidence[{e, bl.circle_lift}];
        cell.first += bl.elevation_degree;
        cell.second += 1;
      }
    }
    for (std::uint32_t e = 0; e < book.edges.size(); ++e) {
      const BookEdge& edge = book.edges[e];
      const std::uint64_t d_abs =
          static_cast<std::uint64_t>(edge.degree < 0 ? -edge.degree : edge.degree);
      const std::uint64_t expect_count = std::gcd(cov.circle_degree[edge.circle], d_abs);
      for (std::uint64_t c = cov.circle_offset[edge.circle];
           c < cov.circle_offset[edge.circle + 1]; ++c) {
        auto it = incidence.find({e, static_cast<std::uint32_t>(c)});
        if (it == incidence.end())
          throw InternalError("degree-sum law: circle lift received no elevation");
        if (it->second.first != edge.degree || it->second.second != expect_count)
          throw InternalError("degree-sum law violated on edge " + std::to_string(e));
      }
    }
  }

  return cov;
}

// JSON export: lift labels in cycle notation, plus a flat attachment table
// (surface_lift, boundary_lift, circle_lift, elevation_degree). Label
// choices follow the coset-representative convention documented in the
// format notes; downstream invariants do not depend on them.
inline nlohmann::json cover_to_json(const CoveredComplex& cov) {
  nlohmann::json j;
  j["total_degree"] = cov.total_degree;
  j["circle_lifts"] = nlohmann::json::array();
  for (const CircleLift& c : cov.circle_lifts)
    j["circle_lifts"].push_back({{"base_circle", c.base_circle},
                                 {"label", c.label.cycle_string()},
                                 {"degree", c.degree_over_base}});
  j["surface_lifts"] = nlohmann::json::array();
  nlohmann::json attachments = nlohmann::json::array();
  for (std::size_t si = 0; si < cov.surface_lifts.size(); ++si) {
    const SurfaceLift& s = cov.surface_lifts[si];
    j["surface_lifts"].push_back(
        {{"base_surface", s.base_surface},
         {"label", s.label.cycle_string()},
         {"degree", s.degree_over_base},
         {"topology",
          {{"orientable", s.topology.orientable},
           {"genus", s.topology.genus},
           {"boundary", s.topology.boundary_count}}}});
    for (std::size_t bi = 0; bi < s.boundary_lifts.size(); ++bi)
      attachments.push_back({si, bi, s.boundary_lifts[bi].circle_lift,
                             s.boundary_lifts[bi].elevation_degree});
  }
  j["attachments"] = std::move(attachments);
  return j;
}

}  // namespace bookcover

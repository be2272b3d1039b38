#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bookcover/bigint.hpp"
#include "bookcover/cover.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/integer_homology.hpp"
#include "bookcover/schreier.hpp"

namespace bookcover {

// Integer presentation matrix of the torsion-carrying summand of H_1 of the
// cover. Rows are surface lifts; columns are circle lifts followed by one
// column per crosscap of each non-orientable surface lift. A row encodes the
// lift's boundary relation with every boundary class replaced by
// (elevation degree) * (circle lift), plus entries 2 in its own crosscap
// columns.
struct ColumnLabel {
  enum class Kind : std::uint8_t { Circle, Crosscap } kind = Kind::Circle;
  std::uint32_t index = 0;    // circle lift or surface lift (row) index
  std::uint32_t ordinal = 0;  // crosscap position, 1-based
};

struct CoverMatrix {
  IntMatrix matrix;
  std::vector<std::uint32_t> row_surface_lift;
  std::vector<ColumnLabel> columns;
  std::uint32_t circle_column_count = 0;
  GlobalBounds bounds;
  std::uint64_t max_ell = 1;
};

// Signs c_k of the boundary relation of the canonical lift of one base
// surface, indexed [base boundary][orbit].
//
// Orientable lift: the boundary-lift classes, written in the Schreier basis
// of the lift's H_1 by rewriting b_k^{ord(beta_k)} through the surface-group
// coset graph, span a lattice whose integer kernel is rank one; its
// primitive generator is the sign vector and has +-1 entries.
//
// Non-orientable lift: relative to suitable crosscap generators every +-1
// vector closes the relation (changing one sign shifts the defect by twice
// a boundary class, which the crosscap block absorbs), so the all-ones
// vector is used; the mod-2 closure of the boundary classes is still
// verified. Deck translation transports the signs to every other lift.
inline std::vector<std::vector<std::int8_t>> boundary_relation_signs(
    const CoveredComplex& cov, std::uint32_t base_surface) {
  const SurfaceCoverData& data = cov.surface_data[base_surface];
  const SurfaceType& s = cov.base.surfaces[base_surface];
  const CosetRewriter rw(data.subgroup_elements, data.local_images);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> col_orbit;  // (k, orbit)
  for (std::uint32_t k = 0; k < s.boundary_count; ++k)
    for (std::uint32_t o = 0; o < data.boundary_orbit_reps[k].size(); ++o)
      col_orbit.push_back({k, o});

  IntMatrix classes(rw.subgroup_gen_count(), col_orbit.size());
  for (std::size_t c = 0; c < col_orbit.size(); ++c) {
    const auto [k, o] = col_orbit[c];
    const Word loop = power(data.local_boundary_words[k],
                            static_cast<std::int64_t>(data.boundary_order[k]));
    const std::uint32_t start = rw.coset_of(data.boundary_orbit_reps[k][o]);
    const auto sums = rw.rewrite_exponents(start, loop);
    for (std::size_t r = 0; r < sums.size(); ++r) classes.at(r, c) = sums[r];
  }

  std::vector<std::vector<std::int8_t>> signs(s.boundary_count);
  for (std::uint32_t k = 0; k < s.boundary_count; ++k)
    signs[k].assign(data.boundary_orbit_reps[k].size(), 1);

  if (data.lift_topology.orientable) {
    SmithResult snf = smith_normal_form(classes, /*want_witnesses=*/true);
    if (classes.cols != snf.rank + 1)
      throw InternalError("boundary sign kernel is not rank one");
    const IntMatrix& v = *snf.right;
    for (std::size_t c = 0; c < col_orbit.size(); ++c) {
      const Int& entry = v.at(c, snf.rank);
      if (entry != 1 && entry != -1)
        throw InternalError("boundary sign kernel has a non-unit entry");
      const auto [k, o] = col_orbit[c];
      signs[k][o] = entry == 1 ? 1 : -1;
    }
  } else {
    // All boundary classes together must vanish mod 2.
    for (std::size_t r = 0; r < classes.rows; ++r) {
      Int row_sum = 0;
      for (std::size_t c = 0; c < classes.cols; ++c) row_sum += classes.at(r, c);
      if (row_sum % 2 != 0)
        throw InternalError("boundary classes are not even for a non-orientable lift");
    }
  }
  return signs;
}

inline CoverMatrix build_cover_matrix(const CoveredComplex& cov) {
  CoverMatrix cm;
  cm.bounds = global_bounds(cov.base);
  for (std::uint32_t i = 0; i < cov.base.circle_count; ++i)
    cm.max_ell = std::max<std::uint64_t>(
        cm.max_ell, cov.circle_offset[i + 1] - cov.circle_offset[i]);

  cm.circle_column_count = static_cast<std::uint32_t>(cov.circle_lifts.size());
  for (std::uint32_t c = 0; c < cm.circle_column_count; ++c)
    cm.columns.push_back({ColumnLabel::Kind::Circle, c, 0});
  for (std::uint32_t row = 0; row < cov.surface_lifts.size(); ++row) {
    cm.row_surface_lift.push_back(row);
    const SurfaceType& top = cov.surface_lifts[row].topology;
    if (!top.orientable)
      for (std::uint32_t x = 0; x < top.genus; ++x)
        cm.columns.push_back({ColumnLabel::Kind::Crosscap, row, x + 1});
  }

  std::vector<std::vector<std::vector<std::int8_t>>> signs(cov.base.surfaces.size());
  for (std::uint32_t j = 0; j < cov.base.surfaces.size(); ++j)
    signs[j] = boundary_relation_signs(cov, j);

  cm.matrix = IntMatrix(cov.surface_lifts.size(), cm.columns.size());
  std::uint32_t next_crosscap_col = cm.circle_column_count;
  for (std::uint32_t row = 0; row < cov.surface_lifts.size(); ++row) {
    const SurfaceLift& sl = cov.surface_lifts[row];
    for (const BoundaryLift& bl : sl.boundary_lifts) {
      const std::int8_t c = signs[sl.base_surface][bl.base_boundary][bl.orbit_index];
      cm.matrix.at(row, bl.circle_lift) += Int(c) * bl.elevation_degree;
    }
    if (!sl.topology.orientable)
      for (std::uint32_t x = 0; x < sl.topology.genus; ++x)
        cm.matrix.at(row, next_crosscap_col++) = 2;
  }
  return cm;
}

// (2 val d)^(d m max_ell), the closed-form cap on the torsion order.
inline Int cover_hadamard_bound(const CoveredComplex& cov) {
  GlobalBounds b = global_bounds(cov.base);
  std::uint64_t max_ell = 1;
  for (std::uint32_t i = 0; i < cov.base.circle_count; ++i)
    max_ell = std::max<std::uint64_t>(max_ell,
                                      cov.circle_offset[i + 1] - cov.circle_offset[i]);
  const Int exponent = Int(b.d) * b.m * max_ell;
  if (exponent > Int(1) << 32)
    throw CapExceeded("closed-form bound exponent too large to materialize");
  return ipow(Int(2) * b.val * b.d, exponent.convert_to<std::uint64_t>());
}

struct ColumnNormReport {
  std::uint32_t circle_lift = 0;
  Int l1;
  Int l2_squared;
  Int cap;  // val * d
};

// Per circle column: the 1-norm is the sum of the incident base degrees, so
// it never exceeds val * d; violation means the assembly is wrong.
inline std::vector<ColumnNormReport> column_norm_check(const CoverMatrix& cm) {
  std::vector<ColumnNormReport> out;
  const Int cap = Int(cm.bounds.val) * cm.bounds.d;
  for (std::uint32_t c = 0; c < cm.circle_column_count; ++c) {
    ColumnNormReport r;
    r.circle_lift = c;
    r.cap = cap;
    for (std::size_t i = 0; i < cm.matrix.rows; ++i) {
      const Int& e = cm.matrix.at(i, c);
      r.l1 += big_abs(e);
      r.l2_squared += e * e;
    }
    if (r.l1 > cap) throw InternalError("column 1-norm exceeds val*d");
    out.push_back(std::move(r));
  }
  return out;
}

struct IndexDecomposition {
  std::uint32_t circle = 0;   // argmax of ell_i, ties to the lowest index
  std::uint64_t ell = 1;
  std::uint64_t degree = 1;   // D at that circle
};

inline IndexDecomposition index_decomposition(const CoveredComplex& cov) {
  IndexDecomposition out;
  std::uint64_t best = 0;
  for (std::uint32_t i = 0; i < cov.base.circle_count; ++i) {
    const std::uint64_t ell = cov.circle_offset[i + 1] - cov.circle_offset[i];
    if (ell > best) {
      best = ell;
      out.circle = i;
      out.ell = ell;
      out.degree = cov.circle_degree[i];
    }
  }
  if (out.ell * out.degree != cov.total_degree)
    throw InternalError("index decomposition does not multiply to the degree");
  return out;
}

// Full H_1 of the cover via the structured route: torsion and matrix part
// from the presentation matrix; the free rank adds the handle classes of
// orientable lifts and the Betti number of the lifted graph.
struct CoverHomology {
  HomologyResult h;              // of the presentation matrix cokernel
  std::uint64_t handle_rank = 0;
  std::uint64_t graph_betti = 0;
  std::uint64_t betti_total = 0;
};

inline CoverHomology cover_homology(const CoveredComplex& cov, const CoverMatrix& cm) {
  CoverHomology out;
  out.h = cokernel_homology(cm.matrix);
  for (const SurfaceLift& sl : cov.surface_lifts)
    if (sl.topology.orientable) out.handle_rank += 2ull * sl.topology.genus;
  out.graph_betti = cov.graph_betti();
  out.betti_total = out.h.betti + out.handle_rank + out.graph_betti;
  return out;
}

// Exact verification of the inequality chain
//   torsion <= d * prod max(||C||_2, 2) <= (2 val d)^(d m max_ell),
// compared through squares so no root is ever taken.
struct BoundChain {
  Int torsion_squared;
  Int middle_squared;
  Int outer;  // (2 val d)^(d m max_ell)
  bool torsion_le_middle = false;
  bool middle_le_outer = false;
};

inline BoundChain verify_bound_chain(const CoveredComplex& cov, const CoverMatrix& cm,
                                     const Int& torsion) {
  BoundChain chain;
  chain.torsion_squared = torsion * torsion;
  chain.middle_squared = Int(cm.bounds.d) * cm.bounds.d;
  for (std::uint32_t c = 0; c < cm.circle_column_count; ++c) {
    Int l2sq = 0;
    for (std::size_t i = 0; i < cm.matrix.rows; ++i)
      l2sq += cm.matrix.at(i, c) * cm.matrix.at(i, c);
    chain.middle_squared *= std::max(l2sq, Int(4));
  }
  chain.outer = cover_hadamard_bound(cov);
  chain.torsion_le_middle = chain.torsion_squared <= chain.middle_squared;
  chain.middle_le_outer = chain.middle_squared <= chain.outer * chain.outer;
  return chain;
}

namespace detail {
inline nlohmann::json json_int(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}
}  // namespace detail

// Machine-readable report of the matrix, its homology and the bound chain.
inline nlohmann::json matrix_report(const CoveredComplex& cov, const CoverMatrix& cm) {
  const CoverHomology hom = cover_homology(cov, cm);
  const BoundChain chain = verify_bound_chain(cov, cm, hom.h.torsion_order);
  const IndexDecomposition dec = index_decomposition(cov);

  nlohmann::json j;
  j["shape"] = {cm.matrix.rows, cm.matrix.cols};
  j["rows"] = nlohmann::json::array();
  for (std::uint32_t r : cm.row_surface_lift) j["rows"].push_back(r);
  j["columns"] = nlohmann::json::array();
  for (const ColumnLabel& c : cm.columns)
    j["columns"].push_back(c.kind == ColumnLabel::Kind::Circle
                               ? nlohmann::json{{"circle_lift", c.index}}
                               : nlohmann::json{{"surface_lift", c.index},
                                                {"crosscap", c.ordinal}});
  j["entries"] = nlohmann::json::array();
  for (std::size_t r = 0; r < cm.matrix.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cm.matrix.cols; ++c)
      row.push_back(detail::json_int(cm.matrix.at(r, c)));
    j["entries"].push_back(std::move(row));
  }
  j["invariant_factors"] = nlohmann::json::array();
  for (const Int& f : hom.h.invariant_factors)
    j["invariant_factors"].push_back(detail::json_int(f));
  j["torsion_order"] = hom.h.torsion_order.str();
  j["betti"] = hom.betti_total;
  j["bound"] = {{"closed_form", chain.outer.str()},
                {"torsion_le_middle", chain.torsion_le_middle},
                {"middle_le_closed_form", chain.middle_le_outer}};
  j["index_decomposition"] = {{"circle", dec.circle}, {"ell", dec.ell},
                              {"degree", dec.degree}};
  return j;
}

}  // namespace bookcover

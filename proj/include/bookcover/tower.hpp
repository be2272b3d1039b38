#pragma once

#include <array>
#include <cstdint>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bookcover/bigint.hpp"
#include "bookcover/book.hpp"
#include "bookcover/cover.hpp"
#include "bookcover/cover_matrix.hpp"
#include "bookcover/errors.hpp"
#include "bookcover/presentation.hpp"
#include "bookcover/quotient.hpp"
#include "bookcover/rs_oracle.hpp"

namespace bookcover {

// Tower of regular covers, finest level last. Projections between
// consecutive levels are generator-wise (the level-(n+1) image of a
// generator must map to its level-n image); verify_tower checks that this
// assignment extends to a homomorphism, which certifies nested kernels.
// Cofinality is a declared assumption, recorded and never claimed checked.
struct TowerSpec {
  bool declared_cofinal = false;
  std::vector<FiniteQuotient> levels;
};

// The generator-wise assignment G_{n+1} -> G_n is a well-defined
// homomorphism iff the subgroup of G_{n+1} x G_n generated by the image
// pairs is the graph of a function, i.e. has order |G_{n+1}|.
inline bool verify_tower(const GroupPresentation& p, const TowerSpec& tower) {
  for (const FiniteQuotient& level : tower.levels)
    if (!check_homomorphism(p, level))
      throw MalformedInput("tower level is not a homomorphism");
  for (std::size_t n = 0; n + 1 < tower.levels.size(); ++n) {
    const FiniteQuotient& coarse = tower.levels[n];
    const FiniteQuotient& fine = tower.levels[n + 1];
    if (coarse.images.size() != fine.images.size())
      throw MalformedInput("tower levels disagree on the generator list");
    const std::uint32_t deg = fine.degree + coarse.degree;
    std::vector<Perm> pairs;
    pairs.reserve(fine.images.size());
    for (std::size_t g = 0; g < fine.images.size(); ++g) {
      std::vector<std::uint32_t> img(deg);
      for (std::uint32_t x = 0; x < fine.degree; ++x) img[x] = fine.images[g][x];
      for (std::uint32_t x = 0; x < coarse.degree; ++x)
        img[fine.degree + x] = fine.degree + coarse.images[g][x];
      pairs.emplace_back(std::move(img));
    }
    if (PermGroup(deg, pairs).order() != fine.group_order()) return false;
  }
  return true;
}

// Tower of mod-q^n homology covers: compose the abelianization with
// reduction and let the finite quotient act on itself by translation.
// Level 0 is the trivial cover; level n reduces mod q^n. Reduction between
// consecutive levels commutes by construction, but never cofinally, so
// declared_cofinal stays false.
inline TowerSpec mod_prime_tower(const BookComplex& book, const GroupPresentation& p,
                                 std::uint64_t q, std::uint32_t depth,
                                 const Caps& caps = {}) {
  if (q < 2) throw MalformedInput("mod tower: modulus base must be at least 2");
  TowerSpec tower;
  tower.declared_cofinal = false;
  tower.levels.push_back(trivial_quotient(p, caps));

  const SmithResult snf = smith_normal_form(abelianization_matrix(p), true);
  const IntMatrix& v = *snf.right;
  const std::size_t gen_count = p.generators.size();

  for (std::uint32_t n = 1; n <= depth; ++n) {
    const Int modulus = ipow(Int(q), n);
    std::vector<Int> moduli;          // nontrivial cyclic factors of H_1 mod q^n
    std::vector<std::size_t> coords;  // their positions in the SNF basis
    Int group_size = 1;
    for (std::size_t jj = 0; jj < gen_count; ++jj) {
      Int m = jj < snf.diagonal.size() && snf.diagonal[jj] != 0
                  ? big_gcd(snf.diagonal[jj], modulus)
                  : modulus;
      if (m == 1) continue;
      group_size *= m;
      if (group_size > caps.max_degree)
        throw CapExceeded("mod tower: quotient of order " + group_size.str() +
                          " exceeds the degree cap at level " + std::to_string(n));
      moduli.push_back(std::move(m));
      coords.push_back(jj);
    }
    const auto degree = std::max<std::uint32_t>(1, group_size.convert_to<std::uint32_t>());

    // Mixed-radix point labels, last coordinate fastest.
    std::vector<std::uint64_t> radix(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
      radix[i] = moduli[i].convert_to<std::uint64_t>();
    auto translation = [&](const std::vector<std::uint64_t>& shift) {
      std::vector<std::uint32_t> img(degree);
      for (std::uint32_t point = 0; point < degree; ++point) {
        std::uint64_t rem = point, out = 0;
        for (std::size_t i = radix.size(); i-- > 0;) {
          const std::uint64_t digit = rem % radix[i];
          rem /= radix[i];
          std::uint64_t stride = 1;
          for (std::size_t t = i + 1; t < radix.size(); ++t) stride *= radix[t];
          out += ((digit + shift[i]) % radix[i]) * stride;
        }
        img[point] = static_cast<std::uint32_t>(out);
      }
      return Perm(std::move(img));
    };

    std::vector<Perm> images;
    images.reserve(gen_count);
    for (std::size_t g = 0; g < gen_count; ++g) {
      std::vector<std::uint64_t> shift(moduli.size());
      for (std::size_t i = 0; i < moduli.size(); ++i) {
        Int coordinate = v.at(g, coords[i]) % moduli[i];
        if (coordinate < 0) coordinate += moduli[i];
        shift[i] = coordinate.convert_to<std::uint64_t>();
      }
      images.push_back(translation(shift));
    }
    tower.levels.push_back(make_quotient(p, degree, std::move(images), caps));
  }
  return tower;
}

struct GrowthRow {
  std::uint32_t level = 0;
  std::uint64_t index = 1;
  Int torsion_order = 1;
  std::vector<Int> invariant_factors;
  std::uint64_t betti = 0;
  double ratio = 0.0;           // log(torsion)/index, display only
  double hadamard_ratio = 0.0;  // log(2 val d) d m / D, display only
  std::uint64_t ell = 1;
  std::uint64_t degree_d = 1;   // D at the argmax circle
  bool bound_ok = false;        // exact: torsion^D <= (2 val d)^(d m index)
  bool oracle_checked = false;
  bool oracle_agree = true;
};

namespace detail {
inline GrowthRow growth_row(const BookComplex& book, const GroupPresentation& p,
                            const FiniteQuotient& level, std::uint32_t n,
                            const Caps& caps, bool oracle) {
  const CoveredComplex cov = lift(book, p, level, caps);
  const CoverMatrix cm = build_cover_matrix(cov);
  const CoverHomology hom = cover_homology(cov, cm);
  const IndexDecomposition dec = index_decomposition(cov);
  const GlobalBounds b = cm.bounds;

  GrowthRow row;
  row.level = n;
  row.index = cov.total_degree;
  row.torsion_order = hom.h.torsion_order;
  row.invariant_factors = hom.h.invariant_factors;
  row.betti = hom.betti_total;
  row.ell = dec.ell;
  row.degree_d = dec.degree;
  row.ratio = row.torsion_order == 1
                  ? 0.0
                  : log_big(row.torsion_order) / static_cast<double>(row.index);
  row.hadamard_ratio = std::log(2.0 * static_cast<double>(b.val) * static_cast<double>(b.d)) *
                       static_cast<double>(b.d) * static_cast<double>(b.m) /
                       static_cast<double>(dec.degree);
  // Exponentiated form of the limit chain, settled by exact integers.
  const Int exponent = Int(b.d) * b.m * cov.total_degree;
  if (exponent > Int(1) << 32)
    throw CapExceeded("growth bound exponent too large to materialize");
  row.bound_ok = ipow(row.torsion_order, dec.degree) <=
                 ipow(Int(2) * b.val * b.d, exponent.convert_to<std::uint64_t>());
  if (!row.bound_ok)
    throw InternalError("growth bound violated at level " + std::to_string(n));
  if (oracle) {
    row.oracle_checked = true;
    const HomologyResult rs = rs_homology(p, level, caps);
    row.oracle_agree = rs.torsion_order == row.torsion_order &&
                       rs.invariant_factors == row.invariant_factors &&
                       rs.betti == row.betti;
  }
  return row;
}
}  // namespace detail

// One row per level, levels computed concurrently, rows returned in order.
inline std::vector<GrowthRow> growth_series(const BookComplex& book,
                                            const GroupPresentation& p,
                                            const TowerSpec& tower, const Caps& caps = {},
                                            bool oracle = false) {
  if (!verify_tower(p, tower))
    throw MalformedInput("tower projections do not commute with the levels");
  std::vector<std::future<GrowthRow>> futures;
  futures.reserve(tower.levels.size());
  for (std::uint32_t n = 0; n < tower.levels.size(); ++n)
    futures.push_back(std::async(std::launch::async, [&, n] {
      return detail::growth_row(book, p, tower.levels[n], n, caps, oracle);
    }));
  std::vector<GrowthRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

// A^n - I is singular: the unwrapped cover has extra free rank and the
// torsion order is not a full-rank determinant.
struct SingularMonodromy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Mat2 = std::array<std::array<Int, 2>, 2>;

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline Mat2 mat2_pow(Mat2 a, std::uint64_t n) {
  Mat2 r{{{Int(1), Int(0)}, {Int(0), Int(1)}}};
  while (n != 0) {
    if (n & 1) r = mat2_mul(r, a);
    n >>= 1;
    if (n != 0) a = mat2_mul(a, a);
  }
  return r;
}

inline Int mat2_det(const Mat2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
inline Int mat2_trace(const Mat2& a) { return a[0][0] + a[1][1]; }

// |det(A^n - I)| = |Tor of the n-fold unwrapped abelianization| for
// A in GL(2, Z) with A^n - I nonsingular.
inline Int metabelian_torsion(const Mat2& a, std::uint64_t n) {
  if (big_abs(mat2_det(a)) != 1)
    throw MalformedInput("metabelian: matrix must lie in GL(2, Z)");
  if (n == 0) throw MalformedInput("metabelian: level must be positive");
  Mat2 an = mat2_pow(a, n);
  an[0][0] -= 1;
  an[1][1] -= 1;
  const Int det = mat2_det(an);
  if (det == 0)
    throw SingularMonodromy("torsion not full-rank at n = " + std::to_string(n));
  return big_abs(det);
}

inline TowerSpec tower_from_json(const GroupPresentation& p, const nlohmann::json& j,
                                 const Caps& caps = {}) {
  detail::require_keys(j, {"declared_cofinal", "levels"}, "tower");
  if (!j.at("declared_cofinal").is_boolean())
    throw MalformedInput("tower: \"declared_cofinal\" must be a boolean");
  TowerSpec tower;
  tower.declared_cofinal = j.at("declared_cofinal").get<bool>();
  if (!j.at("levels").is_array())
    throw MalformedInput("tower: \"levels\" must be an array");
  for (const auto& lj : j.at("levels"))
    tower.levels.push_back(quotient_from_json(p, lj, caps));
  return tower;
}

inline nlohmann::json tower_to_json(const GroupPresentation& p, const TowerSpec& tower) {
  nlohmann::json levels = nlohmann::json::array();
  for (const FiniteQuotient& q : tower.levels) levels.push_back(quotient_to_json(p, q));
  return {{"declared_cofinal", tower.declared_cofinal}, {"levels", std::move(levels)}};
}

}  // namespace bookcover

#include "bookcover/rs_oracle.hpp"

#include <gtest/gtest.h>

#include "test_books.hpp"

using bookcover::abelianization_matrix;
using bookcover::FiniteQuotient;
using bookcover::GenRole;
using bookcover::GroupPresentation;
using bookcover::Int;
using bookcover::letter;
using bookcover::make_quotient;
using bookcover::Perm;
using bookcover::present;
using bookcover::rs_homology;
using bookcover::schreier_presentation;
using bookcover::SubgroupPresentation;
using bookcover::trivial_quotient;
using bookcover::Word;

namespace {
// Hand-built presentation of the free group <a>.
GroupPresentation free_rank_one() {
  GroupPresentation p;
  p.generators.push_back({"a", GenRole::Circle, 0, 1});
  p.index_of.emplace("a", 0);
  p.circle_gen = {0};
  return p;
}
}  // namespace

TEST(RsOracle, IndexOneIsRenaming) {
  const GroupPresentation p = present(testbooks::once_punctured_torus());
  const SubgroupPresentation sp = schreier_presentation(p, trivial_quotient(p));
  EXPECT_EQ(sp.index, 1u);
  EXPECT_EQ(sp.schreier_generator_count, p.generators.size());
  ASSERT_EQ(sp.relators.size(), 1u);
  const auto sums = bookcover::exponent_sums(sp.relators[0], sp.schreier_generator_count);
  EXPECT_EQ(sums, (std::vector<std::int64_t>{0, 0, -2}));
}

TEST(RsOracle, IndexTwoSubgroupOfZ) {
  const GroupPresentation p = free_rank_one();
  std::vector<Perm> images{Perm::parse_cycles("(1 2)", 2)};
  const FiniteQuotient q = make_quotient(p, 2, images);
  const SubgroupPresentation sp = schreier_presentation(p, q);
  // subgroup generated by a^2: one Schreier generator, no relators
  EXPECT_EQ(sp.schreier_generator_count, 1u);
  EXPECT_TRUE(sp.relators.empty());
}

TEST(RsOracle, GeneratorAndRelatorCounts) {
  const GroupPresentation p = present(testbooks::crosscap_two_boundary());
  std::vector<Perm> images(p.generators.size(), Perm::identity(2));
  images[p.circle_gen[0]] = Perm::parse_cycles("(1 2)", 2);
  images[p.index_of.at("s0_1")] = Perm::parse_cycles("(1 2)", 2);
  // relators: s t^{-1} ok; (x^2 s)^{-1} u t^{-3} u^{-1}: needs x^2 s = t^3 -> (1 2)
  images[p.index_of.at("x0_1")] = Perm::identity(2);
  const FiniteQuotient q = make_quotient(p, 2, images);
  ASSERT_TRUE(bookcover::check_homomorphism(p, q));
  const SubgroupPresentation sp = schreier_presentation(p, q);
  const std::uint64_t n = q.group_order().convert_to<std::uint64_t>();
  EXPECT_EQ(sp.schreier_generator_count, n * p.generators.size() - (n - 1));
  EXPECT_EQ(sp.relators.size(), n * p.relators.size());
}

TEST(RsOracle, DoubleCoverOfTorusBook) {
  const GroupPresentation p = present(testbooks::once_punctured_torus());
  std::vector<Perm> images(p.generators.size(), Perm::identity(2));
  images[p.circle_gen[0]] = Perm::parse_cycles("(1 2)", 2);
  const FiniteQuotient q = make_quotient(p, 2, images);
  const auto hom = rs_homology(p, q);
  EXPECT_EQ(hom.torsion_order, Int(1));
  EXPECT_EQ(hom.betti, 4u);
}

TEST(RsOracle, BaseHomologyOfRunningExample) {
  const GroupPresentation p = present(testbooks::once_punctured_torus());
  const auto hom = rs_homology(p, trivial_quotient(p));
  EXPECT_EQ(hom.betti, 2u);
  ASSERT_EQ(hom.invariant_factors.size(), 1u);
  EXPECT_EQ(hom.invariant_factors[0], Int(2));
}

TEST(RsOracle, ExponentRows) {
  // relator x^2 s t^{-3} at index 1 abelianizes to (2, 1, -3)
  GroupPresentation p;
  p.generators.push_back({"x", GenRole::Crosscap, 0, 1});
  p.generators.push_back({"s", GenRole::Boundary, 0, 1});
  p.generators.push_back({"t", GenRole::Circle, 0, 1});
  for (std::uint32_t i = 0; i < 3; ++i) p.index_of.emplace(p.generators[i].name, i);
  p.circle_gen = {2};
  p.relators.push_back(Word{letter(0), letter(0), letter(1), letter(2, true),
                            letter(2, true), letter(2, true)});
  const SubgroupPresentation sp = schreier_presentation(p, trivial_quotient(p));
  const auto m = abelianization_matrix(sp);
  ASSERT_EQ(m.rows, 1u);
  EXPECT_EQ(m.at(0, 0), Int(2));
  EXPECT_EQ(m.at(0, 1), Int(1));
  EXPECT_EQ(m.at(0, 2), Int(-3));
}

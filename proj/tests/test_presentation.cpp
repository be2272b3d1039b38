#include "bookcover/presentation.hpp"

#include <gtest/gtest.h>

#include "bookcover/integer_homology.hpp"
#include "test_books.hpp"

using bookcover::boundary_word_local;
using bookcover::cokernel_homology;
using bookcover::GenRole;
using bookcover::graph_first_betti;
using bookcover::GroupPresentation;
using bookcover::letter;
using bookcover::MalformedInput;
using bookcover::present;
using bookcover::SurfaceType;
using bookcover::Word;

TEST(BoundaryWord, OncePuncturedTorus) {
  // single boundary = ([x,y])^{-1} = y x Y X over local gens x=0, y=1
  const Word w = boundary_word_local({true, 1, 1}, 0);
  EXPECT_EQ(w, (Word{letter(1, true), letter(0, true), letter(1), letter(0)}));
}

TEST(BoundaryWord, CrosscapWithTwoBoundaries) {
  // local gens: x=0, sigma_1=1; last boundary = (x^2 sigma_1)^{-1}
  const SurfaceType s{false, 1, 2};
  EXPECT_EQ(boundary_word_local(s, 0), (Word{letter(1)}));
  EXPECT_EQ(boundary_word_local(s, 1),
            (Word{letter(1, true), letter(0, true), letter(0, true)}));
  EXPECT_THROW(boundary_word_local(s, 2), MalformedInput);
}

TEST(BoundaryWord, PuncturedSphere) {
  // local gens: sigma_1=0, sigma_2=1; last boundary = (sigma_1 sigma_2)^{-1}
  const Word w = boundary_word_local({true, 0, 3}, 2);
  EXPECT_EQ(w, (Word{letter(1, true), letter(0, true)}));
}

TEST(Present, OncePuncturedTorus) {
  const GroupPresentation p = present(testbooks::once_punctured_torus());
  ASSERT_EQ(p.generators.size(), 3u);
  EXPECT_EQ(p.generators[0].name, "x0_1");
  EXPECT_EQ(p.generators[1].name, "y0_1");
  EXPECT_EQ(p.generators[2].name, "t0");
  EXPECT_EQ(p.stable_letter_count(), 0u);
  ASSERT_EQ(p.relators.size(), 1u);
  // relator = [x,y]^{-1} t^{-2}; abelianized row (0, 0, -2)
  const auto sums = bookcover::exponent_sums(p.relators[0], 3);
  EXPECT_EQ(sums, (std::vector<std::int64_t>{0, 0, -2}));
}

TEST(Present, StableLetterOnSecondEdge) {
  const GroupPresentation p = present(testbooks::crosscap_two_boundary());
  // graph has 2 vertices and 2 edges: one tree edge, one stable letter
  EXPECT_EQ(p.stable_letter_count(), 1u);
  ASSERT_EQ(p.relators.size(), 2u);
  // tree relator: sigma_1 t^{-1}
  const auto sums0 = bookcover::exponent_sums(p.relators[0], p.generators.size());
  // generators: x0_1, s0_1, t0, u1
  EXPECT_EQ(sums0, (std::vector<std::int64_t>{0, 1, -1, 0}));
  const auto sums1 = bookcover::exponent_sums(p.relators[1], p.generators.size());
  EXPECT_EQ(sums1, (std::vector<std::int64_t>{-2, -1, -3, 0}));
}

TEST(Present, PairOfPantsCounts) {
  const GroupPresentation p = present(testbooks::pair_of_pants_two_circles());
  // 2 sigma generators, 2 circle generators, 1 stable letter (3 edges, 3 vertices)
  std::size_t sigmas = 0, circles = 0, stables = 0;
  for (const auto& g : p.generators) {
    if (g.role == GenRole::Boundary) ++sigmas;
    if (g.role == GenRole::Circle) ++circles;
    if (g.role == GenRole::StableLetter) ++stables;
  }
  EXPECT_EQ(sigmas, 2u);
  EXPECT_EQ(circles, 2u);
  EXPECT_EQ(stables, 1u);
  EXPECT_EQ(p.relators.size(), 3u);
}

TEST(Present, StableLetterCountIsGraphBetti) {
  for (const auto& book :
       {testbooks::once_punctured_torus(), testbooks::crosscap_two_boundary(),
        testbooks::pair_of_pants_two_circles()}) {
    EXPECT_EQ(present(book).stable_letter_count(), graph_first_betti(book));
  }
}

TEST(Present, RelatorsAreReduced) {
  for (const auto& book :
       {testbooks::once_punctured_torus(), testbooks::crosscap_two_boundary(),
        testbooks::pair_of_pants_two_circles()}) {
    for (const Word& rel : present(book).relators) {
      Word copy = rel;
      bookcover::free_reduce(copy);
      EXPECT_EQ(copy, rel);
    }
  }
}

TEST(Present, Deterministic) {
  const auto a = bookcover::export_text(present(testbooks::pair_of_pants_two_circles()));
  const auto b = bookcover::export_text(present(testbooks::pair_of_pants_two_circles()));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("gen:"), std::string::npos);
  EXPECT_NE(a.find("rel:"), std::string::npos);
}

TEST(Present, InvalidBookRejected) {
  bookcover::BookComplex bad;
  bad.circle_count = 1;
  bad.surfaces = {{true, 0, 2}};
  bad.edges = {{0, 0, 0, 1}, {0, 1, 0, 1}};
  EXPECT_THROW(present(bad), MalformedInput);
}

// Bookkeeping identity: betti of the abelianized presentation equals
// (circle count) + beta_1(graph) + sum of surface ranks - matrix rank.
TEST(Present, AbelianizationBettiBookkeeping) {
  for (const auto& book :
       {testbooks::once_punctured_torus(), testbooks::crosscap_two_boundary(),
        testbooks::pair_of_pants_two_circles()}) {
    const GroupPresentation p = present(book);
    const auto hom = cokernel_homology(bookcover::abelianization_matrix(p));
    std::size_t surface_rank = 0;
    for (const auto& s : book.surfaces) surface_rank += bookcover::surface_free_rank(s);
    const std::size_t rank = p.generators.size() - hom.betti;
    EXPECT_EQ(hom.betti, book.circle_count + graph_first_betti(book) + surface_rank - rank);
  }
}

TEST(Present, RunningExampleAbelianization) {
  const GroupPresentation p = present(testbooks::once_punctured_torus());
  const auto hom = cokernel_homology(bookcover::abelianization_matrix(p));
  EXPECT_EQ(hom.betti, 2u);
  ASSERT_EQ(hom.invariant_factors.size(), 1u);
  EXPECT_EQ(hom.invariant_factors[0], bookcover::Int(2));
}

#include "bookcover/quotient.hpp"

#include <gtest/gtest.h>

#include "test_books.hpp"

using bookcover::check_homomorphism;
using bookcover::coset_labels;
using bookcover::element_order;
using bookcover::FiniteQuotient;
using bookcover::GroupPresentation;
using bookcover::image_subgroup_order;
using bookcover::Int;
using bookcover::letter;
using bookcover::make_quotient;
using bookcover::MalformedInput;
using bookcover::Perm;
using bookcover::present;
using bookcover::quotient_from_json;
using bookcover::trivial_quotient;
using bookcover::Word;
using nlohmann::json;

namespace {
GroupPresentation torus_presentation() {
  return present(testbooks::once_punctured_torus());
}

FiniteQuotient torus_double_cover(const GroupPresentation& p) {
  // x, y -> identity; t -> (1 2)
  std::vector<Perm> images(p.generators.size(), Perm::identity(2));
  images[p.circle_gen[0]] = Perm::parse_cycles("(1 2)", 2);
  return make_quotient(p, 2, images);
}
}  // namespace

TEST(Quotient, TrivialIsHomomorphism) {
  const GroupPresentation p = torus_presentation();
  EXPECT_TRUE(check_homomorphism(p, trivial_quotient(p)));
}

TEST(Quotient, DoubleCoverIsHomomorphism) {
  const GroupPresentation p = torus_presentation();
  EXPECT_TRUE(check_homomorphism(p, torus_double_cover(p)));
}

TEST(Quotient, OrderThreeImageFailsRelator) {
  const GroupPresentation p = torus_presentation();
  std::vector<Perm> images(p.generators.size(), Perm::identity(3));
  images[p.circle_gen[0]] = Perm::parse_cycles("(1 2 3)", 3);
  EXPECT_FALSE(check_homomorphism(p, make_quotient(p, 3, images)));
}

TEST(Quotient, ElementOrder) {
  const GroupPresentation p = torus_presentation();
  const FiniteQuotient q = torus_double_cover(p);
  EXPECT_EQ(element_order(q, Word{}), Int(1));
  EXPECT_EQ(element_order(q, Word{letter(p.circle_gen[0])}), Int(2));
  EXPECT_EQ(element_order(q, Word{letter(0)}), Int(1));
  // element orders divide the group order
  EXPECT_EQ(q.group_order() % element_order(q, Word{letter(p.circle_gen[0])}), Int(0));
}

TEST(Quotient, ImageSubgroupOrder) {
  // ambient presentation irrelevant; reuse the torus one with degree 3
  const GroupPresentation p = torus_presentation();
  std::vector<Perm> images(p.generators.size(), Perm::identity(3));
  images[0] = Perm::parse_cycles("(1 2)", 3);     // x
  images[1] = Perm::parse_cycles("(1 2 3)", 3);   // y
  const FiniteQuotient q = make_quotient(p, 3, images);
  EXPECT_EQ(image_subgroup_order(q, {}), Int(1));
  EXPECT_EQ(image_subgroup_order(q, {Word{letter(0)}}), Int(2));
  EXPECT_EQ(image_subgroup_order(q, {Word{letter(0)}, Word{letter(1)}}), Int(6));
}

TEST(Quotient, CosetLabels) {
  const GroupPresentation p = torus_presentation();
  {
    const FiniteQuotient q = torus_double_cover(p);
    // H = G: one coset; H = 1: two cosets
    EXPECT_EQ(coset_labels(q, {Word{letter(p.circle_gen[0])}}).size(), 1u);
    EXPECT_EQ(coset_labels(q, {}).size(), 2u);
  }
  {
    std::vector<Perm> images(p.generators.size(), Perm::identity(3));
    images[0] = Perm::parse_cycles("(1 2)", 3);
    images[1] = Perm::parse_cycles("(1 2 3)", 3);
    const FiniteQuotient q = make_quotient(p, 3, images);
    const auto reps = coset_labels(q, {Word{letter(0)}});
    EXPECT_EQ(reps.size(), 3u);
    EXPECT_TRUE(std::is_sorted(reps.begin(), reps.end()));
  }
}

TEST(Quotient, JsonParsing) {
  const GroupPresentation p = torus_presentation();
  const FiniteQuotient q =
      quotient_from_json(p, json::parse(R"({"points": 2, "images": {"t0": "(1 2)"}})"));
  EXPECT_EQ(q.degree, 2u);
  EXPECT_EQ(q.group_order(), Int(2));
  EXPECT_TRUE(q.images[0].is_identity());  // omitted generators are identity

  EXPECT_THROW(
      quotient_from_json(p, json::parse(R"({"points": 2, "images": {"zz": "(1 2)"}})")),
      MalformedInput);
  EXPECT_THROW(
      quotient_from_json(p, json::parse(R"({"points": 2, "studio": 1, "images": {}})")),
      MalformedInput);
}

TEST(Quotient, LagrangeOnComputedSubgroups) {
  const GroupPresentation p = torus_presentation();
  std::vector<Perm> images(p.generators.size(), Perm::identity(4));
  images[0] = Perm::parse_cycles("(1 2 3 4)", 4);
  images[1] = Perm::parse_cycles("(1 3)", 4);
  const FiniteQuotient q = make_quotient(p, 4, images);  // image is dihedral, order 8
  for (const std::vector<Word>& sub :
       {std::vector<Word>{}, {Word{letter(0)}}, {Word{letter(1)}},
        {Word{letter(0)}, Word{letter(1)}}}) {
    const Int h = image_subgroup_order(q, sub);
    EXPECT_EQ(Int(coset_labels(q, sub).size()) * h, q.group_order());
  }
}

#include "bookcover/perm_group.hpp"

#include <gtest/gtest.h>

#include <random>

using bookcover::CapExceeded;
using bookcover::Int;
using bookcover::left_cosets;
using bookcover::Perm;
using bookcover::PermGroup;

namespace {
PermGroup sym(std::uint32_t n) {
  std::vector<Perm> gens;
  if (n >= 2) gens.push_back(Perm::parse_cycles("(1 2)", n));
  if (n >= 3) {
    std::string cycle = "(";
    for (std::uint32_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i == n ? ")" : " ");
    gens.push_back(Perm::parse_cycles(cycle, n));
  }
  return PermGroup(n, gens);
}
}  // namespace

TEST(PermGroup, KnownOrders) {
  EXPECT_EQ(PermGroup(3, {}).order(), Int(1));
  EXPECT_EQ(sym(3).order(), Int(6));
  EXPECT_EQ(sym(4).order(), Int(24));
  EXPECT_EQ(sym(7).order(), Int(5040));
  // dihedral of the square: rotation + reflection
  PermGroup d4(4, {Perm::parse_cycles("(1 2 3 4)", 4), Perm::parse_cycles("(1 3)", 4)});
  EXPECT_EQ(d4.order(), Int(8));
  // alternating group on 4 points
  PermGroup a4(4, {Perm::parse_cycles("(1 2 3)", 4), Perm::parse_cycles("(2 3 4)", 4)});
  EXPECT_EQ(a4.order(), Int(12));
}

TEST(PermGroup, OrderMatchesEnumeration) {
  // The stabilizer chain and the BFS closure are independent routes.
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t n = 2 + rng() % 5;
    std::vector<Perm> gens;
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int g = 0; g < k; ++g) {
      std::vector<std::uint32_t> img(n);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      gens.emplace_back(std::move(img));
    }
    PermGroup grp(n, gens);
    EXPECT_EQ(grp.order(), Int(grp.elements(100000).size()));
  }
}

TEST(PermGroup, Membership) {
  PermGroup a4(4, {Perm::parse_cycles("(1 2 3)", 4), Perm::parse_cycles("(2 3 4)", 4)});
  EXPECT_TRUE(a4.contains(Perm::parse_cycles("(1 2)(3 4)", 4)));
  EXPECT_FALSE(a4.contains(Perm::parse_cycles("(1 2)", 4)));
  EXPECT_TRUE(a4.contains(Perm::identity(4)));
}

TEST(PermGroup, EnumerationCap) {
  EXPECT_THROW(sym(6).elements(100), CapExceeded);
}

TEST(PermGroup, CosetPartitionLagrange) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint32_t n = 3 + rng() % 3;
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    const Perm h{std::move(img)};
    PermGroup g = sym(n);
    const auto sub = PermGroup::closure(n, {h}, 100000);
    const auto part = left_cosets(g.elements(100000), sub);
    EXPECT_EQ(Int(part.reps.size() * sub.size()), g.order());
  }
}

TEST(PermGroup, CosetRepsAreSortedMinimalMembers) {
  // Sym(3) over <(1 2)>: three cosets with frozen minimal representatives.
  PermGroup g = sym(3);
  const auto sub = PermGroup::closure(3, {Perm::parse_cycles("(1 2)", 3)}, 100);
  const auto part = left_cosets(g.elements(100), sub);
  ASSERT_EQ(part.reps.size(), 3u);
  EXPECT_EQ(part.reps[0], Perm::identity(3));
  EXPECT_EQ(part.reps[1], Perm::parse_cycles("(2 3)", 3));
  EXPECT_EQ(part.reps[2], Perm::parse_cycles("(1 3 2)", 3));
  EXPECT_TRUE(std::is_sorted(part.reps.begin(), part.reps.end()));
}

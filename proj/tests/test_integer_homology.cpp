#include "bookcover/integer_homology.hpp"

#include <gtest/gtest.h>

#include <random>

using bookcover::CapExceeded;
using bookcover::cokernel_homology;
using bookcover::determinant;
using bookcover::gcd_of_minors_torsion;
using bookcover::hadamard_determinant_bound;
using bookcover::Int;
using bookcover::IntMatrix;
using bookcover::invariant_factors;
using bookcover::multiply;
using bookcover::smith_normal_form;
using bookcover::SmithResult;
using bookcover::torsion_order;

namespace {

IntMatrix make(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<Int>> data;
  for (const auto& r : rows) {
    std::vector<Int> row;
    for (long long v : r) row.emplace_back(v);
    data.push_back(std::move(row));
  }
  return IntMatrix::from_rows(std::move(data));
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, int max_abs) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-max_abs, max_abs);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = entry(rng);
  return m;
}

bool divisibility_chain(const SmithResult& snf) {
  for (std::size_t i = 0; i + 1 < snf.rank; ++i)
    if (snf.diagonal[i + 1] % snf.diagonal[i] != 0) return false;
  return true;
}

}  // namespace

TEST(Smith, AlreadyDiagonal) {
  const SmithResult snf = smith_normal_form(make({{2, 0}, {0, 6}}));
  EXPECT_EQ(snf.rank, 2u);
  EXPECT_EQ(snf.diagonal, (std::vector<Int>{2, 6}));
}

TEST(Smith, RankDeficient) {
  const SmithResult snf = smith_normal_form(make({{2, 4}, {4, 8}}));
  EXPECT_EQ(snf.rank, 1u);
  EXPECT_EQ(invariant_factors(snf), (std::vector<Int>{2}));
}

TEST(Smith, ZeroMatrix) {
  const SmithResult snf = smith_normal_form(make({{0}}));
  EXPECT_EQ(snf.rank, 0u);
  EXPECT_TRUE(invariant_factors(snf).empty());
  EXPECT_EQ(torsion_order(make({{0}})), Int(1));
}

TEST(Smith, EmptyMatrix) {
  const SmithResult snf = smith_normal_form(IntMatrix(0, 3));
  EXPECT_EQ(snf.rank, 0u);
  EXPECT_EQ(cokernel_homology(IntMatrix(0, 3)).betti, 3u);
}

TEST(Smith, TorsionExamples) {
  EXPECT_EQ(torsion_order(make({{1, 0}, {0, 1}})), Int(1));
  EXPECT_EQ(torsion_order(make({{2, 0}, {0, 3}})), Int(6));
  EXPECT_EQ(torsion_order(make({{2, 1, -3}})), Int(1));  // unimodular content
}

TEST(Smith, WitnessesDiagonalize) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix m = random_matrix(rng, 5, 9);
    const SmithResult snf = smith_normal_form(m, true);
    ASSERT_TRUE(snf.left && snf.right);
    const IntMatrix product = multiply(multiply(*snf.left, m), *snf.right);
    for (std::size_t i = 0; i < product.rows; ++i)
      for (std::size_t j = 0; j < product.cols; ++j)
        EXPECT_EQ(product.at(i, j), i == j ? snf.diagonal[i] : Int(0));
    EXPECT_EQ(bookcover::big_abs(determinant(*snf.left)), Int(1));
    EXPECT_EQ(bookcover::big_abs(determinant(*snf.right)), Int(1));
    EXPECT_TRUE(divisibility_chain(snf));
  }
}

TEST(Minors, Examples) {
  EXPECT_EQ(gcd_of_minors_torsion(make({{2, 0}, {0, 6}})), Int(12));
  EXPECT_EQ(gcd_of_minors_torsion(make({{2, 4}, {4, 8}})), Int(2));
  EXPECT_EQ(gcd_of_minors_torsion(make({{0}})), Int(1));
}

TEST(Minors, AgreesWithSmith) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix m = random_matrix(rng, 4, 5);
    EXPECT_EQ(gcd_of_minors_torsion(m), torsion_order(m));
  }
}

TEST(Minors, CapEnforced) {
  EXPECT_THROW(gcd_of_minors_torsion(IntMatrix(9, 9), 8), CapExceeded);
}

TEST(Smith, TorsionInvariantUnderRowColumnMoves) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 120; ++trial) {
    IntMatrix m = random_matrix(rng, 4, 6);
    const Int before = torsion_order(m);
    for (int op = 0; op < 6; ++op) {
      switch (rng() % 3) {
        case 0: {  // swap two rows
          const std::size_t a = rng() % m.rows, b = rng() % m.rows;
          for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
          break;
        }
        case 1: {  // negate a column
          const std::size_t c = rng() % m.cols;
          for (std::size_t i = 0; i < m.rows; ++i) m.at(i, c) = -m.at(i, c);
          break;
        }
        default: {  // add a multiple of one row to another
          const std::size_t a = rng() % m.rows, b = rng() % m.rows;
          if (a == b) break;
          const int mult = static_cast<int>(rng() % 7) - 3;
          for (std::size_t j = 0; j < m.cols; ++j) m.at(a, j) += Int(mult) * m.at(b, j);
          break;
        }
      }
    }
    EXPECT_EQ(torsion_order(m), before);
  }
}

TEST(Hadamard, Examples) {
  EXPECT_EQ(hadamard_determinant_bound(make({{1, 0}, {0, 1}})), Int(1));
  // columns (3,0) and (4,0): norms 3 and 4
  EXPECT_EQ(hadamard_determinant_bound(make({{3, 4}, {0, 0}})), Int(12));
  EXPECT_EQ(hadamard_determinant_bound(make({{1, 1}, {1, -1}})), Int(2));
}

TEST(Hadamard, BoundsDeterminant) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    std::uniform_int_distribution<int> entry(-9, 9);
    const std::size_t n = dim(rng);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
    EXPECT_LE(bookcover::big_abs(determinant(m)), hadamard_determinant_bound(m));
  }
}

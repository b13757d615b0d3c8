#include <gtest/gtest.h>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/operator.hpp"
#include "oracle.hpp"

using namespace hopfgroup;
using oracle::chi;
using oracle::elem;

TEST(Operator, MultiplicationMatrices) {
  GroupPtr q2 = make_group("qp:2");
  const Truncation t = make_truncation(q2, 0, {elem(q2, "0"), elem(q2, "1/2")});
  const TruncMatrix m = matrix_of_mult(chi(q2, "0", 0), t);
  Matrix expected(2, 2);
  expected(0, 0) = CycScalar(1L);
  EXPECT_EQ(m.entries, expected);
  EXPECT_EQ((m * m).entries, m.entries);
  const BSFunction g1 = chi(q2, "0", 1) + CycScalar::root_of_unity(3, 1) * chi(q2, "1/2", 1);
  const BSFunction g2 = chi(q2, "1/2", 0) + CycScalar(2L) * chi(q2, "1", 1);
  const Truncation fine = subgroup_window(q2, -1, 1);
  EXPECT_EQ(matrix_of_mult(g1 * g2, fine).entries, (matrix_of_mult(g1, fine) * matrix_of_mult(g2, fine)).entries);
  EXPECT_THROW(matrix_of_mult(g1, t), Error);
}

TEST(Operator, ConvolutionMatrices) {
  GroupPtr q2 = make_group("qp:2");
  const Truncation t = subgroup_window(q2, -1, 0);
  const TruncMatrix m = matrix_of_conv(chi(q2, "0", 0), t);
  // Oracle: chi_{Z_2} * chi_{Z_2} = chi_{Z_2}, so the Z_2 column is its own basis vector.
  const std::size_t col = *t.locate(elem(q2, "0"));
  for (std::size_t row = 0; row < t.dim(); ++row)
    EXPECT_EQ(m.entries(row, col), row == col ? CycScalar(1L) : CycScalar()) << row;
  EXPECT_TRUE(matrix_of_conv(BSFunction(q2), t).entries.is_zero());
}

TEST(Operator, RepresentsConvolutionAndComposes) {
  GroupPtr q2 = make_group("qp:2");
  const Truncation t = subgroup_window(q2, -3, 1);
  const BSFunction f = chi(q2, "1/2", 1) + CycScalar::root_of_unity(4, 1) * chi(q2, "0", 0);
  const BSFunction g = chi(q2, "1/4", 1) - chi(q2, "1", 1);
  const BSFunction xi = chi(q2, "0", 1) + CycScalar(3L) * chi(q2, "1/2", 0);
  const TruncMatrix mf = matrix_of_conv(f, t), mg = matrix_of_conv(g, t);
  // Oracle: symbol-level convolution.
  const auto v = coordinates(xi, t);
  const auto image = coordinates(convolve(f, xi), t);
  for (std::size_t i = 0; i < t.dim(); ++i) {
    CycScalar s;
    for (std::size_t j = 0; j < t.dim(); ++j) s += mf.entries(i, j) * v[j];
    EXPECT_EQ(s, image[i]);
  }
  EXPECT_EQ((mf * mg).entries, matrix_of_conv(convolve(f, g), t).entries);
  EXPECT_EQ(mf.entries.conjugate_transpose(), matrix_of_conv(conv_star(ConvElement(f)).symbol(), t).entries);
}

TEST(Operator, LeakageIsDetected) {
  GroupPtr q2 = make_group("qp:2");
  const Truncation t = subgroup_window(q2, 0, 1);
  const BSFunction f = chi(q2, "1/2", 0);
  EXPECT_FALSE(leakage(f, t).empty());
  try {
    matrix_of_conv(f, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Leakage);
    EXPECT_NE(std::string(e.what()).find("1/2"), std::string::npos);
  }
  const TruncMatrix compressed = matrix_of_conv(f, t, TruncMode::Compressed);
  EXPECT_TRUE(compressed.compressed);
  EXPECT_TRUE(compressed.entries.is_zero());
}

TEST(Operator, RankOneAndCommutingWitnesses) {
  GroupPtr q2 = make_group("qp:2");
  for (int n = 0; n <= 2; ++n)
    for (int k = 1; k <= 3; ++k) {
      const Truncation t = subgroup_window(q2, -k, n);
      const BSFunction h = subgroup_indicator(q2, n);
      const TruncMatrix conv = matrix_of_conv(h, t), mult = matrix_of_mult(h, t);
      EXPECT_EQ(exact_rank(mult * conv), 1u);
      // Oracle: the image of each basis vector under chi_H * (chi_H . e_y) is explicit.
      std::size_t nonzero_columns = 0;
      for (std::size_t y = 0; y < t.dim(); ++y) {
        const BSFunction image = h * convolve(h, indicator(q2, t.reps[y], n));
        if (!image.is_zero()) ++nonzero_columns;
      }
      EXPECT_EQ(nonzero_columns, 1u);
      EXPECT_TRUE(commutator_is_zero(conv, mult));
      const TruncMatrix moved = matrix_of_conv(chi(q2, "1/2", 0), t);
      const CommutatorResult r = commutator(moved, matrix_of_mult(subgroup_indicator(q2, 0), t));
      EXPECT_FALSE(r.zero);
      EXPECT_TRUE(r.witness.has_value());
      EXPECT_TRUE(commutator_is_zero(moved, moved));
    }
  Matrix empty(3, 3);
  EXPECT_EQ(exact_rank(empty), 0u);
  Matrix d(2, 2);
  d(0, 0) = CycScalar(1L);
  EXPECT_EQ(exact_rank(d), 1u);
}

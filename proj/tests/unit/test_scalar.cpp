#include <gtest/gtest.h>

#include <random>

#include "hopfgroup/scalar.hpp"

using hopfgroup::CycScalar;
using hopfgroup::Error;
using hopfgroup::ErrorCode;

namespace {

CycScalar z(unsigned n, long long k) { return CycScalar::root_of_unity(n, k); }

CycScalar q(long a, long b) { return CycScalar(mpq_class(a, b)); }

// Random element of Q(zeta_n) with small coefficients.
CycScalar random_scalar(std::mt19937_64& rng, unsigned n) {
  std::uniform_int_distribution<int> coeff(-3, 3), expo(0, static_cast<int>(n) - 1), count(0, 4);
  CycScalar out;
  for (int i = count(rng); i > 0; --i) out += CycScalar(static_cast<long>(coeff(rng))) * z(n, expo(rng));
  return out;
}

}  // namespace

TEST(Scalar, ZetaFourSquaredIsMinusOne) { EXPECT_EQ(z(4, 1) * z(4, 1), CycScalar(-1L)); }

TEST(Scalar, RootsOfPhiThreeSumToZero) { EXPECT_TRUE((z(3, 1) + (z(3, 2) + CycScalar(1L))).is_zero()); }

TEST(Scalar, InverseOfZetaEight) {
  const CycScalar inv = CycScalar(1L) / z(8, 1);
  EXPECT_EQ(inv * z(8, 1), CycScalar(1L));
  EXPECT_EQ(inv, z(8, 7));
}

TEST(Scalar, Conjugation) {
  EXPECT_EQ(z(4, 1).conjugate(), -z(4, 1));
  EXPECT_EQ(q(3, 2).conjugate(), q(3, 2));
  EXPECT_EQ(z(8, 1) * z(8, 1).conjugate(), CycScalar(1L));
}

TEST(Scalar, RootOfUnityReductions) {
  EXPECT_EQ(z(2, 1), CycScalar(-1L));
  EXPECT_EQ(z(6, 3), CycScalar(-1L));
  EXPECT_EQ(z(5, 0), CycScalar(1L));
  EXPECT_THROW(z(0, 1), Error);
}

TEST(Scalar, NinthRootDescendsToThird) {
  const CycScalar w = z(9, 3);
  EXPECT_EQ(w.conductor(), 3u);
  // Minimal polynomial x^2 + x + 1 of a primitive cube root of unity.
  EXPECT_TRUE((w * w + w + CycScalar(1L)).is_zero());
  EXPECT_NE(w, CycScalar(1L));
}

TEST(Scalar, ConductorIsMinimal) {
  EXPECT_EQ(z(6, 1).conductor(), 3u);   // zeta_6 = -zeta_3^2
  EXPECT_EQ(z(12, 3).conductor(), 4u);
  EXPECT_EQ((z(8, 1) + z(8, 7)).conductor(), 8u);  // sqrt(2)
  EXPECT_EQ((z(8, 1) * z(8, 1)).conductor(), 4u);
  EXPECT_EQ((z(15, 5) + z(15, 10)).conductor(), 1u);
  EXPECT_EQ((z(3, 1) * z(5, 1)).conductor(), 15u);
  EXPECT_TRUE((z(7, 1) - z(7, 1)).is_zero());
}

TEST(Scalar, TraceAndNorm) {
  EXPECT_EQ(z(5, 1).trace(), mpq_class(-1));
  EXPECT_EQ(z(8, 1).trace(), mpq_class(0));
  EXPECT_EQ(q(1, 2).trace(), mpq_class(1, 2));
}

TEST(Scalar, DivisionByZeroIsAnError) {
  try {
    (void)(CycScalar(1L) / CycScalar());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  const unsigned conductors[] = {1, 3, 4, 5, 6, 8, 12, 24};
  for (int trial = 0; trial < 200; ++trial) {
    const CycScalar a = random_scalar(rng, conductors[trial % 8]);
    const CycScalar b = random_scalar(rng, conductors[(trial / 8) % 8]);
    const CycScalar c = random_scalar(rng, conductors[(trial / 3) % 8]);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a.conjugate().conjugate(), a);
    EXPECT_EQ((a * b).conjugate(), a.conjugate() * b.conjugate());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycScalar(1L));
  }
}

TEST(Scalar, PromotionRoundTrip) {
  // Writing zeta_4 inside Q(zeta_12) and reducing returns the same value.
  const CycScalar embedded = CycScalar::from_exponents(12, {{3, mpq_class(1)}});
  EXPECT_EQ(embedded, z(4, 1));
  EXPECT_EQ(embedded.conductor(), 4u);
}

TEST(Scalar, TextForm) {
  EXPECT_EQ(CycScalar().to_string(), "0");
  EXPECT_EQ(q(-3, 2).to_string(), "-3/2");
  EXPECT_EQ(z(8, 1).to_string(), "z8");
  EXPECT_EQ(z(4, 1).conjugate().to_string(), "-z4");
  EXPECT_EQ((q(1, 2) + CycScalar(3L) * z(8, 3)).to_string(), "1/2 + 3*z8^3");
}

TEST(Scalar, ConductorCap) {
  const unsigned saved = hopfgroup::max_conductor();
  hopfgroup::set_max_conductor(16);
  EXPECT_THROW(z(17, 1), Error);
  hopfgroup::set_max_conductor(saved);
  EXPECT_NO_THROW(z(17, 1));
}

#include <gtest/gtest.h>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/operator.hpp"
#include "hopfgroup/tensor.hpp"
#include "oracle.hpp"

using namespace hopfgroup;
using oracle::chi;
using oracle::elem;

namespace {

CycScalar z(unsigned n, long long k) { return CycScalar::root_of_unity(n, k); }

ConvElement L(const BSFunction& f) { return ConvElement(f); }

// (f * g)(x) = sum over level-`fine` cosets w H of f(w) g(w^{-1} x) mu(H).
// `fine` must make w -> g(w^{-1} x) constant on the cosets.
CycScalar conv_oracle(const BSFunction& f, const BSFunction& g, const GElem& x, int fine) {
  const Group& grp = *f.group();
  CycScalar total;
  for (const auto& [w, c] : f.at_level(fine)) total += c * g(grp.mul(grp.inv(w), x));
  return total * CycScalar(grp.measure(fine));
}

std::vector<BSFunction> samples(const GroupPtr& g) {
  const int n1 = oracle::clamp_level(*g, 1), n2 = oracle::clamp_level(*g, 2);
  const auto pts = g->window(n2, 1);
  std::vector<BSFunction> out{BSFunction(g), subgroup_indicator(g, oracle::clamp_level(*g, 0))};
  for (std::size_t i = 1; i < pts.size() && out.size() < 6; i += 1 + pts.size() / 4)
    out.push_back(CycScalar(static_cast<long>(i % 4) + 1) * indicator(g, pts[i], n2) +
                  z(3, static_cast<long long>(i)) * indicator(g, pts[i - 1], n1));
  return out;
}

const char* const kGroups[] = {"qp:2", "zp:3", "finite:S3", "z", "shift:2"};

}  // namespace

TEST(ConvAlg, ConvolutionExamples) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(conv_mul(L(chi(q2, "0", 0)), L(chi(q2, "0", 0))), L(chi(q2, "0", 0)));
  GroupPtr q3 = make_group("qp:3");
  const BSFunction fa = chi(q3, "1/3", 1), gb = chi(q3, "2/9", 1);
  const ConvElement prod = conv_mul(L(fa), L(gb));
  EXPECT_EQ(prod, CycScalar(mpq_class(1, 3)) * L(chi(q3, "5/9", 1)));
  // Oracle: double coset sum over a Z/9 window.
  int bad = 0;
  for (const GElem& x : q3->window(2, 2))
    if (prod.symbol()(x) != conv_oracle(fa, gb, x, 2)) ++bad;
  EXPECT_EQ(bad, 0);
  EXPECT_TRUE(conv_mul(L(fa), L(BSFunction(q3))).is_zero());
}

TEST(ConvAlg, ConvolutionMatchesOracleOnAllGroups) {
  for (const char* d : kGroups) {
    GroupPtr g = make_group(d);
    const auto fs = samples(g);
    const int fine = oracle::clamp_level(*g, 4);
    for (const BSFunction& f : fs)
      for (const BSFunction& h : fs) {
        const BSFunction fh = conv_mul(L(f), L(h)).symbol();
        int bad = 0;
        for (const GElem& x : oracle::points(*g, 3, 1))
          if (fh(x) != conv_oracle(f, h, x, fine)) ++bad;
        EXPECT_EQ(bad, 0) << d;
      }
  }
}

TEST(ConvAlg, StarIsTheAdjoint) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(conv_star(L(subgroup_indicator(q2, 2))), L(subgroup_indicator(q2, 2)));
  const BSFunction f = z(4, 1) * chi(q2, "1/2", 0);
  const ConvElement fs = conv_star(L(f));
  EXPECT_EQ(fs, L(-z(4, 1) * chi(q2, "-1/2", 0)));
  // Oracle: conjugate transpose of the truncation matrix on a translation-stable window.
  const Truncation t = subgroup_window(q2, -2, 0);
  EXPECT_EQ(matrix_of_conv(fs.symbol(), t).entries, matrix_of_conv(f, t).entries.conjugate_transpose());
}

TEST(ConvAlg, StarOnShiftUsesTheModularFactor) {
  // Oracle: <L_f xi, eta> = <xi, L_{f#} eta> on explicit window functions,
  // with the inner product sum xi conj(eta) mu(H_n).
  GroupPtr s = make_group("shift:2");
  const BSFunction f = chi(s, "(1, 0)", 1) + z(4, 1) * chi(s, "(0, 1/2)", 0);
  const BSFunction fs = conv_star(L(f)).symbol();
  const BSFunction xi = chi(s, "(0, 0)", 1), eta = chi(s, "(1, 1/2)", 2) + chi(s, "(0, 1/4)", 1);
  auto inner = [&](const BSFunction& a, const BSFunction& b) { return integral(a * star(b), Side::Left); };
  EXPECT_EQ(inner(convolve(f, xi), eta), inner(xi, convolve(fs, eta)));
  EXPECT_EQ(conv_star(conv_star(L(f))), L(f));
}

TEST(ConvAlg, DualCoproductExamples) {
  GroupPtr q2 = make_group("qp:2");
  const ConvElement p = projection_pH(q2, 0);
  for (Side side : {Side::Right, Side::Left}) {
    const ConvDecomposition d = dual_coproduct(p, p, side);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].first, p);
    EXPECT_EQ(d[0].second, p);
  }
  const BSFunction f = chi(q2, "1/2", 0), g = chi(q2, "0", 0);
  const ConvDecomposition d = dual_coproduct(L(f), L(g), Side::Right);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].first, L(f));
  EXPECT_EQ(d[0].second, L(chi(q2, "-1/2", 0)));
  EXPECT_TRUE(dual_coproduct(L(BSFunction(q2)), L(g), Side::Right).empty());
}

TEST(ConvAlg, DualCoproductMatchesPointwiseSymbols) {
  for (const char* d : kGroups) {
    GroupPtr g = make_group(d);
    const auto fs = samples(g);
    const auto pts = oracle::points(*g, 2, 1);
    for (const BSFunction& f : fs)
      for (const BSFunction& h : fs) {
        const TensorDecomposition right = symbols(dual_coproduct(L(f), L(h), Side::Right));
        const TensorDecomposition left = symbols(dual_coproduct(L(f), L(h), Side::Left));
        EXPECT_EQ(oracle::mismatches(
                      right, [&](const GElem& x, const GElem& y) { return f(x) * h(g->mul(g->inv(x), y)); }, pts),
                  0)
            << d;
        EXPECT_EQ(oracle::mismatches(
                      left,
                      [&](const GElem& w, const GElem& y) {
                        return f(g->mul(w, g->inv(y))) * CycScalar(mpq_class(1) / g->modular(y)) * h(y);
                      },
                      pts),
                  0)
            << d;
      }
  }
}

TEST(ConvAlg, DualAntipodeCounitWeight) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(dual_antipode(L(subgroup_indicator(q2, 1))), L(subgroup_indicator(q2, 1)));
  GroupPtr q3 = make_group("qp:3");
  EXPECT_EQ(dual_antipode(L(chi(q3, "1/3", 1))), L(chi(q3, "-1/3", 1)));
  GroupPtr s = make_group("shift:2");
  const BSFunction f = chi(s, "(1, 0)", 0);
  const BSFunction sf = dual_antipode(L(f)).symbol();
  int bad = 0;
  for (const GElem& x : s->window(1, 2))
    if (sf(x) != CycScalar(mpq_class(1) / s->modular(x)) * f(s->inv(x))) ++bad;
  EXPECT_EQ(bad, 0);
  EXPECT_EQ(dual_antipode(dual_antipode(L(f))), L(f));

  EXPECT_EQ(dual_counit(L(chi(q2, "0", 1))), CycScalar(mpq_class(1, 2)));
  EXPECT_TRUE(dual_counit(L(BSFunction(q2))).is_zero());
  EXPECT_EQ(haar_weight(L(chi(q2, "0", 0))), CycScalar(1L));
  EXPECT_TRUE(haar_weight(L(chi(q2, "1", 1))).is_zero());
  // w(a* a) = integral |f|^2 = mu(2Z_2) = 1/2; oracle: direct convolution at e.
  const BSFunction h = chi(q2, "1/2", 1);
  const BSFunction hs = conv_star(L(h)).symbol();
  EXPECT_EQ(conv_oracle(hs, h, q2->identity(), 2), CycScalar(mpq_class(1, 2)));
  EXPECT_EQ(haar_weight(conv_mul(conv_star(L(h)), L(h))), CycScalar(mpq_class(1, 2)));
}

TEST(ConvAlg, ProjectionsAndExpectations) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(projection_pH(q2, 0), L(subgroup_indicator(q2, 0)));
  const ConvElement p2 = projection_pH(q2, 2);
  EXPECT_EQ(p2, CycScalar(4L) * L(subgroup_indicator(q2, 2)));
  EXPECT_EQ(conv_mul(p2, p2), p2);
  EXPECT_EQ(conv_star(p2), p2);

  EXPECT_EQ(vector_state_tau(L(subgroup_indicator(q2, 0)), 0), CycScalar(1L));
  EXPECT_TRUE(vector_state_tau(L(chi(q2, "1/2", 0)), 0).is_zero());
  EXPECT_TRUE(vector_state_tau(L(BSFunction(q2)), 3).is_zero());
  // Oracle for tau: <L_f chi_H, chi_H> / mu(H) through the truncation matrix.
  const BSFunction f = chi(q2, "1", 1) + z(3, 1) * chi(q2, "1/4", 2);
  const Truncation t = subgroup_window(q2, -2, 2);
  const TruncMatrix m = matrix_of_conv(f, t);
  CycScalar ip;
  const auto v = coordinates(subgroup_indicator(q2, 0), t);
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j) ip += v[i].conjugate() * m.entries(i, j) * v[j];
  ip *= CycScalar(q2->measure(2));  // Gram factor
  EXPECT_EQ(vector_state_tau(L(f), 0), ip / CycScalar(q2->measure(0)));

  EXPECT_EQ(cond_expectation(L(chi(q2, "1", 1)), 0), L(chi(q2, "1", 1)));
  EXPECT_TRUE(cond_expectation(L(chi(q2, "1/2", 0)), 0).is_zero());
  EXPECT_EQ(cond_expectation(projection_pH(q2, 0), 0), projection_pH(q2, 0));
}

TEST(ConvAlg, ExpectationLaws) {
  for (const char* d : kGroups) {
    GroupPtr g = make_group(d);
    const int n = oracle::clamp_level(*g, 0);
    const auto fs = samples(g);
    const ConvElement b = L(subgroup_indicator(g, oracle::clamp_level(*g, 1)) + z(4, 1) * subgroup_indicator(g, n));
    const ConvElement c = projection_pH(g, oracle::clamp_level(*g, 1));
    for (const BSFunction& f : fs) {
      const ConvElement a = L(f);
      const ConvElement e = cond_expectation(a, n);
      EXPECT_EQ(cond_expectation(e, n), e) << d;
      EXPECT_EQ(vector_state_tau(e, n), vector_state_tau(a, n)) << d;
      EXPECT_EQ(cond_expectation(conv_mul(conv_mul(b, a), c), n), conv_mul(conv_mul(b, e), c)) << d;
      // b p_H = tau(b) p_H for symbols supported in H_n.
      EXPECT_EQ(conv_mul(e, projection_pH(g, n)), vector_state_tau(e, n) * projection_pH(g, n)) << d;
    }
  }
}

TEST(ConvAlg, Reconstruction) {
  GroupPtr q2 = make_group("qp:2");
  const Reconstruction r0 = coset_reconstruction(L(chi(q2, "0", 0)), 0);
  EXPECT_EQ(r0.cosets, std::vector<GElem>{elem(q2, "0")});
  EXPECT_TRUE(r0.equal);
  const Reconstruction r = coset_reconstruction(L(chi(q2, "1/2", 1) + chi(q2, "3", 0)), 0);
  EXPECT_EQ(r.cosets, (std::vector<GElem>{elem(q2, "0"), elem(q2, "1/2")}));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(coset_reconstruction(L(BSFunction(q2)), 0).cosets.empty());
  for (const char* d : kGroups) {
    GroupPtr g = make_group(d);
    for (const BSFunction& f : samples(g)) EXPECT_TRUE(coset_reconstruction(L(f), oracle::clamp_level(*g, 1)).equal);
  }
}

TEST(ConvAlg, DualMembershipCertificate) {
  GroupPtr q2 = make_group("qp:2");
  const DualCertificate p = dual_membership_certificate(projection_pH(q2, 0), 0);
  EXPECT_EQ(p.right.size(), 1u);
  EXPECT_EQ(p.left.size(), 1u);
  const BSFunction f = chi(q2, "1/2", 0);
  const DualCertificate c = dual_membership_certificate(L(f), 0);
  EXPECT_EQ(c.right.size(), 1u);
  EXPECT_EQ(c.left.size(), 1u);
  const BSFunction ph = projection_pH(q2, 0).symbol();
  const auto pts = oracle::points(*q2, 1, 2);
  EXPECT_EQ(oracle::mismatches(symbols(c.right),
                               [&](const GElem& x, const GElem& y) { return f(x) * ph(q2->mul(q2->inv(x), y)); }, pts),
            0);
  EXPECT_EQ(oracle::mismatches(symbols(c.left),
                               [&](const GElem& w, const GElem& y) { return f(q2->mul(w, q2->inv(y))) * ph(y); }, pts),
            0);
  const DualCertificate zero = dual_membership_certificate(L(BSFunction(q2)), 0);
  EXPECT_TRUE(zero.right.empty() && zero.left.empty());
}

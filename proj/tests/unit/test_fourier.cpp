#include <gtest/gtest.h>

#include "hopfgroup/convalg.hpp"
#include "hopfgroup/fourier.hpp"
#include "oracle.hpp"

using namespace hopfgroup;
using oracle::chi;
using oracle::elem;

namespace {

CycScalar z(unsigned n, long long k) { return CycScalar::root_of_unity(n, k); }

// Character sum sum_{x} f(x) conj<xi, x> mu(H_fine) over level-`fine` reps of supp f.
CycScalar fourier_oracle(const BSFunction& f, const GElem& xi, int fine) {
  const Group& g = *f.group();
  CycScalar total;
  for (const auto& [x, c] : f.at_level(fine)) total += c * g.pairing(xi, x).conjugate();
  return total * CycScalar(g.measure(fine));
}

}  // namespace

TEST(Fourier, CharacterValues) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(character_value(q2, elem(q2, "1/2"), elem(q2, "1")), CycScalar(-1L));
  EXPECT_EQ(character_value(q2, elem(q2, "3/8"), elem(q2, "0")), CycScalar(1L));
  EXPECT_EQ(character_value(q2, elem(q2, "1/8"), elem(q2, "1")), z(8, 1));
  GroupPtr z3 = make_group("zp:3");
  GroupPtr z3d = z3->dual();
  EXPECT_EQ(character_value(z3, z3d->parse_element("2"), elem(z3, "5")), CycScalar(1L));
  try {
    character_value(make_group("shift:2"), GElem{0, 0}, GElem{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

TEST(Fourier, Examples) {
  for (const char* d : {"qp:2", "qp:3"}) {
    GroupPtr g = make_group(d);
    EXPECT_EQ(fourier(subgroup_indicator(g, 0)), subgroup_indicator(g, 0)) << d;
    for (int n = 1; n <= 2; ++n) {
      const mpq_class scale = 1 / mpq_class(g->index(0, n));
      EXPECT_EQ(fourier(subgroup_indicator(g, n)), CycScalar(scale) * subgroup_indicator(g, -n)) << d;
    }
  }
  GroupPtr q2 = make_group("qp:2");
  // Oracle: character sum over level-4 reps, fine enough for every xi in the window.
  const BSFunction hat = fourier(subgroup_indicator(q2, 1));
  int bad = 0;
  for (const GElem& xi : q2->window(2, 3))
    if (hat(xi) != fourier_oracle(subgroup_indicator(q2, 1), xi, 4)) ++bad;
  EXPECT_EQ(bad, 0);
  EXPECT_TRUE(fourier(BSFunction(q2)).is_zero());
  const BSFunction odd = chi(q2, "1", 1);
  EXPECT_EQ(inverse_fourier(fourier(odd)), odd);
  EXPECT_EQ(fourier(fourier(odd)), chi(q2, "-1", 1));
  EXPECT_TRUE(inverse_fourier(BSFunction(q2)).is_zero());
}

TEST(Fourier, Plancherel) {
  GroupPtr q2 = make_group("qp:2");
  const PlancherelResult r = plancherel_check(chi(q2, "1/2", 1));
  EXPECT_EQ(r.norm, CycScalar(mpq_class(1, 2)));
  EXPECT_EQ(r.dual_norm, CycScalar(mpq_class(1, 2)));
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(plancherel_check(BSFunction(q2)).equal);
  GroupPtr z3 = make_group("zp:3");
  const PlancherelResult one = plancherel_check(subgroup_indicator(z3, 0));
  EXPECT_EQ(one.norm, CycScalar(1L));
  EXPECT_EQ(one.dual_norm, CycScalar(1L));
}

TEST(Fourier, LawsAcrossAbelianModels) {
  for (const char* d : {"qp:2", "qp:3", "zp:2", "zp:3", "finite:Z6", "finite:Z2xZ4", "prod(zp:2,finite:Z3)"}) {
    GroupPtr g = make_group(d);
    const int n1 = oracle::clamp_level(*g, 1), n2 = oracle::clamp_level(*g, 2);
    const auto pts = g->window(n2, 1);
    std::vector<BSFunction> fs{subgroup_indicator(g, oracle::clamp_level(*g, 0))};
    for (std::size_t i = 1; i < pts.size() && fs.size() < 6; i += 1 + pts.size() / 4)
      fs.push_back(z(4, static_cast<long long>(i)) * indicator(g, pts[i], n2) +
                   CycScalar(mpq_class(1, 2)) * indicator(g, pts[i - 1], n1));
    for (const BSFunction& f : fs) {
      const BSFunction hat = fourier(f);
      EXPECT_EQ(hat.group()->descriptor(), g->dual()->descriptor()) << d;
      EXPECT_EQ(inverse_fourier(hat), f) << d;
      EXPECT_EQ(fourier(hat), antipode(f)) << d;
      EXPECT_TRUE(plancherel_check(f).equal) << d;
      const int fine = std::max(f.level(), oracle::clamp_level(*g, 3));
      int bad = 0;
      for (const GElem& xi : oracle::points(*hat.group(), std::max(hat.level(), 1), 2))
        if (hat(xi) != fourier_oracle(f, xi, fine)) ++bad;
      EXPECT_EQ(bad, 0) << d;
      for (const BSFunction& h : fs)
        EXPECT_EQ(fourier(convolve(f, h)), fourier(f) * fourier(h)) << d;
    }
  }
}

TEST(Fourier, NonAbelianAndCircleDualsAreRejected) {
  GroupPtr s = make_group("shift:2");
  EXPECT_THROW(fourier(subgroup_indicator(s, 0)), Error);
  GroupPtr zz = make_group("z");
  try {
    fourier(subgroup_indicator(zz, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
}

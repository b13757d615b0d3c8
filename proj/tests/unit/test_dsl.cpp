#include <gtest/gtest.h>

#include "hopfgroup/dsl.hpp"
#include "hopfgroup/harness.hpp"
#include "oracle.hpp"

using namespace hopfgroup;
using oracle::chi;

namespace {

CycScalar z(unsigned n, long long k) { return CycScalar::root_of_unity(n, k); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Dsl, Scalars) {
  EXPECT_EQ(parse_scalar("1/2 + 3*z8^3"), CycScalar(mpq_class(1, 2)) + CycScalar(3L) * z(8, 3));
  EXPECT_EQ(parse_scalar("z8^-1"), z(8, 7));
  EXPECT_EQ(parse_scalar("z4*z4"), CycScalar(-1L));
  EXPECT_EQ(parse_scalar(" - 3 / 2 "), CycScalar(mpq_class(-3, 2)));
  EXPECT_EQ(parse_scalar("1/2^3"), CycScalar(mpq_class(1, 8)));
  EXPECT_EQ(parse_scalar("conj(z3)"), z(3, 2));
  EXPECT_EQ(parse_scalar("(1 + z4)*(1 - z4)"), CycScalar(2L));
  EXPECT_EQ(code_of([] { parse_scalar("1/0"); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { parse_scalar("z0"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { parse_scalar("chi(0, level=0)"); }), ErrorCode::Parse);
  // Text form round-trips, including sums printed with several terms.
  for (const CycScalar& c : {CycScalar(mpq_class(-7, 3)), z(24, 5), CycScalar(2L) * z(12, 1) - z(8, 3) + CycScalar(1L),
                             z(5, 2).conjugate() * CycScalar(mpq_class(3, 4))})
    EXPECT_EQ(parse_scalar(c.to_string()), c) << c.to_string();
}

TEST(Dsl, FunctionExamples) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(parse_function("chi(0, level=0)", q2), subgroup_indicator(q2, 0));
  const BSFunction two = parse_function("1/2*chi(1/2, level=1) + z4*chi(0, level=0)", q2);
  EXPECT_EQ(two, CycScalar(mpq_class(1, 2)) * chi(q2, "1/2", 1) + z(4, 1) * chi(q2, "0", 0));
  EXPECT_EQ(parse_function("chi(0,level=0)-chi(0 , level = 0)", q2), BSFunction(q2));
  EXPECT_EQ(parse_function("0", q2), BSFunction(q2));
  EXPECT_EQ(parse_function("conj(z4*chi(1, level=1))", q2), -z(4, 1) * chi(q2, "1", 1));
  EXPECT_EQ(parse_function("chi(0, level=0)*chi(1/2, level=-1)", q2), chi(q2, "0", 0));
  GroupPtr s = make_group("shift:2");
  EXPECT_EQ(parse_function("2*chi((1, 1/2), level=1)", s), CycScalar(2L) * chi(s, "(1, 1/2)", 1));
  GroupPtr prod = make_group("prod(zp:2,finite:Z3)");
  EXPECT_FALSE(parse_function("chi((1, 2), level=0)", prod).is_zero());
}

TEST(Dsl, ErrorsCarryDistinctCodesAndColumns) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(code_of([&] { parse_function("chi(1/3, level=0)", q2); }), ErrorCode::Elem);
  EXPECT_EQ(code_of([&] { parse_function("chi(0, level=0) +", q2); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse_function("chi(0, level=61)", q2); }), ErrorCode::Level);
  EXPECT_EQ(code_of([&] { parse_function("chi(0, lvl=0)", q2); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse_function("2", q2); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse_function("2 + chi(0, level=0)", q2); }), ErrorCode::Parse);
  EXPECT_NE(message_of([&] { parse_function("chi(1/3, level=0)", q2); }).find("column 5"), std::string::npos);
  EXPECT_NE(message_of([&] { parse_function("chi(0, level=0) $", q2); }).find("column 17"), std::string::npos);
  EXPECT_NE(message_of([&] { parse_function("chi(0, level=99)", q2); }).find("column 14"), std::string::npos);
  GroupPtr s3 = make_group("finite:S3");
  EXPECT_EQ(code_of([&] { parse_function("chi(1234, level=0)", s3); }), ErrorCode::Elem);
  EXPECT_EQ(code_of([&] { parse_function("chi(123, level=1)", s3); }), ErrorCode::Level);
}

TEST(Dsl, CanonicalPrinting) {
  GroupPtr q2 = make_group("qp:2");
  EXPECT_EQ(format_function(BSFunction(q2)), "0");
  EXPECT_EQ(format_function(chi(q2, "0", 0)), "chi(0, level=0)");
  EXPECT_EQ(format_function(chi(q2, "0", 1) + chi(q2, "1", 1)), "chi(0, level=0)");
  EXPECT_EQ(format_function(-z(4, 1) * chi(q2, "1/2", 1) + CycScalar(mpq_class(1, 2)) * chi(q2, "0", 1)),
            "1/2*chi(0, level=1) - z4*chi(1/2, level=1)");
  EXPECT_EQ(format_function((CycScalar(1L) + z(4, 1)) * chi(q2, "0", 0)), "(1 + z4)*chi(0, level=0)");
  EXPECT_EQ(format_dual(ConvElement(chi(q2, "0", 0))), "L[chi(0, level=0)]");
}

TEST(Dsl, DualElements) {
  GroupPtr q3 = make_group("qp:3");
  const ConvElement prod = parse_dual("L[chi(1/3, level=1)] * L[chi(2/9, level=1)]", q3);
  EXPECT_EQ(prod, CycScalar(mpq_class(1, 3)) * ConvElement(chi(q3, "5/9", 1)));
  EXPECT_EQ(parse_dual("chi(0, level=0)", q3), ConvElement(subgroup_indicator(q3, 0)));
  EXPECT_EQ(parse_dual(format_dual(prod), q3), prod);
  EXPECT_EQ(code_of([&] { parse_dual("L[chi(0, level=0)] + chi(0, level=0)", q3); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([&] { parse_function("L[chi(0, level=0)]", q3); }), ErrorCode::Parse);
}

TEST(Dsl, JsonFormat) {
  GroupPtr q2 = make_group("qp:2");
  const BSFunction f = CycScalar(mpq_class(1, 2)) * chi(q2, "1/2", 1) + z(4, 1) * chi(q2, "0", 0);
  const nlohmann::json j = function_to_json(f);
  EXPECT_EQ(j["group"], "qp:2");
  EXPECT_EQ(j["level"], 1);
  EXPECT_EQ(j["terms"].size(), 3u);
  EXPECT_EQ(function_from_json(j), f);
  EXPECT_EQ(function_from_json(nlohmann::json::parse(j.dump())), f);
  const nlohmann::json d = dual_to_json(ConvElement(f));
  EXPECT_EQ(d["dual"], true);
  EXPECT_EQ(dual_from_json(d).symbol(), f);
  nlohmann::json dup = j;
  dup["terms"].push_back({{"rep", "4"}, {"coeff", "1"}});  // 4 lies in the coset of 0
  EXPECT_EQ(code_of([&] { function_from_json(dup); }), ErrorCode::Validation);
  EXPECT_EQ(code_of([&] { function_from_json(j, make_group("qp:3")); }), ErrorCode::Usage);
  EXPECT_EQ(code_of([&] { function_from_json(nlohmann::json{{"group", "qp:2"}}); }), ErrorCode::Parse);
}

TEST(Dsl, RoundTripOnGeneratedFunctions) {
  const char* groups[] = {"qp:2", "qp:3", "zp:2", "finite:S3", "finite:Z6", "z", "shift:2", "prod(zp:2,finite:Z3)"};
  int checked = 0;
  for (std::size_t i = 0; checked < 500; ++i) {
    GroupPtr g = make_group(groups[i % std::size(groups)]);
    Generator gen(7, "roundtrip", g, default_levels(*g), 6);
    for (int k = 0; k < 25; ++k, ++checked) {
      const BSFunction f = gen.function();
      ASSERT_EQ(parse_function(format_function(f), g), f) << format_function(f);
      ASSERT_EQ(function_from_json(nlohmann::json::parse(function_to_json(f).dump()), g), f);
      ASSERT_EQ(dual_from_json(dual_to_json(ConvElement(f))).symbol(), f);
    }
  }
}

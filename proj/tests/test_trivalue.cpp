#include <catch2/catch_amalgamated.hpp>

#include "fsw/trivalue.hpp"

using namespace fsw;

namespace {
constexpr TriValue T = TriValue::TrueV;
constexpr TriValue U = TriValue::UndefV;
constexpr TriValue F = TriValue::FalseV;
const TriValue vals[3] = {T, U, F};

void check_table(Schema s, Connective c, const TriValue (&expect)[3][3]) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      INFO("schema " << (s == Schema::SK ? "SK" : "AF") << " row " << i << " col " << j);
      REQUIRE(tri_eval(s, c, vals[i], vals[j]) == expect[i][j]);
    }
}
}  // namespace

TEST_CASE("negation table (shared by both schemas)") {
  for (Schema s : {Schema::SK, Schema::AF}) {
    REQUIRE(tri_eval(s, Connective::Neg, T) == F);
    REQUIRE(tri_eval(s, Connective::Neg, U) == U);
    REQUIRE(tri_eval(s, Connective::Neg, F) == T);
  }
}

TEST_CASE("Strong Kleene tables, cell-exact") {
  check_table(Schema::SK, Connective::Or, {{T, T, T}, {T, U, U}, {T, U, F}});
  check_table(Schema::SK, Connective::And, {{T, U, F}, {U, U, F}, {F, F, F}});
  check_table(Schema::SK, Connective::Imp, {{T, U, F}, {T, U, U}, {T, T, T}});
}

TEST_CASE("Aczel-Feferman tables, cell-exact") {
  check_table(Schema::AF, Connective::Or, {{T, U, T}, {U, U, U}, {T, U, F}});
  check_table(Schema::AF, Connective::And, {{T, U, F}, {U, U, U}, {F, U, F}});
  check_table(Schema::AF, Connective::Imp, {{T, U, F}, {U, U, U}, {T, T, T}});
}

TEST_CASE("spec spot checks") {
  REQUIRE(tri_eval(Schema::SK, Connective::And, T, U) == U);
  REQUIRE(tri_eval(Schema::SK, Connective::And, F, U) == F);
  REQUIRE(tri_eval(Schema::AF, Connective::And, F, U) == U);
}

TEST_CASE("SK implication coincides with not-A or B; AF does not in general") {
  for (TriValue a : vals)
    for (TriValue b : vals) {
      TriValue na = tri_eval(Schema::SK, Connective::Neg, a);
      REQUIRE(tri_eval(Schema::SK, Connective::Imp, a, b) ==
              tri_eval(Schema::SK, Connective::Or, na, b));
    }
  REQUIRE(tri_eval(Schema::AF, Connective::Imp, F, U) !=
          tri_eval(Schema::AF, Connective::And, F, U));
}

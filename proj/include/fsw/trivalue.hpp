#pragma once

#include <stdexcept>

namespace fsw {

enum class Schema { SK, AF };

enum class TriValue : int8_t { FalseV = -1, UndefV = 0, TrueV = 1 };

enum class Connective { Neg, Or, And, Imp };

// Strong Kleene: truth propagates as min/max; U is "not yet determined".
// Aczel-Feferman: a variant of Weak Kleene; U is contagious except that a
// determinately false conjunct (resp. true disjunct) cannot rescue it.
inline TriValue tri_eval(Schema s, Connective c, TriValue x, TriValue y = TriValue::UndefV) {
  using TV = TriValue;
  auto idx = [](TV v) { return v == TV::TrueV ? 0 : (v == TV::UndefV ? 1 : 2); };
  static constexpr int8_t T = 1, U = 0, F = -1;
  if (c == Connective::Neg) {
    return x == TV::TrueV ? TV::FalseV : (x == TV::FalseV ? TV::TrueV : TV::UndefV);
  }
  // row: x in T,U,F ; column: y in T,U,F
  static constexpr int8_t sk_or[3][3] = {{T, T, T}, {T, U, U}, {T, U, F}};
  static constexpr int8_t sk_and[3][3] = {{T, U, F}, {U, U, F}, {F, F, F}};
  static constexpr int8_t sk_imp[3][3] = {{T, U, F}, {T, U, U}, {T, T, T}};
  static constexpr int8_t af_or[3][3] = {{T, U, T}, {U, U, U}, {T, U, F}};
  static constexpr int8_t af_and[3][3] = {{T, U, F}, {U, U, U}, {F, U, F}};
  static constexpr int8_t af_imp[3][3] = {{T, U, F}, {U, U, U}, {T, T, T}};
  const int8_t(*tab)[3] = nullptr;
  if (s == Schema::SK) {
    tab = c == Connective::Or ? sk_or : (c == Connective::And ? sk_and : sk_imp);
  } else {
    tab = c == Connective::Or ? af_or : (c == Connective::And ? af_and : af_imp);
  }
  return static_cast<TriValue>(tab[idx(x)][idx(y)]);
}

inline const char* tri_name(TriValue v) {
  switch (v) {
    case TriValue::TrueV: return "T";
    case TriValue::UndefV: return "U";
    default: return "F";
  }
}

}  // namespace fsw

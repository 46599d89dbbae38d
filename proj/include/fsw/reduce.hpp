#pragma once

#include <optional>
#include <unordered_set>

#include "fsw/term.hpp"

namespace fsw {

// Step budget for fuel-bounded normalization. Reduction in TON is not
// guaranteed to terminate, so every reduction-based decision is bounded.
struct Fuel {
  uint64_t budget = 10000;
};

inline Fuel default_fuel() {
  static Fuel f = [] {
    Fuel r;
    if (const char* e = std::getenv("FSW_FUEL")) {
      long v = std::atol(e);
      if (v > 0) r.budget = static_cast<uint64_t>(v);
    }
    return r;
  }();
  return f;
}

namespace detail {

// Contracts t if t itself is a redex. Rules of Def-style TON reduction:
//   k a b -> a
//   s a b c -> a c (b c)
//   p0 (p a b) -> a ; p1 (p a b) -> b
//   pN (sN n) -> n          (n a numeral)
//   sN (pN n) -> n          (n a nonzero numeral)
//   dN u v m n -> u / v     (m, n numerals; u if m = n)
// dN on non-numerals, pN zero, and under-applied heads are stuck.
inline std::optional<Term> contract(Term t) {
  if (t->tag != Tag::App) return std::nullopt;
  Term f1 = t->fun;  // t = f1 x1
  Term x1 = t->arg;
  if (f1->tag != Tag::App) {
    switch (f1->tag) {
      case Tag::P0:
      case Tag::P1: {
        // x1 must literally be (p a b)
        if (x1->tag == Tag::App && x1->fun->tag == Tag::App &&
            x1->fun->fun->tag == Tag::P) {
          return f1->tag == Tag::P0 ? x1->fun->arg : x1->arg;
        }
        return std::nullopt;
      }
      case Tag::PN: {
        if (x1->tag == Tag::App && x1->fun->tag == Tag::SN && is_numeral(x1->arg))
          return x1->arg;
        return std::nullopt;
      }
      case Tag::SN: {
        if (x1->tag == Tag::App && x1->fun->tag == Tag::PN && is_numeral(x1->arg) &&
            x1->arg->numeral > 0)
          return x1->arg;
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }
  Term f2 = f1->fun;  // t = f2 x2 x1
  Term x2 = f1->arg;
  if (f2->tag == Tag::K) return x2;
  if (f2->tag != Tag::App) return std::nullopt;
  Term f3 = f2->fun;  // t = f3 x3 x2 x1
  Term x3 = f2->arg;
  if (f3->tag == Tag::S) return app(app(x3, x1), app(x2, x1));
  if (f3->tag != Tag::App) return std::nullopt;
  Term f4 = f3->fun;  // t = f4 x4 x3 x2 x1
  Term x4 = f3->arg;
  if (f4->tag == Tag::DN && is_numeral(x2) && is_numeral(x1))
    return x2->numeral == x1->numeral ? x4 : x3;
  return std::nullopt;
}

}  // namespace detail

// One leftmost-outermost contraction; absent iff t is in normal form.
inline std::optional<Term> step(Term t) {
  if (auto r = detail::contract(t)) return r;
  if (t->tag != Tag::App) return std::nullopt;
  if (auto f = step(t->fun)) return app(*f, t->arg);
  if (auto a = step(t->arg)) return app(t->fun, *a);
  return std::nullopt;
}

struct NormResult {
  bool normal = false;
  Term term = nullptr;
  uint64_t steps = 0;
};

// Iterated step under the given fuel; deterministic.
inline NormResult reduce(Term t, Fuel f = default_fuel()) {
  if (t->nf && t->nf_steps <= f.budget) return {true, t->nf, t->nf_steps};
  if (t->nf_fail_partial && t->nf_fail_budget == f.budget)
    return {false, t->nf_fail_partial, f.budget};
  Term cur = t;
  uint64_t used = 0;
  while (used < f.budget) {
    if (cur->nf && used + cur->nf_steps <= f.budget) {
      used += cur->nf_steps;
      cur = cur->nf;
      break;
    }
    auto nxt = step(cur);
    if (!nxt) break;
    cur = *nxt;
    ++used;
  }
  if (!step(cur)) {
    if (!t->nf) {
      t->nf = cur;
      t->nf_steps = used;
    }
    return {true, cur, used};
  }
  if (f.budget >= t->nf_fail_budget) {
    t->nf_fail_budget = f.budget;
    t->nf_fail_partial = cur;
  }
  return {false, cur, used};
}

// Reduces the head spine only: stops as soon as no contraction applies at the
// root. Used to expose dotted-constructor heads of codes that have no full
// normal form (e.g. codes built with rec).
inline NormResult whnf(Term t, Fuel f = default_fuel()) {
  Term cur = t;
  uint64_t used = 0;
  while (used < f.budget) {
    auto r = detail::contract(cur);
    if (!r) {
      // also drive the function side, since a spine redex may be buried:
      // (s a b c) d contracts inside the fun position.
      if (cur->tag == Tag::App) {
        auto fr = whnf(cur->fun, Fuel{f.budget - used});
        used += fr.steps;
        if (fr.term != cur->fun) {
          cur = app(fr.term, cur->arg);
          continue;
        }
      }
      return {true, cur, used};
    }
    cur = *r;
    ++used;
  }
  return {false, cur, used};
}

enum class Verdict { Equal, Distinct, Unknown };

// cheap normal-form test with caching
inline bool in_normal_form(Term t) {
  if (t->nf) return t->nf == t;
  if (!step(t)) {
    t->nf = t;
    t->nf_steps = 0;
    return true;
  }
  return false;
}

// Decidable-by-fuel equality: both sides must normalize.
inline Verdict beta_equal(Term a, Term b, Fuel f = default_fuel()) {
  if (a == b) return Verdict::Equal;
  NormResult ra = reduce(a, f), rb = reduce(b, f);
  if (!ra.normal || !rb.normal) return Verdict::Unknown;
  return ra.term == rb.term ? Verdict::Equal : Verdict::Distinct;
}

// Complete development: contracts every redex present in t simultaneously
// (children first, then the root once). Gross-Knuth step; cofinal strategy
// for this orthogonal rewrite system.
inline Term parallel_step(Term t) {
  if (t->tag != Tag::App) return t;
  Term d = app(parallel_step(t->fun), parallel_step(t->arg));
  if (auto r = detail::contract(d)) return *r;
  return d;
}

// Bounded semi-decision of beta-joinability (common reduct). Collects the
// leftmost-outermost traces and the Gross-Knuth orbits of both sides and
// tests for intersection. Sound: any hit exhibits a common reduct.
inline Verdict joinable(Term a, Term b, uint64_t steps = 64, uint32_t max_size = 1u << 20) {
  if (a == b) return Verdict::Equal;
  std::unordered_set<Term> seen_a, seen_b;
  auto run = [&](Term t, std::unordered_set<Term>& mine,
                 const std::unordered_set<Term>& other, bool gk) -> bool {
    Term cur = t;
    for (uint64_t i = 0; i < steps; ++i) {
      if (other.count(cur)) return true;
      mine.insert(cur);
      if (cur->size > max_size) return false;
      if (gk) {
        Term nxt = parallel_step(cur);
        if (nxt == cur) return false;
        cur = nxt;
      } else {
        auto nxt = step(cur);
        if (!nxt) return false;
        cur = *nxt;
      }
    }
    return other.count(cur) > 0;
  };
  if (run(a, seen_a, seen_b, false)) return Verdict::Equal;
  if (run(b, seen_b, seen_a, false)) return Verdict::Equal;
  if (run(a, seen_a, seen_b, true)) return Verdict::Equal;
  if (run(b, seen_b, seen_a, true)) return Verdict::Equal;
  // normal forms on both sides that differ are genuinely distinct
  NormResult ra = reduce(a), rb = reduce(b);
  if (ra.normal && rb.normal)
    return ra.term == rb.term ? Verdict::Equal : Verdict::Distinct;
  return Verdict::Unknown;
}

// N(x) in the closed term model: x reduces to a numeral.
inline std::optional<long> numeral_value(Term t, Fuel f = default_fuel()) {
  NormResult r = reduce(t, f);
  if (r.normal && r.term->numeral >= 0) return r.term->numeral;
  return std::nullopt;
}

}  // namespace fsw

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fsw {

// Applicative terms over the TON constants plus the dotted sentence
// constructors. Terms are interned: structural equality is pointer equality.
enum class Tag : uint8_t {
  // combinators / pairing / numbers
  K, S, P, P0, P1, Zero, SN, PN, DN,
  // dotted sentence constructors (free constants, never reduce)
  DotEq, DotNeg, DotAnd, DotImp, DotAll, DotN, DotT, Lim,
  Var, App,
};

constexpr int kNumConstants = 17;

struct TermNode;
using Term = const TermNode*;

struct TermNode {
  Tag tag;
  uint32_t var = 0;      // Var: symbol table index
  Term fun = nullptr;    // App
  Term arg = nullptr;    // App
  uint32_t depth = 0;
  uint32_t size = 1;
  int32_t numeral = -1;  // >= 0 iff the term literally is a numeral
  bool closed = true;
  size_t hash = 0;

  // normalization cache, maintained by reduce()
  mutable Term nf = nullptr;
  mutable uint64_t nf_steps = 0;
  mutable uint64_t nf_fail_budget = 0;  // a budget that was exhausted on this term
  mutable Term nf_fail_partial = nullptr;
};

namespace detail {

struct AppKey {
  Term f, a;
  bool operator==(const AppKey& o) const { return f == o.f && a == o.a; }
};
struct AppKeyHash {
  size_t operator()(const AppKey& k) const {
    size_t h = std::hash<const void*>()(k.f);
    h ^= std::hash<const void*>()(k.a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

struct Arena {
  std::mutex mu;
  std::vector<std::unique_ptr<TermNode>> nodes;
  std::unordered_map<AppKey, Term, AppKeyHash> apps;
  std::unordered_map<std::string, uint32_t> sym_ids;
  std::vector<std::string> sym_names;
  std::vector<Term> vars;
  Term constants[kNumConstants] = {};

  Arena() {
    for (int i = 0; i < kNumConstants; ++i) {
      auto n = std::make_unique<TermNode>();
      n->tag = static_cast<Tag>(i);
      n->hash = std::hash<int>()(i) * 0x9e3779b97f4a7c15ull;
      if (n->tag == Tag::Zero) n->numeral = 0;
      constants[i] = n.get();
      nodes.push_back(std::move(n));
    }
  }
};

inline Arena& arena() {
  static Arena a;
  return a;
}

}  // namespace detail

inline Term constant(Tag t) { return detail::arena().constants[static_cast<int>(t)]; }

inline Term var(std::string_view name) {
  auto& a = detail::arena();
  std::scoped_lock lk(a.mu);
  auto it = a.sym_ids.find(std::string(name));
  uint32_t id;
  if (it != a.sym_ids.end()) {
    id = it->second;
  } else {
    id = static_cast<uint32_t>(a.sym_names.size());
    a.sym_names.emplace_back(name);
    a.sym_ids.emplace(std::string(name), id);
    a.vars.push_back(nullptr);
  }
  if (!a.vars[id]) {
    auto n = std::make_unique<TermNode>();
    n->tag = Tag::Var;
    n->var = id;
    n->closed = false;
    n->hash = std::hash<uint32_t>()(id) * 0xff51afd7ed558ccdull + 1;
    a.vars[id] = n.get();
    a.nodes.push_back(std::move(n));
  }
  return a.vars[id];
}

inline const std::string& var_name(Term t) {
  return detail::arena().sym_names[t->var];
}

inline Term app(Term f, Term x) {
  auto& a = detail::arena();
  std::scoped_lock lk(a.mu);
  detail::AppKey key{f, x};
  auto it = a.apps.find(key);
  if (it != a.apps.end()) return it->second;
  auto n = std::make_unique<TermNode>();
  n->tag = Tag::App;
  n->fun = f;
  n->arg = x;
  n->depth = 1 + std::max(f->depth, x->depth);
  n->size = 1 + f->size + x->size;
  n->closed = f->closed && x->closed;
  n->hash = detail::AppKeyHash()(key);
  if (f->tag == Tag::SN && x->numeral >= 0) n->numeral = x->numeral + 1;
  Term r = n.get();
  a.apps.emplace(key, r);
  a.nodes.push_back(std::move(n));
  return r;
}

inline Term app(Term f, Term a1, Term a2) { return app(app(f, a1), a2); }
inline Term app(Term f, Term a1, Term a2, Term a3) { return app(app(f, a1, a2), a3); }
inline Term app(Term f, Term a1, Term a2, Term a3, Term a4) { return app(app(f, a1, a2, a3), a4); }

inline Term numeral(long n) {
  Term t = constant(Tag::Zero);
  for (long i = 0; i < n; ++i) t = app(constant(Tag::SN), t);
  return t;
}

inline bool is_numeral(Term t) { return t->numeral >= 0; }

inline bool occurs_var(Term t, Term v) {
  if (t == v) return true;
  if (t->closed) return false;
  if (t->tag == Tag::App) return occurs_var(t->fun, v) || occurs_var(t->arg, v);
  return false;
}

// capture-free substitution (there are no binders at the term level)
inline Term subst(Term body, Term v, Term val) {
  if (body == v) return val;
  if (body->closed || body->tag != Tag::App) return body;
  Term f = subst(body->fun, v, val);
  Term a = subst(body->arg, v, val);
  if (f == body->fun && a == body->arg) return body;
  return app(f, a);
}

// dotted-code helpers
inline Term dot_eq(Term a, Term b) { return app(constant(Tag::DotEq), a, b); }
inline Term dot_neg(Term a) { return app(constant(Tag::DotNeg), a); }
inline Term dot_and(Term a, Term b) { return app(constant(Tag::DotAnd), a, b); }
inline Term dot_imp(Term a, Term b) { return app(constant(Tag::DotImp), a, b); }
inline Term dot_all(Term f) { return app(constant(Tag::DotAll), f); }
inline Term dot_n(Term a) { return app(constant(Tag::DotN), a); }
inline Term dot_t(Term a) { return app(constant(Tag::DotT), a); }
inline Term lim(Term f) { return app(constant(Tag::Lim), f); }
inline Term pair(Term a, Term b) { return app(constant(Tag::P), a, b); }

// derived dotted disjunction: a ∨. b := ¬.(¬.a ∧. ¬.b)
inline Term dot_or(Term a, Term b) { return dot_neg(dot_and(dot_neg(a), dot_neg(b))); }

}  // namespace fsw

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "fsw/lambda.hpp"
#include "fsw/reduce.hpp"
#include "fsw/term.hpp"

namespace fsw {

// Structured L_FS sentences with closed-term parameters. Or and Exists are
// derived: Or(A,B) = Not(And(Not A, Not B)), Exists = Not ForAll Not.
enum class SKind { Eq, IsN, TruthOf, LAt, Not, And, Imp, ForAll };

struct Sentence;
using Snt = std::shared_ptr<const Sentence>;

struct Sentence {
  SKind kind;
  Term a = nullptr, b = nullptr;  // Eq(a,b), IsN(a), TruthOf(a), LAt(a,b)
  Snt s1, s2;                     // Not(s1), And(s1,s2), Imp(s1,s2), ForAll(_, s1)
  std::string binder;             // ForAll
};

inline Snt mk_eq(Term a, Term b) { return std::make_shared<Sentence>(Sentence{SKind::Eq, a, b}); }
inline Snt mk_isn(Term a) { return std::make_shared<Sentence>(Sentence{SKind::IsN, a}); }
inline Snt mk_truth(Term a) { return std::make_shared<Sentence>(Sentence{SKind::TruthOf, a}); }
inline Snt mk_lat(Term cls, Term arg) { return std::make_shared<Sentence>(Sentence{SKind::LAt, cls, arg}); }
inline Snt mk_not(Snt s) {
  return std::make_shared<Sentence>(Sentence{SKind::Not, nullptr, nullptr, std::move(s)});
}
inline Snt mk_and(Snt x, Snt y) {
  return std::make_shared<Sentence>(Sentence{SKind::And, nullptr, nullptr, std::move(x), std::move(y)});
}
inline Snt mk_imp(Snt x, Snt y) {
  return std::make_shared<Sentence>(Sentence{SKind::Imp, nullptr, nullptr, std::move(x), std::move(y)});
}
inline Snt mk_forall(std::string binder, Snt body) {
  auto s = std::make_shared<Sentence>(Sentence{SKind::ForAll, nullptr, nullptr, std::move(body)});
  const_cast<Sentence*>(s.get())->binder = std::move(binder);
  return s;
}
inline Snt mk_or(Snt x, Snt y) { return mk_not(mk_and(mk_not(std::move(x)), mk_not(std::move(y)))); }
inline Snt mk_exists(std::string binder, Snt body) {
  return mk_not(mk_forall(std::move(binder), mk_not(std::move(body))));
}

// ---- coding: Sentence -> Term ----
// Bound variables are compiled away by bracket abstraction at encode time.
inline Term encode_open(const Snt& s) {
  switch (s->kind) {
    case SKind::Eq: return dot_eq(s->a, s->b);
    case SKind::IsN: return dot_n(s->a);
    case SKind::TruthOf: return dot_t(s->a);
    case SKind::LAt: return app(lim(s->a), s->b);
    case SKind::Not: return dot_neg(encode_open(s->s1));
    case SKind::And: return dot_and(encode_open(s->s1), encode_open(s->s2));
    case SKind::Imp: return dot_imp(encode_open(s->s1), encode_open(s->s2));
    case SKind::ForAll:
      return dot_all(lambda_abstract(var(s->binder), encode_open(s->s1)));
  }
  throw std::logic_error("unreachable");
}

inline Term encode(const Snt& s) {
  Term t = encode_open(s);
  if (!t->closed) throw std::invalid_argument("encode: open sentence rejected");
  return t;
}

// ---- decoding: Term -> Sentence ----
// Binders are reconstructed by applying the lambda term to a fresh marker.
namespace detail {

inline std::optional<Snt> decode_at(Term t, int depth, Fuel fuel) {
  if (depth > 256) return std::nullopt;
  NormResult r = reduce(t, fuel);
  if (!r.normal) return std::nullopt;
  Term n = r.term;
  if (n->tag != Tag::App) return std::nullopt;
  Term h1 = n->fun, x1 = n->arg;
  if (h1->tag == Tag::DotN) return mk_isn(x1);
  if (h1->tag == Tag::DotT) return mk_truth(x1);
  if (h1->tag == Tag::DotNeg) {
    auto inner = decode_at(x1, depth + 1, fuel);
    if (!inner) return std::nullopt;
    return mk_not(*inner);
  }
  if (h1->tag == Tag::DotAll) {
    std::string marker = "x" + std::to_string(depth);
    auto body = decode_at(app(x1, var(marker)), depth + 1, fuel);
    if (!body) return std::nullopt;
    return mk_forall(marker, *body);
  }
  if (h1->tag == Tag::App) {
    Term h2 = h1->fun, x2 = h1->arg;
    if (h2->tag == Tag::DotEq) return mk_eq(x2, x1);
    if (h2->tag == Tag::DotAnd) {
      auto l = decode_at(x2, depth + 1, fuel);
      auto rr = decode_at(x1, depth + 1, fuel);
      if (!l || !rr) return std::nullopt;
      return mk_and(*l, *rr);
    }
    if (h2->tag == Tag::DotImp) {
      auto l = decode_at(x2, depth + 1, fuel);
      auto rr = decode_at(x1, depth + 1, fuel);
      if (!l || !rr) return std::nullopt;
      return mk_imp(*l, *rr);
    }
    if (h2->tag == Tag::Lim) return mk_lat(x2, x1);
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Snt> decode(Term t, Fuel fuel = default_fuel()) {
  return detail::decode_at(t, 0, fuel);
}

// ---- negation normal form ----
// Not applies only to atoms; Imp(A,B) is rewritten as Or(Not A, B).
enum class NKind { Lit, And, Or, All, Ex };
enum class AtomKind { Eq, IsN, TruthOf, LAt };

struct Nnf;
using NnfP = std::shared_ptr<const Nnf>;

struct Nnf {
  NKind kind;
  AtomKind atom = AtomKind::Eq;
  bool pos = true;
  Term a = nullptr, b = nullptr;
  NnfP n1, n2;
  std::string binder;
};

inline NnfP nlit(AtomKind k, bool pos, Term a, Term b = nullptr) {
  return std::make_shared<Nnf>(Nnf{NKind::Lit, k, pos, a, b});
}
inline NnfP nand_(NnfP x, NnfP y) {
  return std::make_shared<Nnf>(Nnf{NKind::And, AtomKind::Eq, true, nullptr, nullptr, std::move(x), std::move(y)});
}
inline NnfP nor_(NnfP x, NnfP y) {
  return std::make_shared<Nnf>(Nnf{NKind::Or, AtomKind::Eq, true, nullptr, nullptr, std::move(x), std::move(y)});
}
inline NnfP nall(std::string v, NnfP body) {
  auto n = std::make_shared<Nnf>(Nnf{NKind::All, AtomKind::Eq, true, nullptr, nullptr, std::move(body)});
  const_cast<Nnf*>(n.get())->binder = std::move(v);
  return n;
}
inline NnfP nex(std::string v, NnfP body) {
  auto n = std::make_shared<Nnf>(Nnf{NKind::Ex, AtomKind::Eq, true, nullptr, nullptr, std::move(body)});
  const_cast<Nnf*>(n.get())->binder = std::move(v);
  return n;
}

inline NnfP nnf(const Snt& s);

inline NnfP nnf_neg(const Snt& s) {
  switch (s->kind) {
    case SKind::Eq: return nlit(AtomKind::Eq, false, s->a, s->b);
    case SKind::IsN: return nlit(AtomKind::IsN, false, s->a);
    case SKind::TruthOf: return nlit(AtomKind::TruthOf, false, s->a);
    case SKind::LAt: return nlit(AtomKind::LAt, false, s->a, s->b);
    case SKind::Not: return nnf(s->s1);
    case SKind::And: return nor_(nnf_neg(s->s1), nnf_neg(s->s2));
    case SKind::Imp: return nand_(nnf(s->s1), nnf_neg(s->s2));
    case SKind::ForAll: return nex(s->binder, nnf_neg(s->s1));
  }
  throw std::logic_error("unreachable");
}

inline NnfP nnf(const Snt& s) {
  switch (s->kind) {
    case SKind::Eq: return nlit(AtomKind::Eq, true, s->a, s->b);
    case SKind::IsN: return nlit(AtomKind::IsN, true, s->a);
    case SKind::TruthOf: return nlit(AtomKind::TruthOf, true, s->a);
    case SKind::LAt: return nlit(AtomKind::LAt, true, s->a, s->b);
    case SKind::Not: return nnf_neg(s->s1);
    case SKind::And: return nand_(nnf(s->s1), nnf(s->s2));
    case SKind::Imp: return nor_(nnf_neg(s->s1), nnf(s->s2));
    case SKind::ForAll: return nall(s->binder, nnf(s->s1));
  }
  throw std::logic_error("unreachable");
}

// Code of an NNF sentence, using the derived forms for Or and Exists.
inline Term encode_nnf_open(const NnfP& n) {
  switch (n->kind) {
    case NKind::Lit: {
      Term atom;
      switch (n->atom) {
        case AtomKind::Eq: atom = dot_eq(n->a, n->b); break;
        case AtomKind::IsN: atom = dot_n(n->a); break;
        case AtomKind::TruthOf: atom = dot_t(n->a); break;
        case AtomKind::LAt: atom = app(lim(n->a), n->b); break;
      }
      return n->pos ? atom : dot_neg(atom);
    }
    case NKind::And: return dot_and(encode_nnf_open(n->n1), encode_nnf_open(n->n2));
    case NKind::Or: return dot_or(encode_nnf_open(n->n1), encode_nnf_open(n->n2));
    case NKind::All: return dot_all(lambda_abstract(var(n->binder), encode_nnf_open(n->n1)));
    case NKind::Ex:
      return dot_neg(dot_all(lambda_abstract(var(n->binder), dot_neg(encode_nnf_open(n->n1)))));
  }
  throw std::logic_error("unreachable");
}

// Sentence view of an NNF (uses the derived constructors), for re-encoding.
inline Snt nnf_to_sentence(const NnfP& n) {
  switch (n->kind) {
    case NKind::Lit: {
      Snt atom;
      switch (n->atom) {
        case AtomKind::Eq: atom = mk_eq(n->a, n->b); break;
        case AtomKind::IsN: atom = mk_isn(n->a); break;
        case AtomKind::TruthOf: atom = mk_truth(n->a); break;
        case AtomKind::LAt: atom = mk_lat(n->a, n->b); break;
      }
      return n->pos ? atom : mk_not(atom);
    }
    case NKind::And: return mk_and(nnf_to_sentence(n->n1), nnf_to_sentence(n->n2));
    case NKind::Or: return mk_or(nnf_to_sentence(n->n1), nnf_to_sentence(n->n2));
    case NKind::All: return mk_forall(n->binder, nnf_to_sentence(n->n1));
    case NKind::Ex: return mk_exists(n->binder, nnf_to_sentence(n->n1));
  }
  throw std::logic_error("unreachable");
}

// NNF negation (De Morgan dual), directly on NNF values.
inline NnfP nnf_negate(const NnfP& n) {
  switch (n->kind) {
    case NKind::Lit: {
      auto m = std::make_shared<Nnf>(*n);
      m->pos = !m->pos;
      return m;
    }
    case NKind::And: return nor_(nnf_negate(n->n1), nnf_negate(n->n2));
    case NKind::Or: return nand_(nnf_negate(n->n1), nnf_negate(n->n2));
    case NKind::All: return nex(n->binder, nnf_negate(n->n1));
    case NKind::Ex: return nall(n->binder, nnf_negate(n->n1));
  }
  throw std::logic_error("unreachable");
}

// Structural sentence equality up to bound-variable renaming: codes coincide.
inline bool alpha_equal(const Snt& x, const Snt& y) {
  return encode_open(x) == encode_open(y);
}

// Unique-decomposition check on a pair of closed codes.
inline Verdict ug_check(Term a, Term b, Fuel fuel = default_fuel()) {
  return beta_equal(a, b, fuel);
}

}  // namespace fsw

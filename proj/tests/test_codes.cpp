#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "fsw/enumerate.hpp"
#include "fsw/sentence.hpp"

using namespace fsw;

namespace {

Term C(Tag t) { return constant(t); }

// random closed quantifier-free sentence over four propositional letters
Snt random_prop_sentence(std::mt19937& rng, const std::vector<Snt>& atoms, int depth) {
  if (depth == 0) return atoms[std::uniform_int_distribution<size_t>(0, atoms.size() - 1)(rng)];
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return mk_not(random_prop_sentence(rng, atoms, depth - 1));
    case 1:
      return mk_and(random_prop_sentence(rng, atoms, depth - 1),
                    random_prop_sentence(rng, atoms, depth - 1));
    case 2:
      return mk_imp(random_prop_sentence(rng, atoms, depth - 1),
                    random_prop_sentence(rng, atoms, depth - 1));
    case 3:
      return mk_or(random_prop_sentence(rng, atoms, depth - 1),
                   random_prop_sentence(rng, atoms, depth - 1));
    default:
      return atoms[std::uniform_int_distribution<size_t>(0, atoms.size() - 1)(rng)];
  }
}

bool eval_classical(const Snt& s, const std::map<Term, bool>& env) {
  switch (s->kind) {
    case SKind::TruthOf: return env.at(s->a);
    case SKind::Not: return !eval_classical(s->s1, env);
    case SKind::And: return eval_classical(s->s1, env) && eval_classical(s->s2, env);
    case SKind::Imp: return !eval_classical(s->s1, env) || eval_classical(s->s2, env);
    default: throw std::logic_error("unexpected kind in propositional eval");
  }
}

bool eval_classical_nnf(const NnfP& n, const std::map<Term, bool>& env) {
  switch (n->kind) {
    case NKind::Lit: {
      bool v = env.at(n->a);
      return n->pos ? v : !v;
    }
    case NKind::And: return eval_classical_nnf(n->n1, env) && eval_classical_nnf(n->n2, env);
    case NKind::Or: return eval_classical_nnf(n->n1, env) || eval_classical_nnf(n->n2, env);
    default: throw std::logic_error("unexpected kind");
  }
}

// random closed sentence with binders, depth-bounded
Snt random_sentence(std::mt19937& rng, std::vector<std::string>& scope, int depth) {
  auto rnd_term = [&]() -> Term {
    Term t = constant(static_cast<Tag>(std::uniform_int_distribution<int>(0, kNumConstants - 1)(rng)));
    if (!scope.empty() && std::uniform_int_distribution<int>(0, 1)(rng) == 0)
      t = app(t, var(scope[std::uniform_int_distribution<size_t>(0, scope.size() - 1)(rng)]));
    return t;
  };
  if (depth == 0) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0: return mk_eq(rnd_term(), rnd_term());
      case 1: return mk_isn(rnd_term());
      case 2: return mk_truth(rnd_term());
      default: return mk_lat(rnd_term(), rnd_term());
    }
  }
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return mk_not(random_sentence(rng, scope, depth - 1));
    case 1:
      return mk_and(random_sentence(rng, scope, depth - 1), random_sentence(rng, scope, depth - 1));
    case 2:
      return mk_imp(random_sentence(rng, scope, depth - 1), random_sentence(rng, scope, depth - 1));
    default: {
      std::string v = "b" + std::to_string(scope.size());
      scope.push_back(v);
      Snt body = random_sentence(rng, scope, depth - 1);
      scope.pop_back();
      return mk_forall(v, body);
    }
  }
}

}  // namespace

TEST_CASE("encode: structural map onto dotted constructors") {
  REQUIRE(encode(mk_eq(numeral(0), numeral(0))) == dot_eq(numeral(0), numeral(0)));
  Term x = var("x");
  REQUIRE(encode(mk_forall("x", mk_eq(x, x))) == dot_all(lambda_abstract(x, dot_eq(x, x))));
  REQUIRE(encode(mk_not(mk_isn(C(Tag::K)))) == dot_neg(dot_n(C(Tag::K))));
  REQUIRE(encode(mk_lat(C(Tag::DotN), numeral(2))) == app(lim(C(Tag::DotN)), numeral(2)));
  REQUIRE_THROWS_AS(encode(mk_eq(var("free"), numeral(0))), std::invalid_argument);
}

TEST_CASE("decode: roundtrip, non-codes, arity violations") {
  std::mt19937 rng(42);
  int done = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> scope;
    Snt s = random_sentence(rng, scope, 4);
    Term code = encode(s);
    auto back = decode(code);
    REQUIRE(back.has_value());
    REQUIRE(alpha_equal(*back, s));
    ++done;
  }
  REQUIRE(done == 300);
  REQUIRE(!decode(C(Tag::K)).has_value());
  REQUIRE(!decode(app(C(Tag::DotAnd), var("a"))).has_value());  // arity 2 required
  REQUIRE(!decode(app(C(Tag::DotEq), var("a"))).has_value());
}

TEST_CASE("decode reconstructs binders via fresh markers") {
  Term x = var("x");
  Snt s = mk_forall("x", mk_imp(mk_isn(x), mk_eq(x, x)));
  auto back = decode(encode(s));
  REQUIRE(back.has_value());
  REQUIRE((*back)->kind == SKind::ForAll);
  REQUIRE(alpha_equal(*back, s));
}

TEST_CASE("nnf: De Morgan, involution, quantifier duality, idempotence") {
  Snt A = mk_truth(C(Tag::K));
  Snt B = mk_truth(C(Tag::S));
  // Not(And(A,B)) -> Or(nnf(Not A), nnf(Not B))
  NnfP n1 = nnf(mk_not(mk_and(A, B)));
  REQUIRE(n1->kind == NKind::Or);
  REQUIRE(n1->n1->kind == NKind::Lit);
  REQUIRE(!n1->n1->pos);
  // Not(Not(A)) -> nnf(A)
  NnfP n2 = nnf(mk_not(mk_not(A)));
  REQUIRE(n2->kind == NKind::Lit);
  REQUIRE(n2->pos);
  // Not(ForAll(x,A)) -> Exists(x, nnf(Not A))
  Term x = var("x");
  NnfP n3 = nnf(mk_not(mk_forall("x", mk_isn(x))));
  REQUIRE(n3->kind == NKind::Ex);
  REQUIRE(n3->n1->kind == NKind::Lit);
  REQUIRE(!n3->n1->pos);
  // Imp rewritten as Or(Not A, B)
  NnfP n4 = nnf(mk_imp(A, B));
  REQUIRE(n4->kind == NKind::Or);
  // idempotence: nnf(nnf(A)) = nnf(A), via the sentence view
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> scope;
    Snt s = random_sentence(rng, scope, 4);
    NnfP once = nnf(s);
    NnfP twice = nnf(nnf_to_sentence(once));
    REQUIRE(encode_nnf_open(once) == encode_nnf_open(twice));
  }
}

TEST_CASE("nnf preserves classical truth (exhaustive over <= 4 atoms)") {
  std::vector<Term> letters = {C(Tag::K), C(Tag::S), C(Tag::P), C(Tag::P0)};
  std::vector<Snt> atoms;
  for (Term t : letters) atoms.push_back(mk_truth(t));
  std::mt19937 rng(99);
  for (int i = 0; i < 400; ++i) {
    Snt s = random_prop_sentence(rng, atoms, 4);
    NnfP n = nnf(s);
    for (int mask = 0; mask < 16; ++mask) {
      std::map<Term, bool> env;
      for (int j = 0; j < 4; ++j) env[letters[j]] = (mask >> j) & 1;
      REQUIRE(eval_classical(s, env) == eval_classical_nnf(n, env));
    }
  }
}

TEST_CASE("nnf_negate is the De Morgan dual") {
  std::vector<Term> letters = {C(Tag::K), C(Tag::S)};
  std::vector<Snt> atoms = {mk_truth(letters[0]), mk_truth(letters[1])};
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    Snt s = random_prop_sentence(rng, atoms, 3);
    NnfP n = nnf(s);
    NnfP neg = nnf_negate(n);
    for (int mask = 0; mask < 4; ++mask) {
      std::map<Term, bool> env;
      for (int j = 0; j < 2; ++j) env[letters[j]] = (mask >> j) & 1;
      REQUIRE(eval_classical_nnf(n, env) == !eval_classical_nnf(neg, env));
    }
    // double negation is the identity on codes
    REQUIRE(encode_nnf_open(nnf_negate(neg)) == encode_nnf_open(n));
  }
}

TEST_CASE("ug_check: free constructors decompose uniquely") {
  Term a = var("a");
  REQUIRE(ug_check(app(C(Tag::DotAnd), a), app(C(Tag::DotNeg), a)) == Verdict::Distinct);
  REQUIRE(ug_check(app(C(Tag::DotAnd), a), app(C(Tag::DotAnd), a)) == Verdict::Equal);
  Term omega = app(lambda_abstract(var("x"), app(var("x"), var("x"))),
                   lambda_abstract(var("x"), app(var("x"), var("x"))));
  REQUIRE(ug_check(omega, a, Fuel{50}) == Verdict::Unknown);
}

TEST_CASE("ug audit: no collisions over the depth-2 universe") {
  auto u = enumerate_universe(1);
  std::vector<Tag> ctors = {Tag::DotEq, Tag::DotNeg, Tag::DotAnd, Tag::DotImp,
                            Tag::DotAll, Tag::DotN, Tag::DotT, Tag::Lim};
  // normal form of a dotted application determines constructor and arguments
  std::map<Term, std::tuple<Tag, Term, Term>> seen;
  int collisions = 0;
  for (Tag c : ctors) {
    bool binary = (c == Tag::DotEq || c == Tag::DotAnd || c == Tag::DotImp || c == Tag::Lim);
    for (Term x : u) {
      if (binary) {
        for (size_t j = 0; j < u.size(); j += 17) {
          Term y = u[j];
          auto r = reduce(app(constant(c), x, y));
          if (!r.normal) continue;
          auto key = std::make_tuple(c, reduce(x).term, reduce(y).term);
          auto it = seen.find(r.term);
          if (it != seen.end() && it->second != key) ++collisions;
          seen.emplace(r.term, key);
        }
      } else {
        auto r = reduce(app(constant(c), x));
        if (!r.normal) continue;
        auto key = std::make_tuple(c, reduce(x).term, nullptr);
        auto it = seen.find(r.term);
        if (it != seen.end() && it->second != key) ++collisions;
        seen.emplace(r.term, key);
      }
    }
  }
  REQUIRE(collisions == 0);
}

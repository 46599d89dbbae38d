#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fsw/lambda.hpp"
#include "fsw/sequent.hpp"
#include "fsw/vfmodel.hpp"

using namespace fsw;

namespace {

Term C(Tag t) { return constant(t); }

SequentAtlas& atlas0() {
  static SequentAtlas* a = [] {
    SeqConfig cfg;
    cfg.universe_depth = 0;
    cfg.max_u = 2;
    cfg.max_t = 3;
    cfg.max_len = 6;
    return new SequentAtlas(cfg);
  }();
  return *a;
}

Term identity_class() {
  Term x = var("x");
  return lambda_abstract(x, dot_eq(x, x));
}

Term eq00() { return dot_eq(numeral(0), numeral(0)); }

// single-node (Lit) derivation
Deriv lit_node(SequentAtlas& a, std::vector<Term> concl, Term principal,
               Rank r = {0, 0, 0}) {
  std::vector<Term> canon;
  for (Term t : concl) canon.push_back(a.nnf_code(t));
  return mk_deriv(Sequent::of(std::move(canon)), r, Rule::Lit, a.nnf_code(principal));
}

}  // namespace

TEST_CASE("atlas: literal sequents derive at the bottom cell") {
  SequentAtlas& a = atlas0();
  Term c = a.nnf_code(eq00());
  REQUIRE(a.derivable(Sequent::of({c}), Rank{0, 0, 0}));
  Term bad = a.nnf_code(dot_eq(numeral(0), numeral(1)));
  REQUIRE(!a.derivable(Sequent::of({bad}), Rank{2, 3, 6}));
  // its negation is a true literal
  Term nbad = a.neg_nnf_code(dot_eq(numeral(0), numeral(1)));
  REQUIRE(a.derivable(Sequent::of({nbad}), Rank{0, 0, 0}));
}

TEST_CASE("atlas: the empty sequent is underivable in every cell") {
  SequentAtlas& a = atlas0();
  for (int u = 0; u <= 2; ++u)
    for (int t = 0; t <= 3; ++t)
      for (int l = 0; l <= 6; ++l) REQUIRE(!a.derivable(Sequent{}, Rank{u, t, l}));
}

TEST_CASE("atlas: (Log) closes T-against-negT") {
  SequentAtlas& a = atlas0();
  Term ta = a.nnf_code(dot_t(C(Tag::K)));
  Term nta = a.neg_nnf_code(dot_t(C(Tag::K)));
  REQUIRE(a.derivable(Sequent::of({ta, nta}), Rank{0, 0, 0}));
  REQUIRE(!a.derivable(Sequent::of({ta}), Rank{2, 3, 6}));
  REQUIRE(!a.derivable(Sequent::of({nta}), Rank{2, 3, 6}));
}

TEST_CASE("atlas: universe sequents enter at u-rank 1") {
  SequentAtlas& a = atlas0();
  Term cls = identity_class();
  Term lcode = a.nnf_code(app(lim(cls), eq00()));
  REQUIRE(lcode != nullptr);
  REQUIRE(!a.derivable(Sequent::of({lcode}), Rank{0, 3, 6}));
  REQUIRE(a.derivable(Sequent::of({lcode}), Rank{1, 0, 0}));
  // the negated universe literal for a false inner code
  Term nl = a.neg_nnf_code(app(lim(cls), dot_eq(numeral(0), numeral(1))));
  REQUIRE(a.derivable(Sequent::of({nl}), Rank{1, 0, 0}));
  // but not both
  Term pl = a.nnf_code(app(lim(cls), dot_eq(numeral(0), numeral(1))));
  REQUIRE(!a.derivable(Sequent::of({pl}), Rank{2, 3, 6}));
}

TEST_CASE("atlas: weakening holds on sampled pairs") {
  SequentAtlas& a = atlas0();
  std::vector<Term> pool = {
      a.nnf_code(eq00()),
      a.nnf_code(dot_n(numeral(1))),
      a.neg_nnf_code(dot_n(C(Tag::K))),
      a.nnf_code(dot_and(eq00(), dot_n(numeral(0)))),
      a.nnf_code(dot_or(dot_eq(numeral(0), numeral(1)), dot_n(numeral(0)))),
      a.nnf_code(app(lim(identity_class()), eq00())),
  };
  std::vector<Term> extras = {a.nnf_code(dot_t(C(Tag::K))),
                              a.neg_nnf_code(dot_t(C(Tag::S))),
                              a.nnf_code(dot_eq(numeral(0), numeral(1)))};
  std::mt19937 rng(77);
  for (int i = 0; i < 200; ++i) {
    Term g = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
    Rank r{std::uniform_int_distribution<int>(0, 2)(rng),
           std::uniform_int_distribution<int>(0, 3)(rng),
           std::uniform_int_distribution<int>(0, 6)(rng)};
    if (!a.derivable(Sequent::of({g}), r)) continue;
    Sequent bigger = Sequent::of({g, extras[i % extras.size()]});
    Rank higher{std::min(2, r.u + i % 2), std::min(3, r.t + 1), std::min(6, r.len + 1)};
    REQUIRE(a.derivable(bigger, higher));
    REQUIRE(a.derivable(Sequent::of({g}), higher));
  }
}

TEST_CASE("atlas: monotone in every rank coordinate over a pool") {
  SequentAtlas& a = atlas0();
  std::vector<Term> pool = {
      a.nnf_code(eq00()), a.nnf_code(dot_and(eq00(), dot_n(numeral(0)))),
      a.nnf_code(dot_t(eq00())), a.nnf_code(app(lim(identity_class()), eq00()))};
  for (Term p : pool) {
    Sequent s = Sequent::of({p});
    for (int u = 0; u <= 2; ++u)
      for (int t = 0; t <= 3; ++t)
        for (int l = 0; l <= 6; ++l) {
          if (!a.derivable(s, Rank{u, t, l})) continue;
          if (u < 2) REQUIRE(a.derivable(s, Rank{u + 1, t, l}));
          if (t < 3) REQUIRE(a.derivable(s, Rank{u, t + 1, l}));
          if (l < 6) REQUIRE(a.derivable(s, Rank{u, t, l + 1}));
        }
  }
}

TEST_CASE("check: single-node axioms") {
  SequentAtlas& a = atlas0();
  Deriv d = lit_node(a, {eq00()}, eq00(), Rank{1, 2, 3});
  REQUIRE(check(d, a).outcome == CheckOutcome::Pass);
  // (Log)
  Term ta = a.nnf_code(dot_t(C(Tag::K)));
  Term nta = a.neg_nnf_code(dot_t(C(Tag::K)));
  Deriv dl = mk_deriv(Sequent::of({ta, nta}), Rank{0, 0, 0}, Rule::Log, ta);
  REQUIRE(check(dl, a).outcome == CheckOutcome::Pass);
  // a false literal is rejected
  Deriv bad = lit_node(a, {dot_eq(numeral(0), numeral(1))}, dot_eq(numeral(0), numeral(1)));
  REQUIRE(check(bad, a).outcome == CheckOutcome::Fail);
}

TEST_CASE("check: (T) requires an empty premise context") {
  SequentAtlas& a = atlas0();
  Term A = eq00();
  Term tA = a.nnf_code(dot_t(A));
  Deriv good_prem = lit_node(a, {A}, A);
  Deriv good = mk_deriv(Sequent::of({tA}), Rank{0, 1, 1}, Rule::TIntro, tA, {good_prem});
  REQUIRE(check(good, a).outcome == CheckOutcome::Pass);
  Deriv fat_prem = lit_node(a, {A, dot_n(numeral(0))}, A);
  Deriv bad = mk_deriv(Sequent::of({tA}), Rank{0, 1, 1}, Rule::TIntro, tA, {fat_prem});
  auto rep = check(bad, a);
  REQUIRE(rep.outcome == CheckOutcome::Fail);
  REQUIRE(rep.message.find("empty") != std::string::npos);
  // (T) must lower the T-rank
  Deriv bad2 = mk_deriv(Sequent::of({tA}), Rank{0, 0, 1}, Rule::TIntro, tA, {good_prem});
  REQUIRE(check(bad2, a).outcome == CheckOutcome::Fail);
}

TEST_CASE("check: (U) with certificates; (Weak) lowers u") {
  SequentAtlas& a = atlas0();
  Term cls = identity_class();
  Term L = a.nnf_code(app(lim(cls), eq00()));
  Deriv prem = lit_node(a, {eq00()}, eq00());
  Deriv u = mk_deriv(Sequent::of({L}), Rank{1, 0, 0}, Rule::UIntro, L, {prem}, nullptr,
                     SideCert{cls});
  REQUIRE(check(u, a).outcome == CheckOutcome::Pass);
  // missing certificate
  Deriv nou = mk_deriv(Sequent::of({L}), Rank{1, 0, 0}, Rule::UIntro, L, {prem});
  REQUIRE(check(nou, a).outcome == CheckOutcome::Fail);
  // u-rank 0 cannot host (U)
  Deriv u0 = mk_deriv(Sequent::of({L}), Rank{0, 0, 0}, Rule::UIntro, L, {prem}, nullptr,
                      SideCert{cls});
  REQUIRE(check(u0, a).outcome == CheckOutcome::Fail);
  // (negU) with an underivable inner code
  Term nl = a.neg_nnf_code(app(lim(cls), dot_eq(numeral(0), numeral(1))));
  Deriv nu = mk_deriv(Sequent::of({nl}), Rank{1, 0, 0}, Rule::NegUIntro, nl, {}, nullptr,
                      SideCert{cls});
  REQUIRE(check(nu, a).outcome == CheckOutcome::Pass);
  // (Weak)
  Deriv w = mk_deriv(Sequent::of({L}), Rank{2, 0, 0}, Rule::Weak, nullptr, {u});
  REQUIRE(check(w, a).outcome == CheckOutcome::Pass);
  Deriv wbad = mk_deriv(Sequent::of({L}), Rank{1, 0, 0}, Rule::Weak, nullptr, {u});
  REQUIRE(check(wbad, a).outcome == CheckOutcome::Fail);
}

TEST_CASE("complexity of negation normal sentences") {
  REQUIRE(complexity(nnf(mk_eq(numeral(0), numeral(0)))) == 0);
  Term x = var("x");
  REQUIRE(complexity(nnf(mk_forall("x", mk_eq(x, x)))) == 1);
  Snt P = mk_eq(numeral(0), numeral(0));
  REQUIRE(complexity(nnf(mk_and(P, mk_forall("x", P)))) == 2);
  REQUIRE(complexity(nnf(mk_imp(P, P))) == 1);  // rewritten as an Or
}

TEST_CASE("cut: (T) against a passive negated T-atom") {
  SequentAtlas& a = atlas0();
  Term A = eq00();
  Term tA = a.nnf_code(dot_t(A));
  Term ntA = a.neg_nnf_code(dot_t(A));
  Term B = dot_eq(numeral(1), numeral(1));
  Deriv d1 = mk_deriv(Sequent::of({tA}), Rank{0, 1, 1}, Rule::TIntro, tA,
                      {lit_node(a, {A}, A)});
  Deriv d2 = lit_node(a, {dot_t(A), B}, B);  // abused: build {~T(A.), B} directly
  d2 = mk_deriv(Sequent::of({ntA, a.nnf_code(B)}), Rank{0, 0, 0}, Rule::Lit,
                a.nnf_code(B));
  Deriv out = cut_eliminate(d1, d2, dot_t(A), a);
  REQUIRE(out->conclusion == Sequent::of({a.nnf_code(B)}));
  REQUIRE(check(out, a).outcome == CheckOutcome::Pass);
  REQUIRE(out->rank.u <= std::max(d1->rank.u, d2->rank.u));
}

TEST_CASE("cut: literal whose negation sits in the other context") {
  SequentAtlas& a = atlas0();
  Term P = eq00();
  Term nP = a.neg_nnf_code(P);
  Term B = dot_n(numeral(0));
  Deriv d1 = lit_node(a, {P, dot_eq(C(Tag::K), C(Tag::K))}, P);
  Deriv d2 = mk_deriv(Sequent::of({nP, a.nnf_code(B)}), Rank{0, 0, 0}, Rule::Lit,
                      a.nnf_code(B));
  Deriv out = cut_eliminate(d1, d2, P, a);
  REQUIRE(out->conclusion ==
          Sequent::of({a.nnf_code(dot_eq(C(Tag::K), C(Tag::K))), a.nnf_code(B)}));
  REQUIRE(check(out, a).outcome == CheckOutcome::Pass);
}

TEST_CASE("cut: conjunction against disjunction, both principal") {
  SequentAtlas& a = atlas0();
  Term A = eq00(), B = dot_n(numeral(0));
  Term andc = a.nnf_code(dot_and(A, B));
  NnfP andv = a.view(andc);
  Term ac = a.code_of(andv->n1), bc = a.code_of(andv->n2);
  Term orc = a.code_of(nnf_negate(andv));
  NnfP orv = a.view(orc);
  Term nac = a.code_of(orv->n1);
  Term Cc = a.nnf_code(dot_eq(C(Tag::S), C(Tag::S)));
  // d1: |- {A and B} via (And) from Lit premises
  Deriv p0 = mk_deriv(Sequent::of({andc, ac}), Rank{0, 0, 0}, Rule::Lit, ac);
  Deriv p1 = mk_deriv(Sequent::of({andc, bc}), Rank{0, 0, 0}, Rule::Lit, bc);
  Deriv d1 = mk_deriv(Sequent::of({andc}), Rank{0, 0, 1}, Rule::And, andc, {p0, p1});
  REQUIRE(check(d1, a).outcome == CheckOutcome::Pass);
  // d2: |- {~A or ~B, C} via (OrL) whose premise closes on C
  Deriv q = mk_deriv(Sequent::of({orc, nac, Cc}), Rank{0, 0, 0}, Rule::Lit, Cc);
  Deriv d2 = mk_deriv(Sequent::of({orc, Cc}), Rank{0, 0, 1}, Rule::OrL, orc, {q});
  REQUIRE(check(d2, a).outcome == CheckOutcome::Pass);
  Deriv out = cut_eliminate(d1, d2, andc, a);
  REQUIRE(out->conclusion == Sequent::of({Cc}));
  REQUIRE(check(out, a).outcome == CheckOutcome::Pass);
  REQUIRE(out->rank.u <= std::max(d1->rank.u, d2->rank.u));
}

TEST_CASE("vfu model: basic truth, universes, reflection clauses") {
  SequentAtlas& a = atlas0();
  VfuModel m(a);
  REQUIRE(m.vf_true(eq00()));
  REQUIRE(!m.vf_true(dot_eq(numeral(0), numeral(1))));
  Term cls = identity_class();
  REQUIRE(m.vf_universe(lim(cls)));
  REQUIRE(!m.vf_universe(C(Tag::K)));
  // (Lim): if |- ab then |- L_a(ab)
  Term ab = app(cls, numeral(2));
  REQUIRE(m.vf_true(ab));
  REQUIRE(m.vf_true(app(lim(cls), ab)));
  // (U-Cons): never both
  Term b = eq00();
  REQUIRE(!(m.vf_true(app(lim(cls), b)) && m.vf_true(app(lim(cls), dot_neg(b)))));
  // (U-Self)
  REQUIRE(m.vf_true(app(lim(cls), b)) == m.vf_true(app(lim(cls), dot_t(b))));
  // (U-True): |- L_a(b) -> |- b
  REQUIRE(m.vf_true(b));
}

TEST_CASE("vf axioms: T-Elem, T-Imp, T-Out, T-Self, T-Log") {
  SequentAtlas& a = atlas0();
  VfuModel m(a);
  VfAxiomChecker ch(m);
  REQUIRE(ch.t_elem(nnf(mk_eq(numeral(0), numeral(0)))).pass);
  REQUIRE(ch.t_elem(nnf(mk_not(mk_isn(C(Tag::K))))).pass);
  Snt A = mk_eq(numeral(0), numeral(0));
  Snt B = mk_isn(numeral(0));
  REQUIRE(ch.t_imp(A, B).pass);
  REQUIRE(ch.t_out(mk_and(A, B)).pass);
  REQUIRE(ch.t_out(mk_truth(encode(A))).pass);
  REQUIRE(ch.t_log(A, B).pass);
  REQUIRE(ch.t_log(mk_truth(C(Tag::K)), B).pass);  // holds even for ungrounded parts
  REQUIRE(ch.t_cons(eq00()).pass);
  REQUIRE(ch.t_self(eq00()).pass);
  REQUIRE(ch.t_self(dot_eq(numeral(0), numeral(1))).pass);
}

TEST_CASE("the inconsistent split schema fails on an ungrounded instance") {
  SequentAtlas& a = atlas0();
  VfuModel m(a);
  // excluded middle inside T is derivable even for the ungrounded T(k)
  Snt A = mk_truth(C(Tag::K));
  REQUIRE(m.vf_true_nnf(nnf(mk_or(A, mk_not(A)))));
  // but the split T(A.) or T(~.A.) is NOT: VF would be inconsistent with it
  REQUIRE(!m.vf_true(encode(A)));
  REQUIRE(!m.vf_true(dot_neg(encode(A))));
}

TEST_CASE("T-positive transparency on an enumerated family") {
  SequentAtlas& a = atlas0();
  VfuModel m(a);
  // T-positive sentences: truth of the code coincides with model truth
  std::vector<Snt> family = {
      mk_eq(numeral(0), numeral(0)),
      mk_isn(numeral(2)),
      mk_truth(encode(mk_eq(numeral(0), numeral(0)))),
      mk_and(mk_eq(numeral(0), numeral(0)), mk_truth(encode(mk_isn(numeral(0))))),
      mk_or(mk_eq(numeral(0), numeral(1)), mk_isn(numeral(1))),
      mk_eq(numeral(0), numeral(1)),  // false literal: both sides false
      mk_forall("x", mk_or(mk_isn(var("x")), mk_not(mk_isn(var("x"))))),
  };
  for (const Snt& s : family) {
    NnfP n = nnf(s);
    INFO(to_sexpr(encode(s)));
    REQUIRE(m.vf_true_nnf(n) == m.model_eval(n));
  }
}

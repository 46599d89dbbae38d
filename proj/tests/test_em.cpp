#include <catch2/catch_amalgamated.hpp>

#include "fsw/axioms.hpp"
#include "fsw/em.hpp"
#include "fsw/kripke.hpp"
#include "fsw/sexpr.hpp"

using namespace fsw;

namespace {

Term C(Tag t) { return constant(t); }

Tower& sk1() {
  static Tower* t = [] {
    ModelConfig cfg;
    cfg.universe_depth = 1;
    cfg.max_stages = 6;
    auto* tw = new Tower(cfg);
    tw->build();
    return tw;
  }();
  return *t;
}

// a tower tuned for one digraph: small base universe plus the relevant codes
Tower acc_tower(const Digraph& g, Term acc) {
  ModelConfig cfg;
  cfg.universe_depth = 0;
  cfg.max_stages = g.nodes + 4;
  cfg.fuel = Fuel{4000};
  for (int i = 0; i < g.nodes; ++i) {
    cfg.extra_domain.push_back(numeral(i));
    cfg.extra_domain.push_back(app(acc, numeral(i)));
  }
  Tower t(cfg);
  t.build();
  return t;
}

}  // namespace

TEST_CASE("translate: elementhood, names, homomorphism") {
  // x in nat |-> T(nat' x) with nat' = lam x. N. x
  EmF e = em_elem(em_term(var("a")), em_gen("nat"));
  Snt s = translate(e);
  REQUIRE(s->kind == SKind::TruthOf);
  Term natp = mk_generator("nat", {});
  REQUIRE(s->a == app(natp, var("a")));
  REQUIRE(beta_equal(app(natp, numeral(0)), dot_n(numeral(0))) == Verdict::Equal);
  // R'(f) = C(f)
  Snt c = translate(em_name(em_term(C(Tag::DotN))));
  REQUIRE(c->kind == SKind::ForAll);
  // homomorphism over And
  EmF both = em_and(e, em_isn(em_term(numeral(2))));
  Snt sb = translate(both);
  REQUIRE(sb->kind == SKind::And);
  REQUIRE(alpha_equal(sb->s1, s));
  // unknown generator rejected
  REQUIRE_THROWS_AS(mk_generator("frobnicate", {}), std::invalid_argument);
  REQUIRE_THROWS_AS(mk_generator("co", {}), std::invalid_argument);  // arity
}

TEST_CASE("generators are class-formers in the SK tower") {
  Tower& m = sk1();
  Term natp = mk_generator("nat", {});
  REQUIRE(m.is_class(natp));
  // co(nat') classifies k as member: k is not a numeral
  Term co_nat = mk_generator("co", {natp});
  REQUIRE(m.is_class(co_nat));
  REQUIRE(m.is_true(app(co_nat, C(Tag::K))));
  REQUIRE(!m.is_true(app(co_nat, numeral(3))));
  // int(a,a) extensionally equals a on the universe
  Term ii = mk_generator("int", {natp, natp});
  REQUIRE(m.is_class(ii));
  for (size_t i = 0; i < m.domain().size(); i += 13) {
    Term x = m.domain()[i];
    REQUIRE(m.is_true(app(ii, x)) == m.is_true(app(natp, x)));
  }
  // id classifies pairs with equal components
  Term idp = mk_generator("id", {});
  REQUIRE(m.is_true(app(idp, pair(C(Tag::K), C(Tag::K)))));
  REQUIRE(!m.is_true(app(idp, pair(C(Tag::K), C(Tag::S)))));
  REQUIRE(m.is_class(idp));
  // dom picks up first components of member pairs
  Term rel = mk_finite_class({pair(numeral(1), numeral(0))});
  Term domr = mk_generator("dom", {rel});
  REQUIRE(m.is_true(app(domr, numeral(1))));  // witness 0 is inside the finite domain
  REQUIRE(!m.is_true(app(domr, numeral(0))));
  // inv(a,f): x in inv iff fx in a
  Term invn = mk_generator("inv", {natp, C(Tag::PN)});
  REQUIRE(m.is_true(app(invn, app(C(Tag::SN), numeral(0)))));
  // KF join: u in j(x,f) iff u = (v,w), v in x, w in fv
  Term xs = mk_finite_class({numeral(0)});
  Term fv = lambda_abstract(var("_v"), mk_finite_class({numeral(1)}));
  Term j = mk_generator("join", {xs, fv});
  REQUIRE(m.is_true(app(j, pair(numeral(0), numeral(1)))));
  REQUIRE(!m.is_true(app(j, pair(numeral(1), numeral(1)))));
  REQUIRE(!m.is_true(app(j, numeral(0))));
}

TEST_CASE("oplus (KF flavor): disjoint sum behaviour and classhood") {
  Tower& m = sk1();
  Term natp = mk_generator("nat", {});
  Term co_nat = mk_generator("co", {natp});
  Term op = mk_oplus(natp, co_nat, GenFlavor::KF);
  // T((+)(u,v)(0,x)) iff T(u x)
  for (Term x : {numeral(0), numeral(2), C(Tag::K)}) {
    REQUIRE(m.is_true(app(op, pair(numeral(0), x))) == m.is_true(app(natp, x)));
    REQUIRE(m.is_true(app(op, pair(numeral(1), x))) == m.is_true(app(co_nat, x)));
  }
  // Lemma-level: oplus and acc of classes are classes
  REQUIRE(m.is_class(op));
  Term acc = mk_acc(natp, co_nat);
  REQUIRE(m.is_class(acc));
}

TEST_CASE("t unfolds to a dotted-forall code within fuel") {
  Term t = mk_t(C(Tag::DotN), C(Tag::DotT));
  Tower& m = sk1();
  Term c = m.canon(app(t, numeral(0)));
  REQUIRE(c != nullptr);
  REQUIRE(c->tag == Tag::App);
  REQUIRE(c->fun->tag == Tag::DotAll);
}

TEST_CASE("acc on a successor chain accepts every node") {
  Digraph g;
  g.nodes = 4;
  g.edges = {{0, 1}, {1, 2}, {2, 3}};
  Term a = g.node_class(), b = g.edge_class();
  Term acc = mk_acc(a, b);
  Tower m = acc_tower(g, acc);
  auto oracle = g.accessible_part();
  for (int i = 0; i < g.nodes; ++i) {
    INFO("node " << i);
    REQUIRE(oracle[i]);
    REQUIRE(m.is_true(app(acc, numeral(i))));
  }
}

TEST_CASE("acc with a loop pair rejects the looped node") {
  Digraph g;
  g.nodes = 2;
  g.edges = {{0, 0}, {0, 1}};
  auto oracle = g.accessible_part();
  REQUIRE(!oracle[0]);
  REQUIRE(!oracle[1]);
  Term acc = mk_acc(g.node_class(), g.edge_class());
  Tower m = acc_tower(g, acc);
  REQUIRE(!m.is_true(app(acc, numeral(0))));
  REQUIRE(!m.is_true(app(acc, numeral(1))));
}

TEST_CASE("acc matches the brute-force accessible part on mixed digraphs") {
  std::vector<Digraph> gs;
  gs.push_back({3, {{0, 1}, {1, 2}, {2, 0}}});          // 3-cycle: nothing accessible
  gs.push_back({3, {{0, 1}, {0, 2}, {1, 2}}});          // dag: everything
  gs.push_back({4, {{1, 1}, {1, 2}, {0, 3}}});          // self-loop poisons 1 and 2
  gs.push_back({1, {}});                                // isolated node
  for (auto& g : gs) {
    Term acc = mk_acc(g.node_class(), g.edge_class());
    Tower m = acc_tower(g, acc);
    auto oracle = g.accessible_part();
    for (int i = 0; i < g.nodes; ++i) {
      INFO("nodes " << g.nodes << " edges " << g.edges.size() << " node " << i);
      REQUIRE(m.is_true(app(acc, numeral(i))) == oracle[i]);
    }
  }
}

TEST_CASE("Closed' and predecessor closure hold elementwise") {
  Digraph g;
  g.nodes = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  Term a = g.node_class(), b = g.edge_class();
  Term acc = mk_acc(a, b);
  Tower m = acc_tower(g, acc);
  auto in_acc = [&](int i) { return m.is_true(app(acc, numeral(i))); };
  auto edge = [&](int y, int x) {
    for (auto& [p, q] : g.edges)
      if (p == y && q == x) return true;
    return false;
  };
  // Closed': if every b-predecessor of x is in acc, then x is
  for (int x = 0; x < g.nodes; ++x) {
    bool preds_in = true;
    for (int y = 0; y < g.nodes; ++y)
      if (edge(y, x) && !in_acc(y)) preds_in = false;
    if (preds_in) REQUIRE(in_acc(x));
  }
  // predecessor closure: acc members have their predecessors in acc
  for (int w = 0; w < g.nodes; ++w) {
    if (!in_acc(w)) continue;
    for (int y = 0; y < g.nodes; ++y)
      if (edge(y, w)) REQUIRE(in_acc(y));
  }
}

TEST_CASE("finite classes are classes; empty class has no members") {
  Tower& m = sk1();
  Term fc = mk_finite_class({numeral(0), numeral(2), C(Tag::K)});
  REQUIRE(m.is_class(fc));
  REQUIRE(m.is_true(app(fc, numeral(0))));
  REQUIRE(m.is_true(app(fc, C(Tag::K))));
  REQUIRE(!m.is_true(app(fc, numeral(1))));
  Term empty = mk_finite_class({});
  REQUIRE(m.is_class(empty));
  for (size_t i = 0; i < m.domain().size(); i += 37)
    REQUIRE(!m.is_true(app(empty, m.domain()[i])));
}

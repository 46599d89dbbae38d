#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsw/lambda.hpp"
#include "fsw/sentence.hpp"
#include "fsw/term.hpp"

namespace fsw {

// ---- generator terms --------------------------------------------------------

enum class GenFlavor { KF, VFU };

namespace detail {

// code of an existential: ex x. body := neg (all (lam x. neg body))
inline Term dot_ex(Term v, Term body) {
  return dot_neg(dot_all(lambda_abstract(v, dot_neg(body))));
}

inline Term fresh_var(const char* base, int i) {
  return var(std::string(base) + std::to_string(i));
}

}  // namespace detail

// Class-formers interpreting the set generators. The KF-style formers are
// dotted-formula lambdas grounded under Strong Kleene for class arguments;
// the VFU-style join is the explicit T-guarded form.
inline Term mk_generator(const std::string& name, const std::vector<Term>& args,
                         GenFlavor flavor = GenFlavor::KF) {
  auto need = [&](size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("generator " + name + " expects " + std::to_string(n) +
                                  " arguments, got " + std::to_string(args.size()));
  };
  Term x = var("_g_x"), y = var("_g_y"), v = var("_g_v"), w = var("_g_w");
  if (name == "nat") {
    need(0);
    return lambda_abstract(x, dot_n(x));
  }
  if (name == "id") {
    need(0);
    return lambda_abstract(x, detail::dot_ex(y, dot_eq(x, pair(y, y))));
  }
  if (name == "co") {
    need(1);
    return lambda_abstract(y, dot_neg(app(args[0], y)));
  }
  if (name == "int") {
    need(2);
    return lambda_abstract(x, dot_and(app(args[0], x), app(args[1], x)));
  }
  if (name == "dom") {
    need(1);
    return lambda_abstract(x, detail::dot_ex(y, app(args[0], pair(x, y))));
  }
  if (name == "inv") {
    need(2);
    return lambda_abstract(x, app(args[0], app(args[1], x)));
  }
  if (name == "join") {
    need(2);
    Term a = args[0], f = args[1];
    if (flavor == GenFlavor::KF) {
      return lambda_abstract(
          x, detail::dot_ex(
                 v, detail::dot_ex(w, dot_and(dot_eq(x, pair(v, w)),
                                              dot_and(app(a, v), app(app(f, v), w))))));
    }
    // VFU: lam z. code of "ex v,w. z = (v,w) and T(av) and T(fvw)"
    return lambda_abstract(
        x, detail::dot_ex(
               v, detail::dot_ex(w, dot_and(dot_eq(x, pair(v, w)),
                                            dot_and(dot_t(app(a, v)),
                                                    dot_t(app(app(f, v), w)))))));
  }
  throw std::invalid_argument("unknown generator " + name);
}

// disjoint sum of u and v: the dotted-formula form used with the SK tower
inline Term mk_oplus_comb_kf() {
  static Term comb = [] {
    Term u = var("_op_u"), v = var("_op_v"), z = var("_op_z");
    Term z0 = app(constant(Tag::P0), z), z1 = app(constant(Tag::P1), z);
    Term body = dot_or(dot_and(dot_eq(z0, constant(Tag::Zero)), app(u, z1)),
                       dot_and(dot_neg(dot_eq(z0, constant(Tag::Zero))), app(v, z1)));
    return lambda_abstract(u, lambda_abstract(v, lambda_abstract(z, body)));
  }();
  return comb;
}

// the definition-by-cases form used with the supervaluation model
inline Term mk_oplus_comb_vfu() {
  static Term comb = [] {
    Term u = var("_op_u"), v = var("_op_v"), x = var("_op_x");
    Term x0 = app(constant(Tag::P0), x), x1 = app(constant(Tag::P1), x);
    Term cases = app(constant(Tag::DN), app(u, x1), app(v, x1), x0, constant(Tag::Zero));
    Term body = dot_imp(dot_n(x0), dot_t(cases));
    return lambda_abstract(u, lambda_abstract(v, lambda_abstract(x, body)));
  }();
  return comb;
}

inline Term mk_oplus(Term u, Term v, GenFlavor flavor = GenFlavor::KF) {
  Term comb = flavor == GenFlavor::KF ? mk_oplus_comb_kf() : mk_oplus_comb_vfu();
  return app(comb, u, v);
}

// t(u,v,w) = all. y ((+)(u,v)(0,y) ->. [(+)(u,v)(1,(y,w)) ->. t(u,v,y)]),
// tied with the recursion combinator
inline Term mk_t_comb() {
  static Term comb = [] {
    Term t = var("_t_self"), u = var("_t_u"), v = var("_t_v"), w = var("_t_w"),
         y = var("_t_y");
    Term op = app(mk_oplus_comb_kf(), u, v);
    Term zero = constant(Tag::Zero), one = numeral(1);
    Term body = dot_all(lambda_abstract(
        y, dot_imp(app(op, pair(zero, y)),
                   dot_imp(app(op, pair(one, pair(y, w))), app(t, u, v, y)))));
    Term functional = lambda_abstract(
        t, lambda_abstract(u, lambda_abstract(v, lambda_abstract(w, body))));
    return app(mk_rec(), functional);
  }();
  return comb;
}

inline Term mk_t(Term u, Term v) { return app(mk_t_comb(), u, v); }

// acc(u,v)x = (+)(u,v)(0,x) and. all. y ((+)(0,y) ->. [(+)(1,(y,x)) ->. l((+))(t(u,v,y))])
inline Term mk_acc(Term u, Term v) {
  Term x = var("_acc_x"), y = var("_acc_y");
  Term op = mk_oplus(u, v, GenFlavor::KF);
  Term t = mk_t(u, v);
  Term zero = constant(Tag::Zero), one = numeral(1);
  Term lhs = app(op, pair(zero, x));
  Term inner = dot_all(lambda_abstract(
      y, dot_imp(app(op, pair(zero, y)),
                 dot_imp(app(op, pair(one, pair(y, x))), app(lim(op), app(t, y))))));
  return lambda_abstract(x, dot_and(lhs, inner));
}

// a universe reflecting two given classes: l_{u,v} = l (u (+) v)
inline Term mk_luv(Term u, Term v) { return lim(mk_oplus(u, v, GenFlavor::VFU)); }

// the supervaluation-style accessible part: acc(a,b) = lam z. code of TI[a,b,z]
//   WF[a,b,f] = all x. T(ax) -> [all y. T(ay) -> T(b(y,x)) -> T(l_ab (fy))] -> T(l_ab (fx))
//   TI[a,b,z] = T(az) and all f. WF[a,b,f] -> T(l_ab (fz))
inline Term mk_acc_vf(Term a, Term b) {
  Term luv = mk_luv(a, b);
  Term z = var("_avf_z"), f = var("_avf_f"), x = var("_avf_x"), y = var("_avf_y");
  Term wf = dot_all(lambda_abstract(
      x,
      dot_imp(dot_t(app(a, x)),
              dot_imp(dot_all(lambda_abstract(
                          y, dot_imp(dot_t(app(a, y)),
                                     dot_imp(dot_t(app(b, pair(y, x))),
                                             dot_t(app(luv, app(f, y))))))),
                      dot_t(app(luv, app(f, x)))))));
  Term ti = dot_and(dot_t(app(a, z)),
                    dot_all(lambda_abstract(f, dot_imp(wf, dot_t(app(luv, app(f, z)))))));
  return lambda_abstract(z, ti);
}

// a finite class given by a list of member terms: lam z. (z = m0) or. ...
inline Term mk_finite_class(const std::vector<Term>& members) {
  Term z = var("_fc_z");
  if (members.empty()) return lambda_abstract(z, dot_neg(dot_eq(z, z)));
  Term body = dot_eq(z, members[0]);
  for (size_t i = 1; i < members.size(); ++i) body = dot_or(body, dot_eq(z, members[i]));
  return lambda_abstract(z, body);
}

// ---- explicit-mathematics formulas and their translation --------------------

struct EmTerm;
using EmTermP = std::shared_ptr<const EmTerm>;

// either a plain applicative term or a generator application
struct EmTerm {
  Term base = nullptr;
  std::string gen;
  std::vector<EmTermP> args;
};

inline EmTermP em_term(Term t) { return std::make_shared<EmTerm>(EmTerm{t, "", {}}); }
inline EmTermP em_gen(std::string name, std::vector<EmTermP> args = {}) {
  return std::make_shared<EmTerm>(EmTerm{nullptr, std::move(name), std::move(args)});
}

enum class EmKind { ElemOf, IsName, Eq, IsN, Not, And, Imp, ForAll };

struct EmFormula;
using EmF = std::shared_ptr<const EmFormula>;

struct EmFormula {
  EmKind kind;
  EmTermP a, b;  // ElemOf(a,b), IsName(a), Eq(a,b), IsN(a)
  EmF f1, f2;
  std::string binder;
};

inline EmF em_elem(EmTermP x, EmTermP y) {
  return std::make_shared<EmFormula>(EmFormula{EmKind::ElemOf, std::move(x), std::move(y)});
}
inline EmF em_name(EmTermP x) {
  return std::make_shared<EmFormula>(EmFormula{EmKind::IsName, std::move(x)});
}
inline EmF em_eq(EmTermP x, EmTermP y) {
  return std::make_shared<EmFormula>(EmFormula{EmKind::Eq, std::move(x), std::move(y)});
}
inline EmF em_isn(EmTermP x) {
  return std::make_shared<EmFormula>(EmFormula{EmKind::IsN, std::move(x)});
}
inline EmF em_not(EmF s) {
  return std::make_shared<EmFormula>(EmFormula{EmKind::Not, nullptr, nullptr, std::move(s)});
}
inline EmF em_and(EmF x, EmF y) {
  return std::make_shared<EmFormula>(
      EmFormula{EmKind::And, nullptr, nullptr, std::move(x), std::move(y)});
}
inline EmF em_imp(EmF x, EmF y) {
  return std::make_shared<EmFormula>(
      EmFormula{EmKind::Imp, nullptr, nullptr, std::move(x), std::move(y)});
}
inline EmF em_forall(std::string v, EmF body) {
  auto f = std::make_shared<EmFormula>(
      EmFormula{EmKind::ForAll, nullptr, nullptr, std::move(body)});
  const_cast<EmFormula*>(f.get())->binder = std::move(v);
  return f;
}

inline Term translate_term(const EmTermP& t, GenFlavor flavor) {
  if (t->base) return t->base;
  std::vector<Term> args;
  args.reserve(t->args.size());
  for (auto& a : t->args) args.push_back(translate_term(a, flavor));
  return mk_generator(t->gen, args, flavor);
}

// the ' translation: (x in y)' = T(yx); R'(x) = C(x); homomorphic elsewhere
inline Snt translate(const EmF& a, GenFlavor flavor = GenFlavor::KF) {
  switch (a->kind) {
    case EmKind::ElemOf:
      return mk_truth(app(translate_term(a->b, flavor), translate_term(a->a, flavor)));
    case EmKind::IsName: {
      Term x = translate_term(a->a, flavor);
      Term z = var("_cls_z");
      return mk_forall("_cls_z", mk_or(mk_truth(app(x, z)), mk_truth(dot_neg(app(x, z)))));
    }
    case EmKind::Eq:
      return mk_eq(translate_term(a->a, flavor), translate_term(a->b, flavor));
    case EmKind::IsN:
      return mk_isn(translate_term(a->a, flavor));
    case EmKind::Not:
      return mk_not(translate(a->f1, flavor));
    case EmKind::And:
      return mk_and(translate(a->f1, flavor), translate(a->f2, flavor));
    case EmKind::Imp:
      return mk_imp(translate(a->f1, flavor), translate(a->f2, flavor));
    case EmKind::ForAll:
      return mk_forall(a->binder, translate(a->f1, flavor));
  }
  throw std::logic_error("unreachable");
}

// ---- finite digraphs for the accessible-part checks --------------------------

struct Digraph {
  int nodes = 0;                            // vertices are numerals 0..nodes-1
  std::vector<std::pair<int, int>> edges;   // (y, x) meaning y <_b x

  // brute-force accessible (well-founded) part by Kleene iteration
  std::vector<bool> accessible_part() const {
    std::vector<bool> acc(nodes, false);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < nodes; ++x) {
        if (acc[x]) continue;
        bool ok = true;
        for (auto& [y, z] : edges)
          if (z == x && !acc[y]) {
            ok = false;
            break;
          }
        if (ok) {
          acc[x] = true;
          grew = true;
        }
      }
    }
    return acc;
  }

  Term node_class() const {
    std::vector<Term> ms;
    for (int i = 0; i < nodes; ++i) ms.push_back(numeral(i));
    return mk_finite_class(ms);
  }

  Term edge_class() const {
    std::vector<Term> ms;
    for (auto& [y, x] : edges) ms.push_back(pair(numeral(y), numeral(x)));
    return mk_finite_class(ms);
  }
};

}  // namespace fsw

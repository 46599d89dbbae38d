#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fsw/sequent.hpp"

namespace fsw {

// The truth-as-provability model: T(x) holds when the singleton of x's
// negation normal form is derivable; U(x) when x = l a with a provably a
// class at the top rank.
class VfuModel {
 public:
  explicit VfuModel(SequentAtlas& atlas) : atlas_(atlas) {}

  SequentAtlas& atlas() { return atlas_; }

  bool vf_true(Term x) {
    Term c = atlas_.nnf_code(x);
    if (!c) return false;
    return atlas_.derivable_top(Sequent::of({c}));
  }

  bool vf_true_nnf(const NnfP& n) {
    return atlas_.derivable_top(Sequent::of({atlas_.code_of(n)}));
  }

  bool vf_universe(Term u) {
    Term c = atlas_.canon(u);
    if (!c || c->tag != Tag::App || c->fun->tag != Tag::Lim) return false;
    return vf_class(c->arg);
  }

  bool vf_class(Term a) { return atlas_.class_below(atlas_.config().max_u + 1, a); }

  // classical evaluation of an NNF sentence in the model (T-atoms answered
  // by derivability, quantifiers over the finite domain)
  bool model_eval(const NnfP& n) {
    switch (n->kind) {
      case NKind::Lit:
        switch (n->atom) {
          case AtomKind::Eq:
          case AtomKind::IsN:
            return atlas_.literal_true(n);
          case AtomKind::TruthOf: {
            bool t = vf_true(n->a);
            return n->pos ? t : !t;
          }
          case AtomKind::LAt: {
            bool t = vf_true(app(lim(n->a), n->b));
            return n->pos ? t : !t;
          }
        }
        return false;
      case NKind::And: return model_eval(n->n1) && model_eval(n->n2);
      case NKind::Or: return model_eval(n->n1) || model_eval(n->n2);
      case NKind::All: {
        for (Term d : atlas_.domain())
          if (!model_eval(atlas_.instantiate(n->n1, n->binder, d))) return false;
        return true;
      }
      case NKind::Ex: {
        for (Term d : atlas_.domain())
          if (model_eval(atlas_.instantiate(n->n1, n->binder, d))) return true;
        return false;
      }
    }
    return false;
  }

 private:
  SequentAtlas& atlas_;
};

// ---- axiom instance checking against the supervaluation model -----------------

struct VfCheck {
  bool pass = false;
  bool verifiable = true;
  std::string detail;
};

// The fixed schedule of logical-theorem templates standing in for the
// (T-Log)/(U-Log) axioms: identity, excluded middle, De Morgan directions,
// a quantifier shift. Each template maps a sentence pair to a tautology.
inline std::vector<Snt> logic_templates(const Snt& A, const Snt& B) {
  std::vector<Snt> out;
  out.push_back(mk_or(A, mk_not(A)));                                  // A or ~A
  out.push_back(mk_not(mk_and(A, mk_not(A))));                         // ~(A and ~A)
  out.push_back(mk_imp(A, A));                                         // A -> A
  out.push_back(mk_imp(mk_not(mk_and(A, B)), mk_or(mk_not(A), mk_not(B))));
  out.push_back(mk_imp(mk_or(mk_not(A), mk_not(B)), mk_not(mk_and(A, B))));
  out.push_back(mk_imp(mk_and(A, B), A));
  out.push_back(mk_imp(A, mk_or(A, B)));
  return out;
}

class VfAxiomChecker {
 public:
  explicit VfAxiomChecker(VfuModel& m) : m_(m) {}

  // (T-Out): T(A.) -> A, for sentences with decidable model truth
  VfCheck t_out(const Snt& a) {
    NnfP n = nnf(a);
    if (!m_.vf_true_nnf(n)) return {true, true, "antecedent false"};
    bool holds = m_.model_eval(n);
    return {holds, true, holds ? "" : "T(A) but the model refutes A"};
  }

  // (T-Elem): P -> T(P.) for true L-literals
  VfCheck t_elem(const NnfP& lit) {
    if (!m_.atlas().literal_true(lit)) return {true, true, "not a true literal"};
    bool holds = m_.vf_true_nnf(lit);
    return {holds, true, holds ? "" : "true literal not derivable"};
  }

  // (T-Imp): T(A->B) -> (T(A) -> T(B))
  VfCheck t_imp(const Snt& a, const Snt& b) {
    NnfP code = nnf(mk_imp(a, b));
    if (!m_.vf_true_nnf(code)) return {true, true, "antecedent false"};
    if (!m_.vf_true_nnf(nnf(a))) return {true, true, "T(A) false"};
    bool holds = m_.vf_true_nnf(nnf(b));
    return {holds, true, holds ? "" : "modus ponens fails in the model"};
  }

  // (T-Univ): (forall x. T(A(x))) -> T(forall x. A(x)); A given as a class
  // of instance sentences indexed by domain elements
  VfCheck t_univ(const std::string& binder, const Snt& body) {
    NnfP nb = nnf(body);
    for (Term d : m_.atlas().domain())
      if (!m_.vf_true_nnf(m_.atlas().instantiate(nb, binder, d)))
        return {true, true, "antecedent false"};
    bool holds = m_.vf_true_nnf(nall(binder, nb));
    return {holds, true, holds ? "" : "(T-Univ) fails"};
  }

  VfCheck t_log(const Snt& a, const Snt& b) {
    for (const Snt& c : logic_templates(a, b))
      if (!m_.vf_true_nnf(nnf(c))) return {false, true, "logical theorem not derivable"};
    return {true, true, ""};
  }

  VfCheck t_cons(Term x) {
    Term c = m_.atlas().nnf_code(x);
    Term nc = m_.atlas().neg_nnf_code(x);
    if (c && nc && m_.atlas().derivable_top(Sequent::of({c})) &&
        m_.atlas().derivable_top(Sequent::of({nc})))
      return {false, true, "both x and its negation derivable"};
    return {true, true, ""};
  }

  VfCheck t_self(Term x) {
    bool l1 = m_.vf_true(x), r1 = m_.vf_true(dot_t(x));
    if (l1 != r1) return {false, true, "T(x) vs T(T.x) disagree"};
    bool l2 = m_.vf_true(dot_neg(x)), r2 = m_.vf_true(dot_neg(dot_t(x)));
    if (l2 != r2) return {false, true, "negated halves disagree"};
    return {true, true, ""};
  }

 private:
  VfuModel& m_;
};

// helper: the sequent-model statement L_a(b), as a code
inline Term lat_code(Term a, Term b) { return app(lim(a), b); }

}  // namespace fsw

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fsw/kripke.hpp"
#include "fsw/sexpr.hpp"

namespace fsw {

enum class Theory { KF, KFU, PT, PTU };

inline Schema theory_schema(Theory t) {
  return (t == Theory::KF || t == Theory::KFU) ? Schema::SK : Schema::AF;
}
inline bool theory_relativized(Theory t) { return t == Theory::KFU || t == Theory::PTU; }

enum class CheckVerdict { Pass, Fail, Ungrounded };

struct CheckResult {
  CheckVerdict verdict;
  std::string detail;
};

namespace detail {

// tri-state truth with an unknown flag folded in
struct BV {
  bool val = false;
  bool unknown = false;
};
inline BV bv(QV q) { return {q == QV::Yes, q == QV::Unknown}; }
inline BV bv_and(BV a, BV b) { return {a.val && b.val, a.unknown || b.unknown}; }
inline BV bv_or(BV a, BV b) { return {a.val || b.val, a.unknown || b.unknown}; }
inline BV bv_not(BV a) { return {!a.val, a.unknown}; }

struct Spine {
  Tag head = Tag::Var;  // Var used as "no constant head"
  Term a = nullptr, b = nullptr;
  int arity = 0;
};

inline Spine match(Term c) {
  Spine s;
  if (!c || c->tag != Tag::App) return s;
  Term h1 = c->fun;
  if (h1->tag != Tag::App) {
    s.head = h1->tag;
    s.a = c->arg;
    s.arity = 1;
    return s;
  }
  Term h2 = h1->fun;
  if (h2->tag == Tag::App) return s;
  s.head = h2->tag;
  s.a = h1->arg;
  s.b = c->arg;
  s.arity = 2;
  return s;
}

}  // namespace detail

// ---- single axiom-instance checks -----------------------------------------

// Names: eq neq nat nneg dneg and nand imp nimp all nall cons class true lim.
// Relativized theories prefix the truth queries with a universe u.
class AxiomChecker {
 public:
  AxiomChecker(Tower& m, Theory th) : m_(m), th_(th) {}

  CheckResult check(const std::string& tag, const std::vector<Term>& args) {
    using detail::BV;
    if (tag == "lim") {  // C(f) -> U(lf) and f reflected by lf; not u-prefixed
      if (args.empty()) return {CheckVerdict::Ungrounded, "missing class argument"};
      Term f = args[0];
      QV c = m_.class_qv(f);
      if (c == QV::Unknown) return {CheckVerdict::Ungrounded, "class check budget"};
      if (c == QV::No) return {CheckVerdict::Pass, "vacuous: f not a class"};
      if (!m_.is_universe(lim(f))) return {CheckVerdict::Fail, "lf is not a universe"};
      if (!m_.reflects(f, lim(f))) return {CheckVerdict::Fail, "f not reflected by lf"};
      return {CheckVerdict::Pass, ""};
    }
    bool rel = theory_relativized(th_);
    Term u = nullptr;
    size_t base = 0;
    if (rel) {
      if (args.empty()) return {CheckVerdict::Ungrounded, "missing universe argument"};
      u = args[0];
      base = 1;
      if (!m_.is_universe(u)) return {CheckVerdict::Ungrounded, "u is not a certified universe"};
    }
    auto arg = [&](size_t k) -> Term {
      return base + k < args.size() ? args[base + k] : nullptr;
    };
    auto T = [&](Term code) -> BV {
      return detail::bv(m_.query(rel ? app(u, code) : code));
    };
    std::vector<Term> mentioned;
    auto lhs_rhs = [&](BV l, BV r) -> CheckResult {
      if (!l.unknown && !r.unknown && l.val == r.val) return {CheckVerdict::Pass, ""};
      for (Term c : mentioned) {
        if (!c) continue;
        QV p = m_.prop_qv(rel ? app(u, c) : c);
        if (p != QV::Yes)
          return {CheckVerdict::Ungrounded, "mentions non-proposition " + to_sexpr(c)};
      }
      if (l.unknown || r.unknown) return {CheckVerdict::Ungrounded, "budget"};
      return {CheckVerdict::Fail, "sides disagree"};
    };

    Schema sch = theory_schema(th_);
    Term x = arg(0), y = arg(1);
    if (tag == "eq" || tag == "neq") {
      Verdict v = beta_equal(x, y, m_.config().fuel);
      if (v == Verdict::Unknown) return {CheckVerdict::Ungrounded, "equality undecided"};
      bool meta = (v == Verdict::Equal) == (tag == "eq");
      Term code = tag == "eq" ? dot_eq(x, y) : dot_neg(dot_eq(x, y));
      mentioned = {code};
      return lhs_rhs(T(code), {meta, false});
    }
    if (tag == "nat" || tag == "nneg") {
      NormResult r = reduce(x, m_.config().fuel);
      if (!r.normal) return {CheckVerdict::Ungrounded, "argument does not normalize"};
      bool meta = is_numeral(r.term) == (tag == "nat");
      Term code = tag == "nat" ? dot_n(x) : dot_neg(dot_n(x));
      mentioned = {code};
      return lhs_rhs(T(code), {meta, false});
    }
    if (tag == "dneg") {
      mentioned = {x};
      return lhs_rhs(T(dot_neg(dot_neg(x))), T(x));
    }
    if (tag == "and") {
      mentioned = {x, y};
      return lhs_rhs(T(dot_and(x, y)), detail::bv_and(T(x), T(y)));
    }
    if (tag == "nand") {
      mentioned = {x, y};
      BV nx = T(dot_neg(x)), ny = T(dot_neg(y));
      BV rhs = sch == Schema::SK
                   ? detail::bv_or(nx, ny)
                   : detail::bv_or(detail::bv_or(detail::bv_and(nx, ny),
                                                 detail::bv_and(nx, T(y))),
                                   detail::bv_and(T(x), ny));
      return lhs_rhs(T(dot_neg(dot_and(x, y))), rhs);
    }
    if (tag == "imp") {
      mentioned = {x, y};
      BV rhs = sch == Schema::SK
                   ? detail::bv_or(T(dot_neg(x)), T(y))
                   : detail::bv_or(detail::bv_and(T(x), T(y)), T(dot_neg(x)));
      return lhs_rhs(T(dot_imp(x, y)), rhs);
    }
    if (tag == "nimp") {
      mentioned = {x, y};
      return lhs_rhs(T(dot_neg(dot_imp(x, y))), detail::bv_and(T(x), T(dot_neg(y))));
    }
    if (tag == "all") {
      Term f = x;
      BV rhs{true, false};
      for (Term d : m_.domain()) {
        rhs = detail::bv_and(rhs, T(app(f, d)));
        if (!rhs.val && !rhs.unknown) break;
      }
      mentioned = {dot_all(f)};
      return lhs_rhs(T(dot_all(f)), rhs);
    }
    if (tag == "nall") {
      Term f = x;
      BV rhs{false, false};
      if (sch == Schema::SK) {
        for (Term d : m_.domain()) {
          rhs = detail::bv_or(rhs, T(dot_neg(app(f, d))));
          if (rhs.val) break;
        }
      } else {
        BV all{true, false}, ex{false, false};
        for (Term d : m_.domain()) {
          all = detail::bv_and(all, detail::bv_or(T(app(f, d)), T(dot_neg(app(f, d)))));
          ex = detail::bv_or(ex, T(dot_neg(app(f, d))));
          if (!all.val && !all.unknown) break;
        }
        rhs = detail::bv_and(all, ex);
      }
      mentioned = {dot_all(f)};
      return lhs_rhs(T(dot_neg(dot_all(f))), rhs);
    }
    if (tag == "cons") {
      BV l = T(x), r = T(dot_neg(x));
      if (l.unknown || r.unknown) return {CheckVerdict::Ungrounded, "budget"};
      if (l.val && r.val) return {CheckVerdict::Fail, "both a code and its negation are true"};
      return {CheckVerdict::Pass, ""};
    }
    if (tag == "class") {  // U(u) -> C(u)
      QV c = m_.class_qv(u ? u : x);
      if (c == QV::Yes) return {CheckVerdict::Pass, ""};
      if (c == QV::Unknown) return {CheckVerdict::Ungrounded, "budget"};
      return {CheckVerdict::Fail, "universe is not a class"};
    }
    if (tag == "true") {  // U(u) -> T(ux) -> T(x)
      Term uu = u ? u : x;
      Term code = u ? x : y;
      QV l = m_.query(app(uu, code));
      if (l != QV::Yes) return {CheckVerdict::Pass, ""};
      QV r = m_.query(code);
      if (r == QV::Yes) return {CheckVerdict::Pass, ""};
      if (r == QV::Unknown) return {CheckVerdict::Ungrounded, "budget"};
      return {CheckVerdict::Fail, "T(ux) without T(x)"};
    }
    return {CheckVerdict::Ungrounded, "unknown axiom tag " + tag};
  }

 private:
  Tower& m_;
  Theory th_;
};

// ---- proposition-characterization lemmas ----------------------------------

struct LemmaReport {
  int checked = 0;
  int failed = 0;
  int unknown = 0;
  std::vector<std::string> failures;

  void fail(const std::string& s) {
    ++failed;
    if (failures.size() < 16) failures.push_back(s);
  }
};

// Lemma-style biconditional over P for every matching code in the domain.
// SK variant: 4.1; AF variant: 5.2.
inline LemmaReport check_prop_characterization(Tower& m) {
  LemmaReport rep;
  Schema sch = m.config().schema;
  auto P = [&](Term t) { return detail::bv(m.prop_qv(t)); };
  auto T = [&](Term t) { return detail::bv(m.query(t)); };
  for (Term c : m.domain()) {
    detail::Spine s = detail::match(c);
    if (s.head == Tag::Var) continue;
    ++rep.checked;
    using detail::bv_and;
    using detail::bv_or;
    detail::BV lhs, rhs;
    bool applicable = true;
    switch (s.head) {
      case Tag::DotEq:
        if (s.arity != 2) { applicable = false; break; }
        lhs = P(c);
        rhs = {true, false};
        break;
      case Tag::DotN:
        lhs = P(c);
        rhs = {true, false};
        break;
      case Tag::DotNeg:
        lhs = P(c);
        rhs = P(s.a);
        break;
      case Tag::DotAnd: {
        if (s.arity != 2) { applicable = false; break; }
        lhs = P(c);
        if (sch == Schema::SK) {
          rhs = bv_or(bv_or(bv_and(P(s.a), P(s.b)), bv_and(P(s.a), T(dot_neg(s.a)))),
                      bv_and(P(s.b), T(dot_neg(s.b))));
        } else {
          rhs = bv_and(P(s.a), P(s.b));
        }
        break;
      }
      case Tag::DotImp: {
        if (s.arity != 2) { applicable = false; break; }
        lhs = P(c);
        if (sch == Schema::SK) {
          rhs = bv_or(bv_or(bv_and(P(s.a), P(s.b)), bv_and(P(s.a), T(dot_neg(s.a)))),
                      bv_and(P(s.b), T(s.b)));
        } else {
          // P(x -> y) iff P(x) and (T(x) -> P(y))
          detail::BV tx = T(s.a);
          rhs = bv_and(P(s.a), bv_or(bv_not(tx), P(s.b)));
        }
        break;
      }
      case Tag::DotAll: {
        if (s.arity != 1) { applicable = false; break; }
        lhs = P(c);
        detail::BV allp{true, false};
        for (Term d : m.domain()) {
          allp = bv_and(allp, P(app(s.a, d)));
          if (!allp.val && !allp.unknown) break;
        }
        if (sch == Schema::SK) {
          detail::BV witness{false, false};
          for (Term d : m.domain()) {
            witness = bv_or(witness, bv_and(P(app(s.a, d)), T(dot_neg(app(s.a, d)))));
            if (witness.val) break;
          }
          rhs = bv_or(allp, witness);
        } else {
          rhs = allp;
        }
        break;
      }
      default:
        applicable = false;
    }
    if (!applicable) {
      --rep.checked;
      continue;
    }
    if (lhs.unknown || rhs.unknown) {
      ++rep.unknown;
    } else if (lhs.val != rhs.val) {
      rep.fail(to_sexpr(c));
    }
  }
  return rep;
}

// Negated-conjunction characterization (SK): instances built over samples.
inline LemmaReport check_neg_conj_characterization(Tower& m, const std::vector<Term>& xs,
                                                   const std::vector<Term>& ys) {
  LemmaReport rep;
  auto P = [&](Term t) { return detail::bv(m.prop_qv(t)); };
  auto T = [&](Term t) { return detail::bv(m.query(t)); };
  using detail::bv_and;
  using detail::bv_or;
  for (Term x : xs)
    for (Term y : ys) {
      ++rep.checked;
      detail::BV lhs = P(dot_neg(dot_and(x, y)));
      detail::BV nx = P(dot_neg(x)), ny = P(dot_neg(y));
      detail::BV rhs = bv_or(bv_or(bv_and(nx, ny), bv_and(nx, T(dot_neg(x)))),
                             bv_and(ny, T(dot_neg(y))));
      if (lhs.unknown || rhs.unknown)
        ++rep.unknown;
      else if (lhs.val != rhs.val)
        rep.fail(to_sexpr(x) + " , " + to_sexpr(y));
    }
  return rep;
}

// ---- the proposition-induction operators -----------------------------------

enum class AOpVariant { KF, PT, LU, PTLU };

struct AOp {
  AOpVariant variant = AOpVariant::KF;
  Term f = nullptr;  // LU/PTLU parameter (a class)
};

using TermPred = std::function<bool(Term)>;

// literal evaluation of the disjunction defining A(B(.), x)
inline bool a_operator(Tower& m, const AOp& op, const TermPred& B, Term x) {
  if ((op.variant == AOpVariant::LU || op.variant == AOpVariant::PTLU) && !op.f) return false;
  Term c = m.canon(x);
  if (!c) return false;
  detail::Spine s = detail::match(c);
  auto TT = [&](Term t) { return m.query(t) == QV::Yes; };
  Term lf = op.f ? lim(op.f) : nullptr;

  if (op.variant == AOpVariant::PTLU) {
    // the PT least-universe operator works on signed codes
    if (s.head == Tag::DotEq && s.arity == 2)
      return beta_equal(s.a, s.b, m.config().fuel) == Verdict::Equal;
    if (s.head == Tag::DotN && s.arity == 1) {
      auto v = numeral_value(s.a, m.config().fuel);
      return v.has_value();
    }
    if (s.head == Tag::DotAnd && s.arity == 2) return B(s.a) && B(s.b);
    if (s.head == Tag::DotImp && s.arity == 2)
      return (TT(app(lf, s.a)) || TT(app(lf, dot_neg(s.a)))) &&
             (!TT(app(lf, s.a)) || B(s.b));
    if (s.head == Tag::DotAll && s.arity == 1) {
      for (Term d : m.domain())
        if (!B(app(s.a, d))) return false;
      return true;
    }
    if (s.head == Tag::DotNeg) {
      detail::Spine in = detail::match(m.canon(s.a));
      if (in.head == Tag::DotEq && in.arity == 2)
        return beta_equal(in.a, in.b, m.config().fuel) == Verdict::Distinct;
      if (in.head == Tag::DotN && in.arity == 1) {
        NormResult r = reduce(in.a, m.config().fuel);
        return r.normal && !is_numeral(r.term);
      }
      if (in.head == Tag::DotNeg && in.arity == 1) return B(in.a);
      if (in.head == Tag::DotAnd && in.arity == 2) {
        bool bny = B(dot_neg(in.a)), bnz = B(dot_neg(in.b));
        return (bny && bnz) || (B(in.a) && bnz) || (bny && B(in.b));
      }
      if (in.head == Tag::DotImp && in.arity == 2) return B(in.a) && B(dot_neg(in.b));
      if (in.head == Tag::DotAll && in.arity == 1) {
        bool ex = false;
        for (Term d : m.domain()) {
          Term gy = app(in.a, d);
          if (!B(gy) && !B(dot_neg(gy))) return false;
          ex = ex || B(dot_neg(gy));
        }
        return ex;
      }
      // x = neg(f y) or x = neg(l g y): fall through to the image clauses
    }
    // clause: [x = fy or x = neg(fy)] and T(x)
    if (op.f) {
      Term inner = c;
      if (s.head == Tag::DotNeg && s.arity == 1) inner = m.canon(s.a);
      for (Term d : m.domain())
        if (m.canon(app(op.f, d)) == inner) return TT(c);
      // clause: [x = l g y or x = neg(l g y)] and T(lf x)
      detail::Spine is = detail::match(inner);
      if (is.head == Tag::Lim && is.arity == 2) return TT(app(lf, c));
    }
    return false;
  }

  // KF / PT / LU share the positive-shape structure
  switch (s.head) {
    case Tag::DotEq:
      if (s.arity != 2) return false;
      return beta_equal(s.a, s.b, m.config().fuel) == Verdict::Equal;
    case Tag::DotN: {
      if (s.arity != 1) return false;
      auto v = numeral_value(s.a, m.config().fuel);
      return v.has_value();
    }
    case Tag::DotNeg:
      if (s.arity != 1) return false;
      return B(s.a);
    case Tag::DotAnd: {
      if (s.arity != 2) return false;
      bool by = B(s.a), bz = B(s.b);
      switch (op.variant) {
        case AOpVariant::KF:
          return (by && bz) || (by && TT(dot_neg(s.a))) || (bz && TT(dot_neg(s.b)));
        case AOpVariant::PT:
          return by && bz;
        case AOpVariant::LU:
          return (by && bz) || (by && TT(app(lf, dot_neg(s.a)))) ||
                 (bz && TT(app(lf, dot_neg(s.b))));
        default:
          return false;
      }
    }
    case Tag::DotImp: {
      if (s.arity != 2) return false;
      bool by = B(s.a), bz = B(s.b);
      switch (op.variant) {
        case AOpVariant::KF:
          return (by && bz) || (by && TT(dot_neg(s.a))) || (bz && TT(s.b));
        case AOpVariant::PT:
          return by && (!TT(s.a) || bz);
        case AOpVariant::LU:
          return (by && bz) || (by && TT(app(lf, dot_neg(s.a)))) || (bz && TT(app(lf, s.b)));
        default:
          return false;
      }
    }
    case Tag::DotAll: {
      if (s.arity != 1) return false;
      bool all = true;
      for (Term d : m.domain())
        if (!B(app(s.a, d))) {
          all = false;
          break;
        }
      if (all) return true;
      if (op.variant == AOpVariant::PT) return false;
      for (Term d : m.domain()) {
        Term gy = app(s.a, d);
        bool neg = op.variant == AOpVariant::KF ? TT(dot_neg(gy)) : TT(app(lf, dot_neg(gy)));
        if (B(gy) && neg) return true;
      }
      return false;
    }
    case Tag::Lim: {
      if (s.arity != 2) return false;
      if (op.variant == AOpVariant::LU) {
        // x = l g y with P_lf(x)
        return TT(app(lf, c)) || TT(app(lf, dot_neg(c)));
      }
      // KF/PT clause 7: x = l f' y with B(f' z) for all z
      for (Term d : m.domain())
        if (!B(app(s.a, d))) return false;
      return true;
    }
    default:
      break;
  }
  // LU clause 7: x = f y for some y
  if (op.variant == AOpVariant::LU && op.f) {
    for (Term d : m.domain())
      if (m.canon(app(op.f, d)) == c) return true;
  }
  return false;
}

struct InductionReport {
  bool hypothesis_closed = true;
  Term hypothesis_counterexample = nullptr;
  bool conclusion_holds = true;
  Term conclusion_counterexample = nullptr;
  int props_checked = 0;

  bool schema_instance_holds() const { return !hypothesis_closed || conclusion_holds; }
};

// (PI)-style schema instance: if B is A-closed over the domain then every
// proposition (in the variant's sense) satisfies B.
inline InductionReport check_induction(Tower& m, const AOp& op, const TermPred& B) {
  InductionReport rep;
  for (Term x : m.domain()) {
    if (a_operator(m, op, B, x) && !B(x)) {
      rep.hypothesis_closed = false;
      rep.hypothesis_counterexample = x;
      break;
    }
  }
  auto in_scope = [&](Term x) -> bool {
    switch (op.variant) {
      case AOpVariant::KF:
      case AOpVariant::PT:
        return m.is_prop(x);
      case AOpVariant::LU:
        return m.query(app(lim(op.f), x)) == QV::Yes ||
               m.query(app(lim(op.f), dot_neg(x))) == QV::Yes;
      case AOpVariant::PTLU:
        return m.query(app(lim(op.f), x)) == QV::Yes;
    }
    return false;
  };
  for (Term x : m.domain()) {
    if (!in_scope(x)) continue;
    ++rep.props_checked;
    if (!B(x)) {
      rep.conclusion_holds = false;
      rep.conclusion_counterexample = x;
      break;
    }
  }
  return rep;
}

// stage-by-stage consistency: no code true together with its negation
inline bool stage_consistent(Tower& m, int stage, Term* witness = nullptr) {
  StageSet s = m.stage_view(stage);
  for (Term t : s.members) {
    detail::Spine sp = detail::match(t);
    Term neg = (sp.head == Tag::DotNeg && sp.arity == 1) ? sp.a : nullptr;
    if (neg) {
      Term c = m.canon(neg);
      if (c && s.members.count(c)) {
        if (witness) *witness = c;
        return false;
      }
    }
  }
  return true;
}

}  // namespace fsw

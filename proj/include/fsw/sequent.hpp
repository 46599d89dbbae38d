#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fsw/enumerate.hpp"
#include "fsw/kripke.hpp"  // Canonizer
#include "fsw/sentence.hpp"
#include "fsw/sexpr.hpp"

namespace fsw {

// ranks (u-rank alpha, T-rank beta, derivation length gamma)
struct Rank {
  int u = 0, t = 0, len = 0;
  bool operator==(const Rank& o) const = default;
};

// a sequent is a finite set of closed codes of negation normal sentences,
// kept as sorted canonical terms
struct Sequent {
  std::vector<Term> codes;

  static Sequent of(std::vector<Term> cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return Sequent{std::move(cs)};
  }
  bool contains(Term c) const {
    return std::binary_search(codes.begin(), codes.end(), c);
  }
  Sequent with(Term c) const {
    if (contains(c)) return *this;
    std::vector<Term> cs = codes;
    cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    return Sequent{std::move(cs)};
  }
  Sequent without(Term c) const {
    std::vector<Term> cs;
    for (Term x : codes)
      if (x != c) cs.push_back(x);
    return Sequent{std::move(cs)};
  }
  Sequent unite(const Sequent& o) const {
    std::vector<Term> cs = codes;
    cs.insert(cs.end(), o.codes.begin(), o.codes.end());
    return of(std::move(cs));
  }
  bool subset_of(const Sequent& o) const {
    for (Term c : codes)
      if (!o.contains(c)) return false;
    return true;
  }
  bool operator==(const Sequent& o) const = default;
};

struct SequentHash {
  size_t operator()(const Sequent& s) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (Term c : s.codes) h = h * 1099511628211ull ^ std::hash<const void*>()(c);
    return h;
  }
};

struct SeqConfig {
  int universe_depth = 1;
  std::vector<Term> extra_domain;
  int max_u = 2;
  int max_t = 3;
  int max_len = 6;
  Fuel fuel{10000};
  uint64_t sequent_budget = 4'000'000;  // distinct memo entries
};

// The rank-stratified derivability oracle for the Table-2 calculus, computed
// top-down with memoization (the effective analogue of the H(s,f) stages).
class SequentAtlas {
 public:
  explicit SequentAtlas(SeqConfig cfg) : cfg_(std::move(cfg)), canon_(cfg_.fuel) {
    domain_ = enumerate_universe(cfg_.universe_depth, cfg_.fuel);
    std::unordered_set<Term> have(domain_.begin(), domain_.end());
    for (Term t : cfg_.extra_domain) {
      Term c = canon_.canon(t);
      if (c && have.insert(c).second) domain_.push_back(c);
    }
  }

  const SeqConfig& config() const { return cfg_; }
  const std::vector<Term>& domain() const { return domain_; }
  bool budget_exhausted() const { return budget_exhausted_; }

  // canonical code of an NNF sentence
  Term code_of(const NnfP& n) {
    Term c = canon_.canon(encode_nnf_open(n));
    return c;
  }

  // the NNF view of a member code (cached); null when not decodable
  NnfP view(Term code) {
    auto it = views_.find(code);
    if (it != views_.end()) return it->second;
    NnfP out = nullptr;
    if (auto s = fsw::decode(code, cfg_.fuel)) out = nnf(*s);
    views_.emplace(code, out);
    return out;
  }

  // turns an arbitrary code into the canonical code of its NNF, if decodable
  Term nnf_code(Term raw) {
    Term c = canon_.canon(raw);
    if (!c) return nullptr;
    NnfP v = view(c);
    if (!v) return nullptr;
    return code_of(v);
  }
  Term neg_nnf_code(Term raw) {
    Term c = canon_.canon(raw);
    if (!c) return nullptr;
    NnfP v = view(c);
    if (!v) return nullptr;
    return code_of(nnf_negate(v));
  }

  // derivability at exactly-bounded rank
  bool derivable(const Sequent& g, Rank r) {
    if (r.u < 0 || r.t < 0 || r.len < 0) return false;
    Key k{intern(g), r};
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    if (memo_.size() > cfg_.sequent_budget) {
      budget_exhausted_ = true;
      return false;
    }
    memo_.emplace(k, false);  // guards nothing (ranks strictly decrease) but
                              // keeps re-entrant duplicates cheap
    bool v = search(g, r);
    memo_[k] = v;
    return v;
  }

  // |-^{<u} Gamma : some rank below u (beta, gamma free within bounds)
  bool derivable_below(const Sequent& g, int u) {
    return u >= 1 && derivable(g, Rank{u - 1, cfg_.max_t, cfg_.max_len});
  }

  bool derivable_top(const Sequent& g) {
    return derivable(g, Rank{cfg_.max_u, cfg_.max_t, cfg_.max_len});
  }

  // |-^{<u} a : Class  (for every domain element c, a c or its negation
  // derives below u)
  bool class_below(int u, Term a) {
    if (u < 1) return false;
    auto key = std::make_pair(u, a);
    auto it = class_memo_.find(key);
    if (it != class_memo_.end()) return it->second;
    bool ok = true;
    for (Term c : domain_) {
      Term pos = nnf_code(app(a, c));
      if (pos && derivable_below(Sequent::of({pos}), u)) continue;
      Term neg = neg_nnf_code(app(a, c));
      if (neg && derivable_below(Sequent::of({neg}), u)) continue;
      ok = false;
      break;
    }
    class_memo_.emplace(key, ok);
    return ok;
  }

  // the dagger freshness condition: neither L_a(b) nor its negation below u
  bool fresh_below(int u, Term a, Term b) {
    Term la = canon_.canon(app(lim(a), b));
    if (!la) return false;
    Term nla = canon_.canon(dot_neg(la));
    return !derivable_below(Sequent::of({la}), u) &&
           !derivable_below(Sequent::of({nla}), u);
  }

  // CTT truth of an L-literal (Eq / IsN and negations); Unknown -> not true
  bool literal_true(const NnfP& n) {
    if (n->kind != NKind::Lit) return false;
    switch (n->atom) {
      case AtomKind::Eq: {
        Verdict v = beta_equal(n->a, n->b, cfg_.fuel);
        return n->pos ? v == Verdict::Equal : v == Verdict::Distinct;
      }
      case AtomKind::IsN: {
        NormResult r = reduce(n->a, cfg_.fuel);
        if (!r.normal) return false;
        return is_numeral(r.term) == n->pos;
      }
      default:
        return false;  // T- and L-atoms are not CTT literals
    }
  }

  Term canon(Term t) { return canon_.canon(t); }

  // NNF substitution of a closed term for a named variable
  NnfP instantiate(const NnfP& n, const std::string& var_name, Term val) {
    Term v = var(var_name);
    std::function<NnfP(const NnfP&)> go = [&](const NnfP& m) -> NnfP {
      switch (m->kind) {
        case NKind::Lit: {
          auto c = std::make_shared<Nnf>(*m);
          c->a = m->a ? subst(m->a, v, val) : nullptr;
          c->b = m->b ? subst(m->b, v, val) : nullptr;
          return c;
        }
        case NKind::And: return nand_(go(m->n1), go(m->n2));
        case NKind::Or: return nor_(go(m->n1), go(m->n2));
        case NKind::All:
          if (m->binder == var_name) return m;  // shadowed
          return nall(m->binder, go(m->n1));
        case NKind::Ex:
          if (m->binder == var_name) return m;
          return nex(m->binder, go(m->n1));
      }
      throw std::logic_error("unreachable");
    };
    return go(n);
  }

  // per-cell derivable counts over a given pool of singleton goals
  std::map<std::string, int> summarize(const std::vector<Term>& pool) {
    std::map<std::string, int> out;
    for (int u = 0; u <= cfg_.max_u; ++u)
      for (int t = 0; t <= cfg_.max_t; ++t)
        for (int l = 0; l <= cfg_.max_len; ++l) {
          int n = 0;
          for (Term p : pool)
            if (derivable(Sequent::of({p}), Rank{u, t, l})) ++n;
          out["(" + std::to_string(u) + "," + std::to_string(t) + "," +
              std::to_string(l) + ")"] = n;
        }
    return out;
  }

 private:
  struct Key {
    uint32_t seq;
    Rank r;
    bool operator==(const Key& o) const { return seq == o.seq && r == o.r; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = k.seq;
      h = h * 31 + k.r.u;
      h = h * 31 + k.r.t;
      h = h * 31 + k.r.len;
      return std::hash<size_t>()(h);
    }
  };

  SeqConfig cfg_;
  Canonizer canon_;
  std::vector<Term> domain_;
  std::unordered_map<Sequent, uint32_t, SequentHash> ids_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<Term, NnfP> views_;
  std::map<std::pair<int, Term>, bool> class_memo_;
  bool budget_exhausted_ = false;

  uint32_t intern(const Sequent& s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(ids_.size());
    ids_.emplace(s, id);
    return id;
  }

  bool search(const Sequent& g, Rank r) {
    // (Lit) and (Log) close at any rank
    for (Term c : g.codes) {
      NnfP n = view(c);
      if (n && literal_true(n)) return true;
    }
    for (Term c : g.codes) {
      NnfP n = view(c);
      if (n && n->kind == NKind::Lit && n->atom == AtomKind::TruthOf && n->pos) {
        Term negc = code_of(nnf_negate(n));
        if (g.contains(negc)) return true;  // (Log)
      }
    }
    // logical rules
    if (r.len >= 1) {
      Rank pr{r.u, r.t, r.len - 1};
      for (Term c : g.codes) {
        NnfP n = view(c);
        if (!n) continue;
        switch (n->kind) {
          case NKind::And: {
            if (derivable(g.with(code_of(n->n1)), pr) &&
                derivable(g.with(code_of(n->n2)), pr))
              return true;
            break;
          }
          case NKind::Or: {
            if (derivable(g.with(code_of(n->n1)), pr) ||
                derivable(g.with(code_of(n->n2)), pr))
              return true;
            break;
          }
          case NKind::All: {
            bool all = true;
            for (Term d : domain_) {
              NnfP inst = instantiate(n->n1, n->binder, d);
              if (!derivable(g.with(code_of(inst)), pr)) {
                all = false;
                break;
              }
            }
            if (all) return true;
            break;
          }
          case NKind::Ex: {
            for (Term d : domain_) {
              NnfP inst = instantiate(n->n1, n->binder, d);
              if (derivable(g.with(code_of(inst)), pr)) return true;
            }
            break;
          }
          default:
            break;
        }
      }
    }
    // (T) / (negT): empty premise context, lower T-rank and length
    if (r.t >= 1 && r.len >= 1) {
      Rank pr{r.u, r.t - 1, r.len - 1};
      for (Term c : g.codes) {
        NnfP n = view(c);
        if (!n || n->kind != NKind::Lit || n->atom != AtomKind::TruthOf) continue;
        Term inner = n->pos ? nnf_code(n->a) : neg_nnf_code(n->a);
        if (inner && derivable(Sequent::of({inner}), pr)) return true;
      }
    }
    // (Weak)
    if (r.u >= 1 && derivable(g, Rank{r.u - 1, cfg_.max_t, cfg_.max_len})) return true;
    // (U) / (negU) with the dagger side condition
    if (r.u >= 1) {
      for (Term c : g.codes) {
        NnfP n = view(c);
        if (!n || n->kind != NKind::Lit || n->atom != AtomKind::LAt) continue;
        Term a = n->a, b = n->b;
        if (!class_below(r.u, a)) continue;
        if (!fresh_below(r.u, a, b)) continue;
        Term inner = nnf_code(b);
        bool inner_derivable =
            inner && derivable_below(Sequent::of({inner}), r.u);
        if (n->pos ? inner_derivable : !inner_derivable) return true;
      }
    }
    return false;
  }
};

// ---- derivation trees --------------------------------------------------------

enum class Rule {
  Lit, Log, And, OrL, OrR, Exists, ForAll, TIntro, NegTIntro, Weak, UIntro, NegUIntro
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Lit: return "Lit";
    case Rule::Log: return "Log";
    case Rule::And: return "And";
    case Rule::OrL: return "OrL";
    case Rule::OrR: return "OrR";
    case Rule::Exists: return "Exists";
    case Rule::ForAll: return "ForAll";
    case Rule::TIntro: return "T";
    case Rule::NegTIntro: return "NegT";
    case Rule::Weak: return "Weak";
    case Rule::UIntro: return "U";
    case Rule::NegUIntro: return "NegU";
  }
  return "?";
}

// evidence for the dagger side condition of (U)/(negU)
struct SideCert {
  Term cls = nullptr;  // the class witness a, certified below the node's u-rank
};

struct Derivation;
using Deriv = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent conclusion;
  Rank rank;
  Rule rule;
  Term principal = nullptr;  // introduced member (code); Log: the positive T-atom
  Term witness = nullptr;    // Exists: witness term
  std::vector<Deriv> premises;
  std::optional<SideCert> cert;
};

inline Deriv mk_deriv(Sequent concl, Rank r, Rule rule, Term principal = nullptr,
                      std::vector<Deriv> prem = {}, Term witness = nullptr,
                      std::optional<SideCert> cert = std::nullopt) {
  auto d = std::make_shared<Derivation>();
  auto* m = const_cast<Derivation*>(d.get());
  m->conclusion = std::move(concl);
  m->rank = r;
  m->rule = rule;
  m->principal = principal;
  m->witness = witness;
  m->premises = std::move(prem);
  m->cert = cert;
  return d;
}

enum class CheckOutcome { Pass, Fail, Unverifiable };

struct CheckReport {
  CheckOutcome outcome = CheckOutcome::Pass;
  std::string message;
};

// node-by-node validation against Table 2; dagger certificates are verified
// against the atlas (bounds exceeded yield Unverifiable, not Fail)
inline CheckReport check(const Deriv& d, SequentAtlas& atlas) {
  auto fail = [&](const std::string& m) { return CheckReport{CheckOutcome::Fail, m}; };
  const Rank& r = d->rank;
  if (r.u < 0 || r.t < 0 || r.len < 0) return fail("negative rank");
  auto premise_ok = [&](const Deriv& p, bool lower_u, bool lower_t, bool lower_len) {
    if (lower_u ? !(p->rank.u < r.u) : !(p->rank.u <= r.u)) return false;
    if (lower_t ? !(p->rank.t < r.t) : !(p->rank.t <= r.t)) return false;
    if (lower_len ? !(p->rank.len < r.len) : !(p->rank.len <= r.len)) return false;
    return true;
  };
  auto check_all_premises = [&]() -> std::optional<CheckReport> {
    for (const Deriv& p : d->premises) {
      CheckReport cr = check(p, atlas);
      if (cr.outcome != CheckOutcome::Pass) return cr;
    }
    return std::nullopt;
  };

  switch (d->rule) {
    case Rule::Lit: {
      if (!d->premises.empty()) return fail("(Lit) takes no premises");
      if (!d->principal || !d->conclusion.contains(d->principal))
        return fail("(Lit) principal not in conclusion");
      NnfP n = atlas.view(d->principal);
      if (!n || !atlas.literal_true(n)) return fail("(Lit) literal not true in the term model");
      return {};
    }
    case Rule::Log: {
      if (!d->premises.empty()) return fail("(Log) takes no premises");
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      if (!n || n->kind != NKind::Lit || n->atom != AtomKind::TruthOf || !n->pos)
        return fail("(Log) principal must be a positive T-atom");
      if (!d->conclusion.contains(d->principal)) return fail("(Log) T(a) missing");
      Term neg = atlas.code_of(nnf_negate(n));
      if (!d->conclusion.contains(neg)) return fail("(Log) negated T(a) missing");
      return {};
    }
    case Rule::And:
    case Rule::OrL:
    case Rule::OrR: {
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      if (!n) return fail("principal does not decode");
      if (!d->conclusion.contains(d->principal)) return fail("principal not in conclusion");
      bool is_and = d->rule == Rule::And;
      if (is_and && n->kind != NKind::And) return fail("(And) on a non-conjunction");
      if (!is_and && n->kind != NKind::Or) return fail("(Or) on a non-disjunction");
      size_t want = is_and ? 2 : 1;
      if (d->premises.size() != want) return fail("wrong premise count");
      NnfP pick = is_and ? nullptr : (d->rule == Rule::OrL ? n->n1 : n->n2);
      for (size_t i = 0; i < d->premises.size(); ++i) {
        const Deriv& p = d->premises[i];
        NnfP sub = is_and ? (i == 0 ? n->n1 : n->n2) : pick;
        Sequent expect = d->conclusion.with(atlas.code_of(sub));
        if (!(p->conclusion == expect)) return fail("premise sequent mismatch");
        if (!premise_ok(p, false, false, true)) return fail("premise rank must lower len");
      }
      if (auto bad = check_all_premises()) return *bad;
      return {};
    }
    case Rule::Exists: {
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      if (!n || n->kind != NKind::Ex) return fail("(Exists) principal");
      if (!d->conclusion.contains(d->principal)) return fail("principal not in conclusion");
      if (d->premises.size() != 1 || !d->witness) return fail("(Exists) shape");
      NnfP inst = atlas.instantiate(n->n1, n->binder, d->witness);
      Sequent expect = d->conclusion.with(atlas.code_of(inst));
      if (!(d->premises[0]->conclusion == expect)) return fail("(Exists) premise mismatch");
      if (!premise_ok(d->premises[0], false, false, true)) return fail("(Exists) rank");
      if (auto bad = check_all_premises()) return *bad;
      return {};
    }
    case Rule::ForAll: {
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      if (!n || n->kind != NKind::All) return fail("(ForAll) principal");
      if (!d->conclusion.contains(d->principal)) return fail("principal not in conclusion");
      const auto& dom = atlas.domain();
      if (d->premises.size() != dom.size())
        return fail("(ForAll) needs one premise per domain element");
      for (size_t i = 0; i < dom.size(); ++i) {
        NnfP inst = atlas.instantiate(n->n1, n->binder, dom[i]);
        Sequent expect = d->conclusion.with(atlas.code_of(inst));
        if (!(d->premises[i]->conclusion == expect)) return fail("(ForAll) premise mismatch");
        if (!premise_ok(d->premises[i], false, false, true)) return fail("(ForAll) rank");
      }
      if (auto bad = check_all_premises()) return *bad;
      return {};
    }
    case Rule::TIntro:
    case Rule::NegTIntro: {
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      bool pos = d->rule == Rule::TIntro;
      if (!n || n->kind != NKind::Lit || n->atom != AtomKind::TruthOf || n->pos != pos)
        return fail("(T)/(negT) principal shape");
      if (!d->conclusion.contains(d->principal)) return fail("principal not in conclusion");
      if (d->premises.size() != 1) return fail("(T) takes one premise");
      const Deriv& p = d->premises[0];
      if (p->conclusion.codes.size() != 1)
        return fail("the context of the (T)/(negT) premise must be empty");
      Term inner = pos ? atlas.nnf_code(n->a) : atlas.neg_nnf_code(n->a);
      if (!inner || p->conclusion.codes[0] != inner) return fail("(T) premise formula");
      if (!premise_ok(p, false, true, true)) return fail("(T) rank must lower t and len");
      if (auto bad = check_all_premises()) return *bad;
      return {};
    }
    case Rule::Weak: {
      if (d->premises.size() != 1) return fail("(Weak) takes one premise");
      const Deriv& p = d->premises[0];
      if (!(p->conclusion == d->conclusion)) return fail("(Weak) changes the sequent");
      if (!(p->rank.u < r.u)) return fail("(Weak) premise must lower u");
      if (auto bad = check_all_premises()) return *bad;
      return {};
    }
    case Rule::UIntro:
    case Rule::NegUIntro: {
      NnfP n = d->principal ? atlas.view(d->principal) : nullptr;
      bool pos = d->rule == Rule::UIntro;
      if (!n || n->kind != NKind::Lit || n->atom != AtomKind::LAt || n->pos != pos)
        return fail("(U)/(negU) principal shape");
      if (!d->conclusion.contains(d->principal)) return fail("principal not in conclusion");
      if (r.u < 1) return fail("(U) needs a successor u-rank");
      if (!d->cert || d->cert->cls != n->a) return fail("missing or mismatched class certificate");
      if (r.u - 1 > atlas.config().max_u)
        return {CheckOutcome::Unverifiable, "certificate beyond atlas bounds"};
      if (!atlas.class_below(r.u, n->a)) return fail("class condition fails below u");
      if (!atlas.fresh_below(r.u, n->a, n->b)) return fail("freshness condition fails below u");
      Term inner = atlas.nnf_code(n->b);
      if (pos) {
        if (d->premises.size() != 1) return fail("(U) takes one premise");
        const Deriv& p = d->premises[0];
        if (p->conclusion.codes.size() != 1 || !inner || p->conclusion.codes[0] != inner)
          return fail("(U) premise must be the singleton b");
        if (!(p->rank.u < r.u)) return fail("(U) premise must lower u");
        if (auto bad = check_all_premises()) return *bad;
      } else {
        if (!d->premises.empty()) return fail("(negU) takes no premises");
        bool inner_derivable = inner && atlas.derivable_below(Sequent::of({inner}), r.u);
        if (inner_derivable) return fail("(negU) negative premise fails: b derives below u");
      }
      return {};
    }
  }
  return fail("unknown rule");
}


// ---- complexity measure -------------------------------------------------------

inline int complexity(const NnfP& n) {
  switch (n->kind) {
    case NKind::Lit: return 0;
    case NKind::And:
    case NKind::Or: return std::max(complexity(n->n1), complexity(n->n2)) + 1;
    case NKind::All:
    case NKind::Ex: return complexity(n->n1) + 1;
  }
  return 0;
}

// ---- weakening as a transformation (Lemma-7.8 style) --------------------------

inline Deriv weaken_derivation(const Deriv& d, const Sequent& extra) {
  Sequent concl = d->conclusion.unite(extra);
  switch (d->rule) {
    case Rule::Lit:
    case Rule::Log:
    case Rule::NegUIntro:
      return mk_deriv(concl, d->rank, d->rule, d->principal, {}, d->witness, d->cert);
    case Rule::TIntro:
    case Rule::NegTIntro:
    case Rule::UIntro:
      // premise contexts are fixed by the rule; only the conclusion widens
      return mk_deriv(concl, d->rank, d->rule, d->principal, d->premises, d->witness,
                      d->cert);
    case Rule::Weak: {
      std::vector<Deriv> ps = {weaken_derivation(d->premises[0], extra)};
      return mk_deriv(concl, d->rank, d->rule, d->principal, std::move(ps));
    }
    default: {
      std::vector<Deriv> ps;
      ps.reserve(d->premises.size());
      for (const Deriv& p : d->premises) ps.push_back(weaken_derivation(p, extra));
      return mk_deriv(concl, d->rank, d->rule, d->principal, std::move(ps), d->witness,
                      d->cert);
    }
  }
}

// ---- cut elimination ----------------------------------------------------------

struct CutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Executable form of the cut-admissibility argument: from derivations of
// G,A and D,~A produce a derivation of G,D whose u-rank stays within the
// maximum of the inputs. The impossible principal clashes ((T) against
// (negT), (U) against (negU), true literal against true negation) raise
// CutError: reaching one means the calculus itself is unsound.
class CutEliminator {
 public:
  explicit CutEliminator(SequentAtlas& atlas) : atlas_(atlas) {}

  Deriv eliminate(const Deriv& d1, const Deriv& d2, Term cut_code) {
    Term a = atlas_.nnf_code(cut_code);
    if (!a) throw CutError("cut formula does not decode");
    Term na = atlas_.neg_nnf_code(cut_code);
    steps_ = 0;
    Deriv out = cut(d1, d2, a, na);
    return relabel(out);
  }

  // recomputes minimal consistent ranks bottom-up; U/negU/Weak nodes keep
  // their u-rank (their side conditions are rank-sensitive)
  Deriv relabel(const Deriv& d) {
    std::vector<Deriv> ps;
    ps.reserve(d->premises.size());
    for (const Deriv& p : d->premises) ps.push_back(relabel(p));
    Rank r{0, 0, 0};
    switch (d->rule) {
      case Rule::Lit:
      case Rule::Log:
        break;
      case Rule::And:
      case Rule::OrL:
      case Rule::OrR:
      case Rule::Exists:
      case Rule::ForAll:
        for (const Deriv& p : ps) {
          r.u = std::max(r.u, p->rank.u);
          r.t = std::max(r.t, p->rank.t);
          r.len = std::max(r.len, p->rank.len);
        }
        r.len += 1;
        break;
      case Rule::TIntro:
      case Rule::NegTIntro:
        r.u = ps[0]->rank.u;
        r.t = ps[0]->rank.t + 1;
        r.len = ps[0]->rank.len + 1;
        break;
      case Rule::Weak:
        r = Rank{ps[0]->rank.u + 1, 0, 0};
        break;
      case Rule::UIntro:
      case Rule::NegUIntro:
        r = Rank{d->rank.u, 0, 0};  // keep: the dagger was certified here
        break;
    }
    return mk_deriv(d->conclusion, r, d->rule, d->principal, std::move(ps), d->witness,
                    d->cert);
  }

 private:
  SequentAtlas& atlas_;
  uint64_t steps_ = 0;

  [[noreturn]] void impossible(const std::string& what) {
    throw CutError("impossible case reached (" + what + "): internal soundness failure");
  }

  bool is_principal(const Deriv& d, Term a) const {
    switch (d->rule) {
      case Rule::Weak:
        return false;
      case Rule::Log:
        return false;  // handled as passive; the axiom pair is in the context
      default:
        return d->principal == a;
    }
  }

  Deriv cut(const Deriv& d1, const Deriv& d2, Term a, Term na) {
    if (++steps_ > 2'000'000) throw CutError("cut-elimination budget exhausted");
    if (!d1->conclusion.contains(a)) throw CutError("left premise lacks the cut formula");
    if (!d2->conclusion.contains(na)) throw CutError("right premise lacks its negation");
    Sequent g = d1->conclusion.without(a);
    Sequent dl = d2->conclusion.without(na);
    Sequent target = g.unite(dl);

    if (d1->rule == Rule::Weak) return cut(d1->premises[0], d2, a, na);
    if (d2->rule == Rule::Weak) return cut(d1, d2->premises[0], a, na);

    // (Log) whose axiom pair includes the cut formula: the other side of the
    // pair survives in the context, so weakening the opposite premise closes
    if (d1->rule == Rule::Log) {
      NnfP pa = atlas_.view(d1->principal);
      Term pos = d1->principal;
      Term neg = atlas_.code_of(nnf_negate(pa));
      if (a == pos || a == neg) {
        Term other = (a == pos) ? neg : pos;
        if (!g.contains(other)) impossible("(Log) pair bookkeeping");
        return weaken_derivation(d2, target);
      }
    }
    if (d2->rule == Rule::Log) {
      NnfP pa = atlas_.view(d2->principal);
      Term pos = d2->principal;
      Term neg = atlas_.code_of(nnf_negate(pa));
      if (na == pos || na == neg) {
        Term other = (na == pos) ? neg : pos;
        if (!dl.contains(other)) impossible("(Log) pair bookkeeping");
        return weaken_derivation(d1, target);
      }
    }

    if (!is_principal(d1, a)) return push_into(d1, d2, a, na, /*left=*/true);
    if (!is_principal(d2, na)) return push_into(d2, d1, na, a, /*left=*/false);

    // both principal
    NnfP va = atlas_.view(a);
    switch (va->kind) {
      case NKind::Lit:
        // two true literals that negate each other cannot both pass (Lit);
        // principal T- or L-literals clash by the rank or freshness argument
        impossible(std::string("principal literal clash on ") + to_sexpr(a));
      case NKind::And: {
        // d1: (And); d2: (OrL/OrR) on the De Morgan dual
        int i = d2->rule == Rule::OrL ? 0 : 1;
        NnfP sub = i == 0 ? va->n1 : va->n2;
        Term ai = atlas_.code_of(sub);
        Term nai = atlas_.code_of(nnf_negate(sub));
        Deriv r1 = cut(d1, d2->premises[0], a, na);      // G,D,~Ai
        Deriv r2 = cut(d1->premises[i], d2, a, na);      // G,Ai,D
        return cut(r2, r1, ai, nai);
      }
      case NKind::Or: {
        int i = d1->rule == Rule::OrL ? 0 : 1;
        NnfP sub = i == 0 ? va->n1 : va->n2;
        Term ai = atlas_.code_of(sub);
        Term nai = atlas_.code_of(nnf_negate(sub));
        Deriv r1 = cut(d1->premises[0], d2, a, na);      // G,Ai,D
        Deriv r2 = cut(d1, d2->premises[i], a, na);      // G,D,~Ai
        return cut(r1, r2, ai, nai);
      }
      case NKind::All: {
        // d1: (ForAll); d2: (Exists) with a witness
        Term c = d2->witness;
        const auto& dom = atlas_.domain();
        size_t idx = dom.size();
        for (size_t k = 0; k < dom.size(); ++k)
          if (dom[k] == c) {
            idx = k;
            break;
          }
        if (idx == dom.size())
          throw CutError("existential witness outside the finitized domain");
        NnfP sub = atlas_.instantiate(va->n1, va->binder, c);
        Term bc = atlas_.code_of(sub);
        Term nbc = atlas_.code_of(nnf_negate(sub));
        Deriv r1 = cut(d1->premises[idx], d2, a, na);    // G,B(c),D
        Deriv r2 = cut(d1, d2->premises[0], a, na);      // G,D,~B(c)
        return cut(r1, r2, bc, nbc);
      }
      case NKind::Ex: {
        // mirror image: d1: (Exists), d2: (ForAll)
        Term c = d1->witness;
        const auto& dom = atlas_.domain();
        size_t idx = dom.size();
        for (size_t k = 0; k < dom.size(); ++k)
          if (dom[k] == c) {
            idx = k;
            break;
          }
        if (idx == dom.size())
          throw CutError("existential witness outside the finitized domain");
        NnfP sub = atlas_.instantiate(va->n1, va->binder, c);
        Term bc = atlas_.code_of(sub);
        Term nbc = atlas_.code_of(nnf_negate(sub));
        Deriv r1 = cut(d1->premises[0], d2, a, na);      // G,B(c),D
        Deriv r2 = cut(d1, d2->premises[idx], a, na);    // G,D,~B(c)
        return cut(r1, r2, bc, nbc);
      }
    }
    impossible("unhandled principal shape");
  }

  // The cut formula is passive in dmain: push the cut into its premises.
  // Call convention: `a` is always dmain's member, `na` the other side's.
  Deriv push_into(const Deriv& dmain, const Deriv& dother, Term a, Term na, bool left) {
    Sequent gm = dmain->conclusion.without(a);
    Sequent other = dother->conclusion.without(na);
    Sequent target = gm.unite(other);
    auto cut_prem = [&](const Deriv& p) {
      return left ? cut(p, dother, a, na) : cut(dother, p, na, a);
    };
    switch (dmain->rule) {
      case Rule::Lit:
      case Rule::Log:
        if (dmain->rule == Rule::Log) {
          NnfP pa = atlas_.view(dmain->principal);
          Term neg = atlas_.code_of(nnf_negate(pa));
          if (!target.contains(dmain->principal) || !target.contains(neg))
            impossible("(Log) context lost");
        } else if (!target.contains(dmain->principal)) {
          impossible("(Lit) context lost");
        }
        return mk_deriv(target, dmain->rank, dmain->rule, dmain->principal, {},
                        dmain->witness, dmain->cert);
      case Rule::TIntro:
      case Rule::NegTIntro:
      case Rule::UIntro:
      case Rule::NegUIntro:
        // premises have fixed contexts; only the conclusion changes
        return mk_deriv(target, dmain->rank, dmain->rule, dmain->principal,
                        dmain->premises, dmain->witness, dmain->cert);
      default: {
        std::vector<Deriv> ps;
        ps.reserve(dmain->premises.size());
        for (const Deriv& p : dmain->premises) ps.push_back(cut_prem(p));
        return mk_deriv(target, dmain->rank, dmain->rule, dmain->principal,
                        std::move(ps), dmain->witness, dmain->cert);
      }
    }
  }
};

inline Deriv cut_eliminate(const Deriv& d1, const Deriv& d2, Term cut_code,
                           SequentAtlas& atlas) {
  return CutEliminator(atlas).eliminate(d1, d2, cut_code);
}

}  // namespace fsw

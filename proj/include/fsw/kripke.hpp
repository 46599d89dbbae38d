#pragma once

#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fsw/enumerate.hpp"
#include "fsw/reduce.hpp"
#include "fsw/term.hpp"
#include "fsw/trivalue.hpp"

namespace fsw {

// query verdict: No means "provably not in the least fixed point at this
// stage"; Unknown means a budget or fuel bound was hit along the way.
enum class QV : uint8_t { No = 0, Yes = 1, Unknown = 2 };

inline QV qv_and(QV a, QV b) {
  if (a == QV::No || b == QV::No) return QV::No;
  if (a == QV::Unknown || b == QV::Unknown) return QV::Unknown;
  return QV::Yes;
}
inline QV qv_or(QV a, QV b) {
  if (a == QV::Yes || b == QV::Yes) return QV::Yes;
  if (a == QV::Unknown || b == QV::Unknown) return QV::Unknown;
  return QV::No;
}

struct ModelConfig {
  int universe_depth = 2;
  int max_stages = 8;
  uint64_t inner_budget = 50'000'000;  // eval-call budget per stage
  Fuel fuel{10000};
  Schema schema = Schema::SK;
  std::vector<Term> extra_domain;  // additional quantifier-domain elements
};

// A truth set at one stage, with the ledger of certified universe codes.
struct StageSet {
  std::unordered_set<Term> members;
  std::map<Term, int> ledger;  // class code -> first stage certified
  bool fixed = true;           // false when a budget was exhausted
};

// Canonical representative of a code: full normal form when one exists
// within fuel, otherwise the weak-head form with recursively canonicalized
// arguments. Self-referential codes (built with rec) close up into finite
// cyclic forms: an in-progress code is kept as-is when met again below
// itself, and the memo then maps it to its cycle-closed form.
class Canonizer {
 public:
  explicit Canonizer(Fuel fuel) : fuel_(fuel) {}

  Term canon(Term t) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    if (in_progress_.count(t)) return t;
    if (depth_ > 2048) {
      ++failures_;
      return nullptr;
    }
    in_progress_.insert(t);
    ++depth_;
    Term out = compute(t);
    --depth_;
    in_progress_.erase(t);
    if (!out) ++failures_;
    memo_.emplace(t, out);
    return out;
  }

  uint64_t failures() const { return failures_; }

 private:
  Fuel fuel_;
  std::unordered_map<Term, Term> memo_;
  std::unordered_set<Term> in_progress_;
  int depth_ = 0;
  uint64_t failures_ = 0;

  // children-first graph evaluation: canonicalize the children, then iterate
  // root contractions (re-canonicalizing the children each time). For
  // normalizing terms this computes the normal form; for rec-built codes the
  // self-application cycles close up on shared hash-consed nodes.
  Term compute(Term t) {
    if (t->tag != Tag::App) return t;
    Term f = canon(t->fun);
    Term a = canon(t->arg);
    if (!f || !a) return nullptr;
    Term u = app(f, a);
    if (u != t) return canon(u);
    Term cur = u;
    std::unordered_set<Term> seen;
    for (uint64_t i = 0; i < fuel_.budget; ++i) {
      if (!seen.insert(cur).second) return cur;  // genuine cycle closed
      auto c = detail::contract(cur);
      if (!c) return cur;  // root-stuck with canonical children
      Term n = *c;
      if (n->tag != Tag::App) return canon(n);
      Term nf = canon(n->fun), na = canon(n->arg);
      if (!nf || !na) return nullptr;
      cur = app(nf, na);
    }
    ++failures_;
    return nullptr;
  }
};

class Tower {
 public:
  explicit Tower(ModelConfig cfg) : cfg_(std::move(cfg)) {
    domain_ = enumerate_universe(cfg_.universe_depth, cfg_.fuel);
    std::unordered_set<Term> have(domain_.begin(), domain_.end());
    for (Term t : cfg_.extra_domain) {
      Term c = canonizer_.canon(t);
      if (c && have.insert(c).second) domain_.push_back(c);
    }
    stages_.emplace_back();  // Z_0 = empty
    stages_[0].finalized = true;
    stages_[0].frozen = true;
  }

  // seeds stage `seed_index` with a frozen truth set (the phi_lfp entry point)
  Tower(ModelConfig cfg, const StageSet& seed, int seed_index) : Tower(std::move(cfg)) {
    while (static_cast<int>(stages_.size()) <= seed_index) {
      stages_.emplace_back();
      stages_.back().finalized = true;
      stages_.back().frozen = true;
    }
    stages_[seed_index].trues = seed.members;
    for (auto& [f, st] : seed.ledger) ledger_.emplace(f, st);
  }

  // Z_{i+1} = lfp of Phi(X, Z_i, ., i+1), saturated over the domain;
  // stops at the first fixed point or at max_stages.
  void build() {
    for (int i = 1; i <= cfg_.max_stages; ++i) {
      compute_stage(i);
      if (stage_equal(i, i - 1)) {
        final_ = i - 1;
        reached_fixed_point_ = true;
        return;
      }
    }
    final_ = cfg_.max_stages;
    reached_fixed_point_ = false;
  }

  int final_stage() const { return final_; }
  int stage_count() const { return static_cast<int>(stages_.size()); }
  bool reached_fixed_point() const { return reached_fixed_point_; }
  bool budget_exhausted() const {
    for (const auto& s : stages_)
      if (s.budget_exhausted) return true;
    return false;
  }
  const std::vector<Term>& domain() const { return domain_; }
  const ModelConfig& config() const { return cfg_; }

  StageSet stage_view(int i) {
    ensure_stage(i);
    StageSet out;
    out.members = stages_[i].trues;
    out.fixed = !stages_[i].budget_exhausted;
    for (auto& [f, st] : ledger_)
      if (st <= i) out.ledger.emplace(f, st);
    return out;
  }

  const std::map<Term, int>& ledger() const { return ledger_; }

  // truth at a stage (runs the evaluation loop for the code's closure)
  QV truth_at(int stage, Term code) {
    ensure_stage(stage);
    Term c = canon(code);
    if (!c) return QV::Unknown;
    return decide(stage, c);
  }

  // Queries are answered at the limit stage. After the domain-relative fixed
  // point F, a fresh code's value can still change once per lim-nesting
  // level; `extra` bumps the evaluation stage accordingly (codes whose
  // chains matter must be placed in extra_domain so F accounts for them).
  QV query(Term code, int extra = 1) { return truth_at(final_ + extra, code); }
  bool is_true(Term code) { return query(code) == QV::Yes; }
  bool is_true_neg(Term code) { return query(dot_neg(code)) == QV::Yes; }
  bool is_prop(Term code) { return is_true(code) || is_true_neg(code); }

  QV prop_qv(Term code) {
    QV a = query(code);
    if (a == QV::Yes) return QV::Yes;
    QV b = query(dot_neg(code));
    if (b == QV::Yes) return QV::Yes;
    if (a == QV::Unknown || b == QV::Unknown) return QV::Unknown;
    return QV::No;
  }

  // C(f): f x is a proposition for every domain element x; evaluated one
  // stage past the domain fixed point so that universes count as classes.
  QV class_qv(Term f) {
    ensure_stage(final_ + 1);
    return class_over(final_ + 1, f);
  }
  bool is_class(Term f) { return class_qv(f) == QV::Yes; }

  // U(u): u has head lim f with f a class
  bool is_universe(Term u) {
    Term c = canon(u);
    if (!c) return false;
    if (c->tag != Tag::App || c->fun->tag != Tag::Lim) return false;
    return is_class(c->arg);
  }

  // f ⊏ g: positive and negative facts about f are asserted inside g
  bool reflects(Term f, Term g) {
    for (Term x : domain_) {
      Term fx = canon(app(f, x));
      if (!fx) return false;
      if (query(fx) == QV::Yes && query(app(g, fx)) != QV::Yes) return false;
      Term nfx = canon(dot_neg(fx));
      if (nfx && query(nfx) == QV::Yes && query(app(g, nfx)) != QV::Yes) return false;
    }
    return true;
  }

  bool in_universe(Term code) {
    Term c = canon(code);
    if (!c) return false;
    if (domain_set_.empty()) domain_set_.insert(domain_.begin(), domain_.end());
    return domain_set_.count(c) > 0;
  }

  uint64_t canon_failures() const { return canonizer_.failures(); }

  Term canon(Term t) { return canonizer_.canon(t); }

 private:
  struct Stage {
    std::unordered_set<Term> trues;
    std::unordered_map<Term, QV> pass_cache;  // per-pass No/Unknown results
    std::unordered_map<Term, QV> settled;     // stable No/Unknown (finalized)
    std::unordered_map<Term, size_t> all_watch;
    std::unordered_map<Term, size_t> exists_watch;
    std::unordered_map<Term, QV> class_memo;
    std::unordered_map<Term, size_t> class_watch;
    bool finalized = false;
    bool frozen = false;  // seeded stage: queries answer from trues only
    bool budget_exhausted = false;
    bool grew = false;
    uint64_t evals = 0;
  };

  ModelConfig cfg_;
  std::vector<Term> domain_;
  std::unordered_set<Term> domain_set_;
  std::vector<Stage> stages_;
  std::map<Term, int> ledger_;
  Canonizer canonizer_{cfg_.fuel};
  int final_ = 0;
  bool reached_fixed_point_ = false;

  void ensure_stage(int i) {
    while (static_cast<int>(stages_.size()) <= i) {
      compute_stage(static_cast<int>(stages_.size()));
    }
  }

  void compute_stage(int i) {
    assert(static_cast<int>(stages_.size()) == i);
    stages_.emplace_back();
    Stage& st = stages_[i];
    // chaotic iteration: full passes over the domain until nothing new
    for (;;) {
      st.grew = false;
      st.pass_cache.clear();
      for (Term d : domain_) eval(i, d);
      if (!st.grew || st.budget_exhausted) break;
    }
    // results of the converged pass are stable from now on
    st.settled = std::move(st.pass_cache);
    st.pass_cache.clear();
    st.finalized = true;
  }

  bool stage_equal(int i, int j) {
    // carry-over makes trues[i] ⊇ trues[j] once every j-member is queried at i
    for (Term t : stages_[j].trues)
      if (decide(i, t) != QV::Yes) return false;
    return stages_[i].trues.size() == stages_[j].trues.size();
  }

  // evaluation loop: repeat passes over the query until no new members appear
  QV decide(int i, Term c) {
    if (i == 0) return stages_[0].trues.count(c) ? QV::Yes : QV::No;
    Stage& st = stages_[i];
    if (st.trues.count(c)) return QV::Yes;
    if (st.frozen) return QV::No;
    if (auto it = st.settled.find(c); it != st.settled.end()) return it->second;
    QV r = QV::No;
    for (;;) {
      st.grew = false;
      st.pass_cache.clear();
      r = eval(i, c);
      if (!st.grew) break;  // only a converged pass leaves stable facts
    }
    if (st.finalized) {
      for (auto& [k, v] : st.pass_cache) st.settled.emplace(k, v);
    }
    st.pass_cache.clear();
    return r;
  }

  QV eval(int i, Term c) {
    Stage& st = stages_[i];
    if (st.trues.count(c)) return QV::Yes;
    if (auto is = st.settled.find(c); is != st.settled.end()) return is->second;
    auto it = st.pass_cache.find(c);
    if (it != st.pass_cache.end()) return it->second;
    if (++st.evals > cfg_.inner_budget) {
      st.budget_exhausted = true;
      return QV::Unknown;
    }
    st.pass_cache[c] = QV::No;  // cycle cut: not in the least fixed point
    QV v = clauses(i, c);
    if (v == QV::Yes) {
      st.trues.insert(c);
      st.grew = true;
      st.pass_cache.erase(c);
    } else {
      st.pass_cache[c] = v;
    }
    return v;
  }

  QV eval_term(int i, Term raw) {
    Term c = canon(raw);
    if (!c) return QV::Unknown;
    return eval(i, c);
  }

  // full decision at an earlier (finalized) stage
  QV prev(int j, Term raw) {
    Term c = canon(raw);
    if (!c) return QV::Unknown;
    return decide(j, c);
  }

  // the Phi clauses with Y = Z_{i-1}; carry-over first
  QV clauses(int i, Term a) {
    QV carry = prev(i - 1, a);
    if (carry == QV::Yes) return QV::Yes;
    QV body = clause_body(i, a);
    if (body == QV::Yes) return QV::Yes;
    if (carry == QV::Unknown || body == QV::Unknown) return QV::Unknown;
    return QV::No;
  }

  // equality in the closed term model, decided on canonical forms. The
  // children-first canonicalizer is a normalizing strategy, so a cyclic
  // canonical form certifies that no normal form exists: such a code is
  // definitely distinct from any normal form.
  QV atom_eq(Term x, Term y, bool positive) {
    Term cx = canon(x), cy = canon(y);
    if (!cx || !cy) return QV::Unknown;
    if (cx == cy) return positive ? QV::Yes : QV::No;
    bool nx = in_normal_form(cx), ny = in_normal_form(cy);
    if (nx && ny) return positive ? QV::No : QV::Yes;
    if (nx != ny) return positive ? QV::No : QV::Yes;
    return QV::Unknown;  // two distinct diverging codes: not decided here
  }

  QV atom_nat(Term x, bool positive) {
    Term cx = canon(x);
    if (!cx) return QV::Unknown;
    bool n = in_normal_form(cx) && is_numeral(cx);
    return (n == positive) ? QV::Yes : QV::No;
  }

  QV clause_body(int i, Term a) {
    if (a->tag != Tag::App) return QV::No;
    Term h1 = a->fun, x1 = a->arg;
    switch (h1->tag) {
      case Tag::DotN: return atom_nat(x1, true);
      case Tag::DotT: return eval_term(i, x1);  // truth transparency
      case Tag::DotAll: return forall_clause(i, a, x1);
      case Tag::DotNeg: return neg_clause(i, a, x1);
      case Tag::App: break;
      default: return QV::No;
    }
    Term h2 = h1->fun, x2 = h1->arg;
    switch (h2->tag) {
      case Tag::DotEq: return atom_eq(x2, x1, true);
      case Tag::DotAnd: {
        QV l = eval_term(i, x2);
        if (l == QV::No) return QV::No;
        return qv_and(l, eval_term(i, x1));
      }
      case Tag::DotImp: {
        if (cfg_.schema == Schema::SK) {
          QV l = eval_term(i, dot_neg(x2));
          if (l == QV::Yes) return QV::Yes;
          return qv_or(l, eval_term(i, x1));
        }
        // AF: T(x -> y) iff [T(x) and T(y)] or T(!x)
        QV tx = eval_term(i, x2);
        QV both = tx == QV::No ? QV::No : qv_and(tx, eval_term(i, x1));
        if (both == QV::Yes) return QV::Yes;
        return qv_or(both, eval_term(i, dot_neg(x2)));
      }
      case Tag::Lim: return lim_clause(i, a, canon(dot_neg(a)), x2, x1, /*positive=*/true);
      default: return QV::No;
    }
  }

  QV neg_clause(int i, Term a, Term inner) {
    Term n = canon(inner);
    if (!n) return QV::Unknown;
    if (n->tag != Tag::App) return QV::No;
    Term h1 = n->fun, x1 = n->arg;
    switch (h1->tag) {
      case Tag::DotN: return atom_nat(x1, false);
      case Tag::DotT: return eval_term(i, dot_neg(x1));
      case Tag::DotNeg: return eval_term(i, x1);  // double negation
      case Tag::DotAll: return neg_forall_clause(i, a, x1);
      case Tag::App: break;
      default: return QV::No;
    }
    Term h2 = h1->fun, x2 = h1->arg;
    switch (h2->tag) {
      case Tag::DotEq: return atom_eq(x2, x1, false);
      case Tag::DotAnd: {
        if (cfg_.schema == Schema::SK) {
          QV l = eval_term(i, dot_neg(x2));
          if (l == QV::Yes) return QV::Yes;
          return qv_or(l, eval_term(i, dot_neg(x1)));
        }
        // AF: [T!x & T!y] or [T!x & Ty] or [Tx & T!y]
        QV tx = eval_term(i, x2), ty = eval_term(i, x1);
        QV nx = eval_term(i, dot_neg(x2)), ny = eval_term(i, dot_neg(x1));
        return qv_or(qv_or(qv_and(nx, ny), qv_and(nx, ty)), qv_and(tx, ny));
      }
      case Tag::DotImp: {
        QV l = eval_term(i, x2);
        if (l == QV::No) return QV::No;
        return qv_and(l, eval_term(i, dot_neg(x1)));
      }
      case Tag::Lim: return lim_clause(i, n, a, x2, x1, /*positive=*/false);
      default: return QV::No;
    }
  }

  QV forall_clause(int i, Term key, Term f) {
    Stage& st = stages_[i];
    size_t start = 0;
    if (auto it = st.all_watch.find(key); it != st.all_watch.end()) start = it->second;
    bool unknown = false;
    for (size_t k = 0; k < domain_.size(); ++k) {
      size_t idx = (start + k) % domain_.size();
      QV v = eval_term(i, app(f, domain_[idx]));
      if (v == QV::No) {
        st.all_watch[key] = idx;
        return QV::No;
      }
      if (v == QV::Unknown) unknown = true;
    }
    return unknown ? QV::Unknown : QV::Yes;
  }

  QV neg_forall_clause(int i, Term key, Term f) {
    Stage& st = stages_[i];
    if (cfg_.schema == Schema::SK) {
      size_t start = 0;
      if (auto it = st.exists_watch.find(key); it != st.exists_watch.end()) start = it->second;
      bool unknown = false;
      for (size_t k = 0; k < domain_.size(); ++k) {
        size_t idx = (start + k) % domain_.size();
        QV v = eval_term(i, dot_neg(app(f, domain_[idx])));
        if (v == QV::Yes) {
          st.exists_watch[key] = idx;
          return QV::Yes;
        }
        if (v == QV::Unknown) unknown = true;
      }
      return unknown ? QV::Unknown : QV::No;
    }
    // AF: [forall x. T(fx) or T(!fx)] and [exists x. T(!fx)]
    QV all = QV::Yes;
    QV ex = QV::No;
    for (Term x : domain_) {
      QV tf = eval_term(i, app(f, x));
      QV nf = eval_term(i, dot_neg(app(f, x)));
      all = qv_and(all, qv_or(tf, nf));
      ex = qv_or(ex, nf);
      if (all == QV::No) return QV::No;
    }
    return qv_and(all, ex);
  }

  // clauses 13/14: successor stages only; class certification against the
  // previous stage; the a ∉ Y, ¬a ∉ Y guards are taken literally
  QV lim_clause(int i, Term pos_code, Term neg_code, Term b, Term c, bool positive) {
    if (i < 1) return QV::No;
    if (!pos_code || !neg_code) return QV::Unknown;
    QV in_y = prev(i - 1, pos_code);
    QV neg_in_y = prev(i - 1, neg_code);
    if (in_y == QV::Yes || neg_in_y == QV::Yes) return QV::No;
    QV guards = (in_y == QV::Unknown || neg_in_y == QV::Unknown) ? QV::Unknown : QV::Yes;
    QV cls = class_over(i - 1, b);
    if (cls == QV::Yes) note_certified(b, i);
    QV cv = prev(i - 1, c);
    QV want = positive ? cv : (cv == QV::Yes ? QV::No : (cv == QV::No ? QV::Yes : QV::Unknown));
    return qv_and(guards, qv_and(cls, want));
  }

  QV class_over(int j, Term b) {
    ensure_stage(j);
    Stage& st = stages_[j];
    if (st.finalized) {
      if (auto it = st.class_memo.find(b); it != st.class_memo.end()) return it->second;
    }
    size_t start = 0;
    if (auto it = st.class_watch.find(b); it != st.class_watch.end()) start = it->second;
    QV out = QV::Yes;
    bool unknown = false;
    for (size_t k = 0; k < domain_.size(); ++k) {
      size_t idx = (start + k) % domain_.size();
      Term x = domain_[idx];
      QV pos = prev(j, app(b, x));
      if (pos == QV::Yes) continue;
      QV neg = prev(j, dot_neg(app(b, x)));
      if (neg == QV::Yes) continue;
      if (pos == QV::Unknown || neg == QV::Unknown) {
        unknown = true;
        continue;
      }
      st.class_watch[b] = idx;
      out = QV::No;
      break;
    }
    if (out == QV::Yes && unknown) out = QV::Unknown;
    if (st.finalized) st.class_memo.emplace(b, out);
    return out;
  }

  void note_certified(Term b, int stage) {
    auto it = ledger_.find(b);
    if (it == ledger_.end() || it->second > stage) ledger_[b] = stage;
  }
};

// ---- the section-4.4 single-operator engine ----

struct AfixResult {
  std::unordered_set<Term> members;
  std::map<Term, int> ledger;  // class code -> burst index certifying it
  bool fixed = true;
  int bursts = 0;
};

class AfixEngine {
 public:
  explicit AfixEngine(ModelConfig cfg) : cfg_(std::move(cfg)) {
    domain_ = enumerate_universe(cfg_.universe_depth, cfg_.fuel);
    std::unordered_set<Term> have(domain_.begin(), domain_.end());
    for (Term t : cfg_.extra_domain) {
      Term c = canonizer_.canon(t);
      if (c && have.insert(c).second) domain_.push_back(c);
    }
    marker_arg_ = dot_eq(constant(Tag::Zero), constant(Tag::Zero));
    gate_arg_ = dot_n(constant(Tag::Zero));
  }

  // saturates A(X,a) = A0(X,a) or (A0-closedness(X) and A1(X,a))
  AfixResult run() {
    // candidate class codes: anything that can head a lim application here
    for (int i = 0; i < kNumConstants; ++i) f_candidates_.push_back(constant(static_cast<Tag>(i)));
    for (Term f : cfg_.extra_domain) f_candidates_.push_back(f);

    AfixResult out;
    int burst = 0;
    for (;;) {
      close_a0();
      // one synchronized A1 burst against the frozen snapshot
      std::vector<Term> add;
      ++burst;
      for (Term f : f_candidates_) {
        Term marker = canon(app(lim(f), marker_arg_));
        Term gate = canon(app(lim(f), gate_arg_));
        if (!marker || !gate) continue;
        if (!trues_.count(marker) || trues_.count(gate)) continue;
        out.ledger.emplace(f, burst);
        for (Term b : b_candidates()) {
          Term pos = canon(app(lim(f), b));
          Term neg = pos ? canon(dot_neg(pos)) : nullptr;
          if (!pos || !neg) continue;
          if (trues_.count(b))
            add.push_back(pos);
          else
            add.push_back(neg);
        }
      }
      if (add.empty()) break;
      for (Term t : add) trues_.insert(t);
      out.bursts = burst;
      if (budget_exhausted_) break;
    }
    out.members = trues_;
    out.fixed = !budget_exhausted_;
    settled_ = std::move(pass_cache_);
    pass_cache_.clear();
    saturated_ = true;
    return out;
  }

  QV membership(Term code) {
    Term c = canon(code);
    if (!c) return QV::Unknown;
    return decide(c);
  }

  const std::vector<Term>& domain() const { return domain_; }
  Term marker_arg() const { return marker_arg_; }
  Term gate_arg() const { return gate_arg_; }

 private:
  ModelConfig cfg_;
  std::vector<Term> domain_;
  std::vector<Term> f_candidates_;
  std::unordered_set<Term> trues_;
  std::unordered_map<Term, QV> pass_cache_;
  std::unordered_map<Term, QV> settled_;
  bool saturated_ = false;
  std::unordered_map<Term, size_t> all_watch_, exists_watch_, class_watch_;
  Canonizer canonizer_{cfg_.fuel};
  Term marker_arg_, gate_arg_;
  bool grew_ = false;
  bool budget_exhausted_ = false;
  uint64_t evals_ = 0;

  Term canon(Term t) { return canonizer_.canon(t); }

  std::vector<Term> b_candidates() {
    // domain plus every code already decided true (closure members)
    std::vector<Term> out(domain_.begin(), domain_.end());
    std::unordered_set<Term> have(domain_.begin(), domain_.end());
    for (Term t : trues_)
      if (have.insert(t).second) out.push_back(t);
    return out;
  }

  void close_a0() {
    // chaotic iteration with the markers participating in the closure
    for (;;) {
      grew_ = false;
      pass_cache_.clear();
      for (Term d : domain_) eval(d);
      for (Term f : f_candidates_) {
        Term m = canon(app(lim(f), marker_arg_));
        if (m) eval(m);
      }
      if (!grew_ || budget_exhausted_) break;
    }
  }

  QV decide(Term c) {
    if (trues_.count(c)) return QV::Yes;
    if (auto it = settled_.find(c); it != settled_.end()) return it->second;
    QV r = QV::No;
    for (;;) {
      grew_ = false;
      pass_cache_.clear();
      r = eval(c);
      if (!grew_) break;  // only a converged pass leaves stable facts
    }
    if (saturated_) {
      for (auto& [k, v] : pass_cache_) settled_.emplace(k, v);
    }
    pass_cache_.clear();
    return r;
  }

  QV eval(Term c) {
    if (trues_.count(c)) return QV::Yes;
    if (auto is = settled_.find(c); is != settled_.end()) return is->second;
    auto it = pass_cache_.find(c);
    if (it != pass_cache_.end()) return it->second;
    if (++evals_ > cfg_.inner_budget) {
      budget_exhausted_ = true;
      return QV::Unknown;
    }
    pass_cache_[c] = QV::No;
    QV v = body(c);
    if (v == QV::Yes) {
      trues_.insert(c);
      grew_ = true;
      pass_cache_.erase(c);
    } else {
      pass_cache_[c] = v;
    }
    return v;
  }

  QV eval_term(Term raw) {
    Term c = canon(raw);
    if (!c) return QV::Unknown;
    return eval(c);
  }

  QV atom_eq(Term x, Term y, bool positive) {
    Term cx = canon(x), cy = canon(y);
    if (!cx || !cy) return QV::Unknown;
    if (cx == cy) return positive ? QV::Yes : QV::No;
    bool nx = in_normal_form(cx), ny = in_normal_form(cy);
    if (nx && ny) return positive ? QV::No : QV::Yes;
    if (nx != ny) return positive ? QV::No : QV::Yes;
    return QV::Unknown;
  }
  QV atom_nat(Term x, bool positive) {
    Term cx = canon(x);
    if (!cx) return QV::Unknown;
    bool n = in_normal_form(cx) && is_numeral(cx);
    return (n == positive) ? QV::Yes : QV::No;
  }

  // A0: the positive operator form; lim codes only via the marker clause
  QV body(Term a) {
    if (a->tag != Tag::App) return QV::No;
    Term h1 = a->fun, x1 = a->arg;
    switch (h1->tag) {
      case Tag::DotN: return atom_nat(x1, true);
      case Tag::DotT: return eval_term(x1);
      case Tag::DotAll: return forall_clause(a, x1);
      case Tag::DotNeg: return neg_body(a, x1);
      case Tag::App: break;
      default: return QV::No;
    }
    Term h2 = h1->fun, x2 = h1->arg;
    switch (h2->tag) {
      case Tag::DotEq: return atom_eq(x2, x1, true);
      case Tag::DotAnd: {
        QV l = eval_term(x2);
        if (l == QV::No) return QV::No;
        return qv_and(l, eval_term(x1));
      }
      case Tag::DotImp: {
        if (cfg_.schema == Schema::SK) {
          QV l = eval_term(dot_neg(x2));
          if (l == QV::Yes) return QV::Yes;
          return qv_or(l, eval_term(x1));
        }
        QV tx = eval_term(x2);
        QV both = tx == QV::No ? QV::No : qv_and(tx, eval_term(x1));
        if (both == QV::Yes) return QV::Yes;
        return qv_or(both, eval_term(dot_neg(x2)));
      }
      case Tag::Lim: {
        // marker clause: a = l f (0 = 0) when f is a class in X
        Term c = canon(x1);
        if (c == marker_arg_) return class_in_x(x2);
        return QV::No;  // other lim codes enter only via A1 bursts
      }
      default: return QV::No;
    }
  }

  QV neg_body(Term a, Term inner) {
    Term n = canon(inner);
    if (!n) return QV::Unknown;
    if (n->tag != Tag::App) return QV::No;
    Term h1 = n->fun, x1 = n->arg;
    switch (h1->tag) {
      case Tag::DotN: return atom_nat(x1, false);
      case Tag::DotT: return eval_term(dot_neg(x1));
      case Tag::DotNeg: return eval_term(x1);
      case Tag::DotAll: return neg_forall_clause(a, x1);
      case Tag::App: break;
      default: return QV::No;
    }
    Term h2 = h1->fun, x2 = h1->arg;
    switch (h2->tag) {
      case Tag::DotEq: return atom_eq(x2, x1, false);
      case Tag::DotAnd: {
        if (cfg_.schema == Schema::SK) {
          QV l = eval_term(dot_neg(x2));
          if (l == QV::Yes) return QV::Yes;
          return qv_or(l, eval_term(dot_neg(x1)));
        }
        QV tx = eval_term(x2), ty = eval_term(x1);
        QV nx = eval_term(dot_neg(x2)), ny = eval_term(dot_neg(x1));
        return qv_or(qv_or(qv_and(nx, ny), qv_and(nx, ty)), qv_and(tx, ny));
      }
      case Tag::DotImp: {
        QV l = eval_term(x2);
        if (l == QV::No) return QV::No;
        return qv_and(l, eval_term(dot_neg(x1)));
      }
      case Tag::Lim: return QV::No;  // negated lim codes enter only via A1
      default: return QV::No;
    }
  }

  QV forall_clause(Term key, Term f) {
    size_t start = 0;
    if (auto it = all_watch_.find(key); it != all_watch_.end()) start = it->second;
    bool unknown = false;
    for (size_t k = 0; k < domain_.size(); ++k) {
      size_t idx = (start + k) % domain_.size();
      QV v = eval_term(app(f, domain_[idx]));
      if (v == QV::No) {
        all_watch_[key] = idx;
        return QV::No;
      }
      if (v == QV::Unknown) unknown = true;
    }
    return unknown ? QV::Unknown : QV::Yes;
  }

  QV neg_forall_clause(Term key, Term f) {
    if (cfg_.schema == Schema::SK) {
      size_t start = 0;
      if (auto it = exists_watch_.find(key); it != exists_watch_.end()) start = it->second;
      bool unknown = false;
      for (size_t k = 0; k < domain_.size(); ++k) {
        size_t idx = (start + k) % domain_.size();
        QV v = eval_term(dot_neg(app(f, domain_[idx])));
        if (v == QV::Yes) {
          exists_watch_[key] = idx;
          return QV::Yes;
        }
        if (v == QV::Unknown) unknown = true;
      }
      return unknown ? QV::Unknown : QV::No;
    }
    QV all = QV::Yes, ex = QV::No;
    for (Term x : domain_) {
      QV tf = eval_term(app(f, x));
      QV nf = eval_term(dot_neg(app(f, x)));
      all = qv_and(all, qv_or(tf, nf));
      ex = qv_or(ex, nf);
      if (all == QV::No) return QV::No;
    }
    return qv_and(all, ex);
  }

  QV class_in_x(Term f) {
    size_t start = 0;
    if (auto it = class_watch_.find(f); it != class_watch_.end()) start = it->second;
    bool unknown = false;
    for (size_t k = 0; k < domain_.size(); ++k) {
      size_t idx = (start + k) % domain_.size();
      Term x = domain_[idx];
      QV pos = eval_term(app(f, x));
      if (pos == QV::Yes) continue;
      QV neg = eval_term(dot_neg(app(f, x)));
      if (neg == QV::Yes) continue;
      if (pos == QV::Unknown || neg == QV::Unknown) {
        unknown = true;
        continue;
      }
      class_watch_[f] = idx;
      return QV::No;
    }
    return unknown ? QV::Unknown : QV::Yes;
  }
};

inline AfixResult afix_build(const ModelConfig& cfg) { return AfixEngine(cfg).run(); }

// phi_lfp as a standalone operation: the least fixed point of
// X -> Phi(X, prev, ., stage_index), saturated over the finite domain.
inline StageSet phi_lfp(const StageSet& prev, int stage_index, const ModelConfig& cfg) {
  if (stage_index < 1) stage_index = 1;
  Tower t(cfg, prev, stage_index - 1);
  return t.stage_view(stage_index);
}

}  // namespace fsw

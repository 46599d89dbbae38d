#pragma once

#include "fsw/reduce.hpp"
#include "fsw/term.hpp"

namespace fsw {

// Standard bracket abstraction:
//   lam x. x        = s k k
//   lam x. t        = k t            (x not free in t)
//   lam x. (u v)    = s (lam x. u) (lam x. v)
// For every closed a, (lam x. b) a normalizes to b[a/x]'s normal form.
inline Term lambda_abstract(Term v, Term body) {
  if (body == v) return app(constant(Tag::S), constant(Tag::K), constant(Tag::K));
  if (!occurs_var(body, v)) return app(constant(Tag::K), body);
  // body is an App containing v
  return app(constant(Tag::S), lambda_abstract(v, body->fun),
             lambda_abstract(v, body->arg));
}

inline Term lambda_abstract(std::string_view name, Term body) {
  return lambda_abstract(var(name), body);
}

// Curry fixed-point combinator built by bracket abstraction:
//   rec = lam f. (lam x. f (x x)) (lam x. f (x x))
// so that rec g and g (rec g) share a reduct for every closed g.
inline Term mk_rec() {
  Term f = var("_rec_f");
  Term x = var("_rec_x");
  Term w = lambda_abstract(x, app(f, app(x, x)));
  return lambda_abstract(f, app(w, w));
}

}  // namespace fsw

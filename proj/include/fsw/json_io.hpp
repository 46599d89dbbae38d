#pragma once

#include <json.hpp>

#include "fsw/em.hpp"
#include "fsw/kripke.hpp"
#include "fsw/sentence.hpp"
#include "fsw/sequent.hpp"
#include "fsw/sexpr.hpp"

namespace fsw {

using nlohmann::json;

// ---- sentences -----------------------------------------------------------

inline json sentence_to_json(const Snt& s) {
  switch (s->kind) {
    case SKind::Eq: return {{"eq", {{"lhs", to_sexpr(s->a)}, {"rhs", to_sexpr(s->b)}}}};
    case SKind::IsN: return {{"isn", to_sexpr(s->a)}};
    case SKind::TruthOf: return {{"truth", to_sexpr(s->a)}};
    case SKind::LAt: return {{"lat", {{"class", to_sexpr(s->a)}, {"arg", to_sexpr(s->b)}}}};
    case SKind::Not: return {{"not", sentence_to_json(s->s1)}};
    case SKind::And: return {{"and", {sentence_to_json(s->s1), sentence_to_json(s->s2)}}};
    case SKind::Imp: return {{"imp", {sentence_to_json(s->s1), sentence_to_json(s->s2)}}};
    case SKind::ForAll:
      return {{"forall", {{"var", s->binder}, {"body", sentence_to_json(s->s1)}}}};
  }
  throw std::logic_error("unreachable");
}

inline Snt sentence_from_json(const json& j) {
  if (j.contains("eq"))
    return mk_eq(parse_sexpr(j["eq"]["lhs"].get<std::string>()),
                 parse_sexpr(j["eq"]["rhs"].get<std::string>()));
  if (j.contains("isn")) return mk_isn(parse_sexpr(j["isn"].get<std::string>()));
  if (j.contains("truth")) return mk_truth(parse_sexpr(j["truth"].get<std::string>()));
  if (j.contains("lat"))
    return mk_lat(parse_sexpr(j["lat"]["class"].get<std::string>()),
                  parse_sexpr(j["lat"]["arg"].get<std::string>()));
  if (j.contains("not")) return mk_not(sentence_from_json(j["not"]));
  if (j.contains("and"))
    return mk_and(sentence_from_json(j["and"][0]), sentence_from_json(j["and"][1]));
  if (j.contains("imp"))
    return mk_imp(sentence_from_json(j["imp"][0]), sentence_from_json(j["imp"][1]));
  if (j.contains("forall"))
    return mk_forall(j["forall"]["var"].get<std::string>(),
                     sentence_from_json(j["forall"]["body"]));
  throw std::invalid_argument("unrecognized sentence object: " + j.dump());
}

// ---- explicit-mathematics formulas -----------------------------------------

inline EmTermP em_term_from_json(const json& j) {
  if (j.is_string()) return em_term(parse_sexpr(j.get<std::string>()));
  std::vector<EmTermP> args;
  for (const auto& a : j.value("args", json::array())) args.push_back(em_term_from_json(a));
  return em_gen(j.at("gen").get<std::string>(), std::move(args));
}

inline EmF em_from_json(const json& j) {
  if (j.contains("elem"))
    return em_elem(em_term_from_json(j["elem"]["x"]), em_term_from_json(j["elem"]["y"]));
  if (j.contains("name")) return em_name(em_term_from_json(j["name"]));
  if (j.contains("eq"))
    return em_eq(em_term_from_json(j["eq"]["lhs"]), em_term_from_json(j["eq"]["rhs"]));
  if (j.contains("isn")) return em_isn(em_term_from_json(j["isn"]));
  if (j.contains("not")) return em_not(em_from_json(j["not"]));
  if (j.contains("and")) return em_and(em_from_json(j["and"][0]), em_from_json(j["and"][1]));
  if (j.contains("imp")) return em_imp(em_from_json(j["imp"][0]), em_from_json(j["imp"][1]));
  if (j.contains("forall"))
    return em_forall(j["forall"]["var"].get<std::string>(),
                     em_from_json(j["forall"]["body"]));
  throw std::invalid_argument("unrecognized EM formula: " + j.dump());
}

// ---- model dumps -----------------------------------------------------------

inline json model_dump(Tower& m) {
  json j;
  j["config"] = {{"schema", m.config().schema == Schema::SK ? "sk" : "af"},
                 {"universe_depth", m.config().universe_depth},
                 {"max_stages", m.config().max_stages},
                 {"fuel", m.config().fuel.budget},
                 {"domain_size", m.domain().size()}};
  j["final_stage"] = m.final_stage();
  j["reached_fixed_point"] = m.reached_fixed_point();
  json counts = json::array();
  for (int i = 0; i <= m.final_stage(); ++i)
    counts.push_back(m.stage_view(i).members.size());
  j["stage_member_counts"] = counts;
  json ledger = json::object();
  for (auto& [f, s] : m.ledger()) ledger[to_sexpr(f)] = s;
  j["ledger"] = ledger;
  json members = json::array();
  StageSet fin = m.stage_view(m.final_stage());
  std::vector<Term> in_domain;
  for (Term d : m.domain())
    if (fin.members.count(d)) in_domain.push_back(d);
  for (Term t : in_domain) members.push_back(to_sexpr(t));
  j["final_members_in_domain"] = members;
  j["canon_failures"] = m.canon_failures();
  return j;
}

// ---- derivations -----------------------------------------------------------

inline json derivation_to_json(const Deriv& d) {
  json j;
  j["rule"] = rule_name(d->rule);
  j["rank"] = {d->rank.u, d->rank.t, d->rank.len};
  json concl = json::array();
  for (Term c : d->conclusion.codes) concl.push_back(to_sexpr(c));
  j["conclusion"] = concl;
  if (d->principal) j["principal"] = to_sexpr(d->principal);
  if (d->witness) j["witness"] = to_sexpr(d->witness);
  if (d->cert) j["cert"] = {{"class", to_sexpr(d->cert->cls)}};
  if (!d->premises.empty()) {
    json ps = json::array();
    for (const Deriv& p : d->premises) ps.push_back(derivation_to_json(p));
    j["premises"] = ps;
  }
  return j;
}

inline Deriv derivation_from_json(const json& j, SequentAtlas& atlas) {
  static const std::map<std::string, Rule> rules = {
      {"Lit", Rule::Lit}, {"Log", Rule::Log}, {"And", Rule::And},
      {"OrL", Rule::OrL}, {"OrR", Rule::OrR}, {"Exists", Rule::Exists},
      {"ForAll", Rule::ForAll}, {"T", Rule::TIntro}, {"NegT", Rule::NegTIntro},
      {"Weak", Rule::Weak}, {"U", Rule::UIntro}, {"NegU", Rule::NegUIntro}};
  auto it = rules.find(j.at("rule").get<std::string>());
  if (it == rules.end()) throw std::invalid_argument("unknown rule tag");
  std::vector<Term> concl;
  for (const auto& c : j.at("conclusion"))
    concl.push_back(atlas.canon(parse_sexpr(c.get<std::string>())));
  Rank r{j.at("rank")[0].get<int>(), j.at("rank")[1].get<int>(), j.at("rank")[2].get<int>()};
  Term principal =
      j.contains("principal") ? atlas.canon(parse_sexpr(j["principal"].get<std::string>()))
                              : nullptr;
  Term witness =
      j.contains("witness") ? atlas.canon(parse_sexpr(j["witness"].get<std::string>()))
                            : nullptr;
  std::optional<SideCert> cert;
  if (j.contains("cert"))
    cert = SideCert{atlas.canon(parse_sexpr(j["cert"]["class"].get<std::string>()))};
  std::vector<Deriv> prem;
  for (const auto& p : j.value("premises", json::array()))
    prem.push_back(derivation_from_json(p, atlas));
  return mk_deriv(Sequent::of(std::move(concl)), r, it->second, principal,
                  std::move(prem), witness, cert);
}

}  // namespace fsw

#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fsw/term.hpp"

namespace fsw {

// S-expression syntax: (app f a), constants as bare symbols
//   k s p p0 p1 0 sN pN dN eq. neg. and. imp. all. nat. tr. lim
// anything else is a variable.
inline const char* tag_symbol(Tag t) {
  switch (t) {
    case Tag::K: return "k";
    case Tag::S: return "s";
    case Tag::P: return "p";
    case Tag::P0: return "p0";
    case Tag::P1: return "p1";
    case Tag::Zero: return "0";
    case Tag::SN: return "sN";
    case Tag::PN: return "pN";
    case Tag::DN: return "dN";
    case Tag::DotEq: return "eq.";
    case Tag::DotNeg: return "neg.";
    case Tag::DotAnd: return "and.";
    case Tag::DotImp: return "imp.";
    case Tag::DotAll: return "all.";
    case Tag::DotN: return "nat.";
    case Tag::DotT: return "tr.";
    case Tag::Lim: return "lim";
    default: return "?";
  }
}

inline void print_sexpr(Term t, std::string& out) {
  switch (t->tag) {
    case Tag::App:
      out += "(app ";
      print_sexpr(t->fun, out);
      out += ' ';
      print_sexpr(t->arg, out);
      out += ')';
      break;
    case Tag::Var:
      out += var_name(t);
      break;
    default:
      out += tag_symbol(t->tag);
  }
}

inline std::string to_sexpr(Term t) {
  std::string s;
  print_sexpr(t, s);
  return s;
}

namespace detail {

struct SexprParser {
  std::string_view in;
  size_t pos = 0;

  void skip_ws() {
    while (pos < in.size() && (in[pos] == ' ' || in[pos] == '\t' || in[pos] == '\n' || in[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("sexpr parse error at offset " + std::to_string(pos) + ": " + msg);
  }

  std::string atom() {
    size_t start = pos;
    while (pos < in.size() && in[pos] != ' ' && in[pos] != '\t' && in[pos] != '\n' &&
           in[pos] != '\r' && in[pos] != '(' && in[pos] != ')')
      ++pos;
    if (start == pos) fail("expected atom");
    return std::string(in.substr(start, pos - start));
  }

  Term term() {
    skip_ws();
    if (pos >= in.size()) fail("unexpected end of input");
    if (in[pos] == '(') {
      ++pos;
      skip_ws();
      std::string head = atom();
      if (head != "app") fail("expected 'app', got '" + head + "'");
      Term f = term();
      Term a = term();
      skip_ws();
      if (pos >= in.size() || in[pos] != ')') fail("expected ')'");
      ++pos;
      return app(f, a);
    }
    std::string a = atom();
    for (int i = 0; i < kNumConstants; ++i) {
      Tag tg = static_cast<Tag>(i);
      if (a == tag_symbol(tg)) return constant(tg);
    }
    return var(a);
  }
};

}  // namespace detail

inline Term parse_sexpr(std::string_view s) {
  detail::SexprParser p{s};
  Term t = p.term();
  p.skip_ws();
  if (p.pos != s.size()) p.fail("trailing input");
  return t;
}

}  // namespace fsw

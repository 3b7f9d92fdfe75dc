#include <cctype>

#include "hopi/formula_parse.hpp"

namespace hopi {

namespace {

struct FCursor {
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (size_t k = 0; k < i && k < s.size(); k++) {
      if (s[k] == '\n') { line++; col = 1; } else col++;
    }
    throw ParseError(msg, line, col);
  }
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) i++;
  }
  bool eof() { ws(); return i >= s.size(); }
  char peek() { ws(); return i < s.size() ? s[i] : '\0'; }
  bool lit(const std::string& w) {
    ws();
    if (s.compare(i, w.size(), w) == 0) { i += w.size(); return true; }
    return false;
  }
  // Keyword: like lit but must not continue as an identifier.
  bool kw(const std::string& w) {
    ws();
    if (s.compare(i, w.size(), w) != 0) return false;
    size_t j = i + w.size();
    if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
      return false;
    i = j;
    return true;
  }
  void expect(const std::string& w) {
    if (!lit(w)) fail("expected '" + w + "'");
  }
  std::string ident() {
    ws();
    size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      i++;
    if (i == start) fail("expected an identifier");
    return s.substr(start, i - start);
  }
  std::string name_tok() {
    std::string id = ident();
    if (!std::islower(static_cast<unsigned char>(id[0])))
      fail("expected a name (lowercase-initial), got '" + id + "'");
    return id;
  }
  std::string var_tok() {
    std::string id = ident();
    if (!std::isupper(static_cast<unsigned char>(id[0])))
      fail("expected a variable (uppercase-initial), got '" + id + "'");
    return id;
  }
};

FormPtr parse_implies(FCursor& c);

// prefix operators and atoms
FormPtr parse_unary(FCursor& c) {
  c.ws();
  if (c.i >= c.s.size()) c.fail("unexpected end of formula");

  if (c.kw("not")) return Formula::lnot(parse_unary(c));
  if (c.kw("T")) return Formula::truth();
  if (c.kw("F")) return Formula::falsity();
  if (c.lit("0")) return Formula::zero();
  if (c.kw("mu")) {
    std::string v = c.var_tok();
    c.expect(".");
    FormPtr body = parse_implies(c);
    if (!positive_in(body, ProcVar{v}))
      c.fail("fixpoint variable " + v + " must occur positively in the body");
    return Formula::mu(ProcVar{v}, body);
  }
  if (c.kw("in")) {
    std::string a = c.name_tok();
    c.expect("(");
    std::string v = c.var_tok();
    c.expect(")");
    c.expect(".");
    return Formula::in_prefix(Name{a}, ProcVar{v}, parse_unary(c));
  }
  if (c.kw("out")) {
    std::string a = c.name_tok();
    c.expect("<");
    FormPtr payload = parse_implies(c);
    c.expect(">");
    c.expect(".");
    return Formula::out_prefix(Name{a}, payload, parse_unary(c));
  }
  if (c.lit("<<")) {
    if (c.kw("eps")) {
      c.expect(">>");
      return Formula::weak_eps(parse_unary(c));
    }
    bool outMod = c.lit("'");
    std::string a = c.name_tok();
    if (c.lit("<")) {
      FormPtr payload = parse_implies(c);
      c.expect(">");
      c.expect(">>");
      FormPtr cont = parse_unary(c);
      return outMod ? Formula::weak_out(Name{a}, payload, cont)
                    : Formula::weak_in(Name{a}, payload, cont);
    }
    if (outMod) c.fail("expected '<' after output subject");
    c.expect("[");
    FormPtr payload = parse_implies(c);
    c.expect("]");
    c.expect(">>");
    return Formula::weak_box_in(Name{a}, payload, parse_unary(c));
  }
  if (c.lit("<")) {
    if (c.kw("tau")) {
      c.expect(">");
      return Formula::dia_tau(parse_unary(c));
    }
    bool outMod = c.lit("'");
    std::string a = c.name_tok();
    if (c.lit("<")) {
      FormPtr payload = parse_implies(c);
      c.expect(">");
      c.expect(">");
      FormPtr cont = parse_unary(c);
      return outMod ? Formula::dia_out(Name{a}, payload, cont)
                    : Formula::dia_in(Name{a}, payload, cont);
    }
    if (outMod) c.fail("expected '<' after output subject");
    c.expect("[");
    FormPtr payload = parse_implies(c);
    c.expect("]");
    c.expect(">");
    return Formula::box_in(Name{a}, payload, parse_unary(c));
  }
  if (c.lit("(")) {
    c.ws();
    // (N x) A, (NV X) A, (- a) A, (~-) A, or a parenthesized formula.
    if (c.lit("~-")) {
      c.expect(")");
      return Formula::no_bound(parse_unary(c));
    }
    if (c.lit("-")) {
      std::string a = c.name_tok();
      c.expect(")");
      return Formula::not_free(Name{a}, parse_unary(c));
    }
    size_t save = c.i;
    if (c.kw("NV")) {
      c.ws();
      if (c.i < c.s.size() && std::isupper(static_cast<unsigned char>(c.s[c.i]))) {
        std::string v = c.var_tok();
        c.expect(")");
        return Formula::fresh_var(ProcVar{v}, parse_unary(c));
      }
      c.i = save;
    }
    if (c.kw("N")) {
      c.ws();
      if (c.i < c.s.size() && std::islower(static_cast<unsigned char>(c.s[c.i]))) {
        std::string x = c.name_tok();
        c.expect(")");
        return Formula::fresh_name(Name{x}, parse_unary(c));
      }
      c.i = save;
    }
    FormPtr inner = parse_implies(c);
    c.expect(")");
    return inner;
  }
  // name-led: revelation `a @ A` or inequality `a != b`; variable atom.
  char ch = c.peek();
  if (std::islower(static_cast<unsigned char>(ch))) {
    std::string a = c.name_tok();
    if (c.lit("@")) return Formula::reveal(Name{a}, parse_unary(c));
    if (c.lit("!=")) return Formula::neq(Name{a}, Name{c.name_tok()});
    c.fail("expected '@' or '!=' after name '" + a + "'");
  }
  if (std::isupper(static_cast<unsigned char>(ch))) {
    return Formula::propvar(ProcVar{c.var_tok()});
  }
  c.fail(std::string("unexpected character '") + ch + "' in formula");
}

// postfix adjoints and hiding bind tighter than the binary connectives
FormPtr parse_postfix(FCursor& c) {
  FormPtr f = parse_unary(c);
  for (;;) {
    c.ws();
    if (c.lit("\\")) {
      if (c.kw("in")) {
        std::string a = c.name_tok();
        c.expect("(");
        std::string v = c.var_tok();
        c.expect(")");
        f = Formula::in_adjoint(f, Name{a}, ProcVar{v});
        continue;
      }
      if (c.kw("out")) {
        f = Formula::out_adjoint(f, Name{c.name_tok()});
        continue;
      }
      c.fail("expected 'in' or 'out' after '\\'");
    }
    if (c.peek() == '/' ) {
      c.lit("/");
      f = Formula::hide(f, Name{c.name_tok()});
      continue;
    }
    return f;
  }
}

FormPtr parse_par(FCursor& c) {
  FormPtr f = parse_postfix(c);
  while (c.peek() == '|') {
    size_t save = c.i;
    c.lit("|");
    if (c.peek() == '>') { c.i = save; break; }  // that's |>
    f = Formula::par(f, parse_postfix(c));
  }
  return f;
}

FormPtr parse_guarantee(FCursor& c) {
  FormPtr f = parse_par(c);
  if (c.lit("|>")) return Formula::guarantee(f, parse_guarantee(c));
  return f;
}

FormPtr parse_and(FCursor& c) {
  FormPtr f = parse_guarantee(c);
  while (c.kw("and")) f = Formula::land(f, parse_guarantee(c));
  return f;
}

FormPtr parse_or(FCursor& c) {
  FormPtr f = parse_and(c);
  while (c.kw("or")) f = Formula::lor(f, parse_and(c));
  return f;
}

FormPtr parse_implies(FCursor& c) {
  FormPtr f = parse_or(c);
  if (c.lit("->")) return Formula::implies(f, parse_implies(c));
  return f;
}

}  // namespace

FormPtr parse_formula(const std::string& text) {
  FCursor c{text};
  FormPtr f = parse_implies(c);
  if (!c.eof()) c.fail("trailing input after formula");
  return f;
}

}  // namespace hopi

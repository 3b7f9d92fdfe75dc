#include "hopi/parse.hpp"

#include <cctype>

namespace hopi {

namespace {

struct Cursor {
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
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) { i++; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string ident() {
    ws();
    size_t start = i;
    while (i < s.size() && ident_char(s[i])) i++;
    if (i == start) fail("expected an identifier");
    return s.substr(start, i - start);
  }
};

ProcPtr parse_par(Cursor& c);

ProcPtr parse_prefixed(Cursor& c) {
  c.ws();
  if (c.i >= c.s.size()) c.fail("unexpected end of input");
  char ch = c.s[c.i];
  if (ch == '0') {
    c.i++;
    return Process::nil();
  }
  if (ch == '(') {
    size_t save = c.i;
    c.i++;
    c.ws();
    // '(nu a) P' or a parenthesized process
    if (c.s.compare(c.i, 2, "nu") == 0 &&
        (c.i + 2 >= c.s.size() || !Cursor::ident_char(c.s[c.i + 2]))) {
      c.i += 2;
      std::string n = c.ident();
      if (!std::islower(static_cast<unsigned char>(n[0])))
        c.fail("restriction binder must be a name (lowercase-initial)");
      c.expect(')');
      return Process::res(Name{n}, parse_prefixed(c));
    }
    c.i = save + 1;
    ProcPtr inner = parse_par(c);
    c.expect(')');
    return inner;
  }
  if (std::isupper(static_cast<unsigned char>(ch))) {
    return Process::mkvar(ProcVar{c.ident()});
  }
  if (std::islower(static_cast<unsigned char>(ch))) {
    std::string n = c.ident();
    c.ws();
    if (c.eat('(')) {
      std::string v = c.ident();
      if (!std::isupper(static_cast<unsigned char>(v[0])))
        c.fail("input binder must be a process variable (uppercase-initial)");
      c.expect(')');
      c.expect('.');
      return Process::input(Name{n}, ProcVar{v}, parse_prefixed(c));
    }
    if (c.eat('<')) {
      ProcPtr payload = parse_par(c);
      c.expect('>');
      c.expect('.');
      return Process::output(Name{n}, payload, parse_prefixed(c));
    }
    if (c.eat('.')) {
      ProcPtr body = parse_prefixed(c);
      // Bare-prefix sugar: the binder is never referenced; pick one that
      // cannot capture anything in the body.
      ProcVar binder{fresh_ident(body->fv, kUnusedBinder.id)};
      return Process::input(Name{n}, binder, body);
    }
    c.fail("expected '(', '<' or '.' after name '" + n + "'");
  }
  c.fail(std::string("unexpected character '") + ch + "'");
}

ProcPtr parse_par(Cursor& c) {
  ProcPtr p = parse_prefixed(c);
  while (c.peek() == '|') {
    c.eat('|');
    p = Process::par(p, parse_prefixed(c));
  }
  return p;
}

}  // namespace

ProcPtr parse_process(const std::string& text) {
  Cursor c{text};
  ProcPtr p = parse_par(c);
  if (!c.eof()) c.fail("trailing input after process");
  return p;
}

}  // namespace hopi

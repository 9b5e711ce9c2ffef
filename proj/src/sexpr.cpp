#include "tame/sexpr.hpp"

#include <cctype>
#include <cstdlib>

namespace tame {

SexprError::SexprError(const std::string& msg, int line, int col)
    : std::runtime_error(msg + " at line " + std::to_string(line) + ", col " +
                         std::to_string(col)),
      line(line),
      col(col) {}

const Sexpr& Sexpr::at(size_t i) const {
  if (is_atom || i >= items.size())
    throw SexprError("missing list element " + std::to_string(i), line, col);
  return items[i];
}

std::string Sexpr::head() const {
  if (is_atom || items.empty() || !items[0].is_atom) return "";
  return items[0].atom;
}

const std::string& Sexpr::as_atom() const {
  if (!is_atom) throw SexprError("expected atom, got list", line, col);
  return atom;
}

double Sexpr::as_number() const {
  const std::string& s = as_atom();
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw SexprError("expected number, got '" + s + "'", line, col);
  return v;
}

long Sexpr::as_int() const {
  const std::string& s = as_atom();
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw SexprError("expected integer, got '" + s + "'", line, col);
  return v;
}

namespace {

struct Cursor {
  const std::string& text;
  const std::string& name;
  size_t pos = 0;
  int line = 1, col = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_space() {
    while (!done()) {
      char c = peek();
      if (c == ';') {  // comment to end of line
        while (!done() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }
};

Sexpr parse_one(Cursor& cur) {
  cur.skip_space();
  if (cur.done())
    throw SexprError(cur.name + ": unexpected end of input", cur.line, cur.col);
  int line = cur.line, col = cur.col;
  char c = cur.peek();
  if (c == '(') {
    cur.take();
    Sexpr list;
    list.line = line;
    list.col = col;
    for (;;) {
      cur.skip_space();
      if (cur.done())
        throw SexprError(cur.name + ": unclosed '('", line, col);
      if (cur.peek() == ')') {
        cur.take();
        return list;
      }
      list.items.push_back(parse_one(cur));
    }
  }
  if (c == ')')
    throw SexprError(cur.name + ": unmatched ')'", line, col);
  Sexpr atom;
  atom.is_atom = true;
  atom.line = line;
  atom.col = col;
  if (c == '"') {  // quoted string atom (citations)
    cur.take();
    while (!cur.done() && cur.peek() != '"') atom.atom += cur.take();
    if (cur.done())
      throw SexprError(cur.name + ": unterminated string", line, col);
    cur.take();
    return atom;
  }
  while (!cur.done()) {
    char d = cur.peek();
    if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' ||
        d == ';')
      break;
    atom.atom += cur.take();
  }
  return atom;
}

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text,
                                const std::string& name) {
  Cursor cur{text, name};
  std::vector<Sexpr> forms;
  for (;;) {
    cur.skip_space();
    if (cur.done()) break;
    forms.push_back(parse_one(cur));
  }
  return forms;
}

}  // namespace tame

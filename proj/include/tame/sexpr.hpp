#pragma once
// Minimal s-expression reader for the inequality database and verifier spec
// files.  Atoms are kept as raw strings; numeric interpretation happens at
// the point of use.  Parse errors carry line/column positions.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tame {

struct Sexpr {
  bool is_atom = false;
  std::string atom;           // valid when is_atom
  std::vector<Sexpr> items;   // valid when !is_atom
  int line = 0, col = 0;

  bool is_list() const { return !is_atom; }
  size_t size() const { return items.size(); }
  const Sexpr& at(size_t i) const;
  // Head symbol of a list, or "" if empty/atom.
  std::string head() const;
  // Atom accessors with type errors that name the position.
  const std::string& as_atom() const;
  double as_number() const;
  long as_int() const;
};

struct SexprError : std::runtime_error {
  int line, col;
  SexprError(const std::string& msg, int line, int col);
};

// Parse every top-level form in the text.  `name` labels error messages
// (usually a file path).  Lines starting with ';' are comments.
std::vector<Sexpr> parse_sexprs(const std::string& text,
                                const std::string& name = "<input>");

}  // namespace tame

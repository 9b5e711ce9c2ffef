#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "tame/simplex.hpp"

namespace tame {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_terms(std::string& out,
                  const std::vector<std::pair<int, double>>& terms,
                  const std::vector<LPVariable>& vars) {
  bool first = true;
  for (const auto& [j, a] : terms) {
    if (a == 0.0) continue;
    if (first) {
      out += num(a);
      first = false;
    } else {
      out += a < 0 ? " - " : " + ";
      out += num(std::fabs(a));
    }
    out += ' ';
    out += vars[j].name;
  }
  if (first) out += "0";
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else if (c == '+' || c == '-') {
      // Signs split off unless part of a number's exponent (kept inside cur
      // when the previous character is 'e' or 'E' of a digit run).
      if (!cur.empty() &&
          (cur.back() == 'e' || cur.back() == 'E') &&
          cur.find_first_of("0123456789.") != std::string::npos) {
        cur += c;
      } else {
        if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        tokens.push_back(std::string(1, c));
      }
    } else if (c == '<' || c == '>' || c == '=') {
      if (!cur.empty() && cur != "<" && cur != ">")
        tokens.push_back(std::move(cur)), cur.clear();
      cur += c;
      if (c == '=') tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool parse_number(const std::string& tok, double* out) {
  const char* s = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end != s + tok.size()) return false;
  *out = v;
  return true;
}

bool is_inf_token(const std::string& tok, double* out) {
  if (tok == "inf" || tok == "+inf" || tok == "infinity") {
    *out = kLPInfinity;
    return true;
  }
  if (tok == "-inf" || tok == "-infinity") {
    *out = -kLPInfinity;
    return true;
  }
  return false;
}

// Linear expression: [sign] [coef] var [sign [coef] var ...]
std::vector<std::pair<int, double>> parse_expr(
    const std::vector<std::string>& tokens, size_t begin, size_t end,
    LPModel& model) {
  std::vector<std::pair<int, double>> terms;
  double sign = 1.0, coef = 1.0;
  bool have_coef = false;
  for (size_t i = begin; i < end; ++i) {
    const std::string& tok = tokens[i];
    double v;
    if (tok == "+") {
      continue;
    } else if (tok == "-") {
      sign = -sign;
    } else if (parse_number(tok, &v)) {
      coef = have_coef ? coef * v : v;
      have_coef = true;
    } else {
      int var = model.variable(tok);
      if (var < 0) var = model.add_variable(tok, 0.0, kLPInfinity);
      terms.emplace_back(var, sign * (have_coef ? coef : 1.0));
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
  }
  // A trailing bare number (the writer's "0" for an empty expression) is a
  // constant term of zero and is dropped.
  return terms;
}

}  // namespace

std::string write_lp_text(const LPModel& model) {
  model.check();
  std::string out;
  out += model.maximize ? "Maximize\n" : "Minimize\n";
  out += " obj: ";
  {
    std::vector<std::pair<int, double>> terms;
    for (size_t j = 0; j < model.objective.size(); ++j)
      if (model.objective[j] != 0.0)
        terms.emplace_back(static_cast<int>(j), model.objective[j]);
    append_terms(out, terms, model.vars);
  }
  out += "\nSubject To\n";
  for (size_t r = 0; r < model.rows.size(); ++r) {
    const LPRow& row = model.rows[r];
    if (!row.tag.empty()) out += "\\ tag: " + row.tag + "\n";
    out += " r" + std::to_string(r) + ": ";
    append_terms(out, row.coeffs, model.vars);
    switch (row.rel) {
      case Relation::kLe: out += " <= "; break;
      case Relation::kGe: out += " >= "; break;
      case Relation::kEq: out += " = "; break;
    }
    out += num(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (const LPVariable& v : model.vars) {
    bool lo = std::fabs(v.lower) < kLPInfinity;
    bool hi = std::fabs(v.upper) < kLPInfinity;
    if (!lo && !hi)
      out += " " + v.name + " free\n";
    else if (lo && hi)
      out += " " + num(v.lower) + " <= " + v.name + " <= " + num(v.upper) + "\n";
    else if (lo)
      out += " " + v.name + " >= " + num(v.lower) + "\n";
    else
      out += " -inf <= " + v.name + " <= " + num(v.upper) + "\n";
  }
  out += "End\n";
  return out;
}

LPModel parse_lp_text(const std::string& text) {
  LPModel model;
  std::vector<std::string> lines;
  {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
  }
  enum Section { kNone, kObjective, kRows, kBounds, kDone };

  // First pass: declare variables in Bounds-section order so that indices
  // round-trip through the writer, which emits every variable there.
  {
    Section sec = kNone;
    for (const std::string& line : lines) {
      auto tokens = tokenize(line);
      if (tokens.empty() || tokens[0][0] == '\\') continue;
      std::string head = tokens[0];
      for (char& c : head) c = std::tolower(static_cast<unsigned char>(c));
      if (head == "maximize" || head == "minimize" || head == "subject" ||
          head == "st" || head == "st:") {
        sec = kNone;
        continue;
      }
      if (head == "bounds") {
        sec = kBounds;
        continue;
      }
      if (head == "end") break;
      if (sec != kBounds) continue;
      for (const std::string& tok : tokens) {
        double v;
        if (tok == "free" || tok == "<=" || tok == ">=" || tok == "=" ||
            tok == "+" || tok == "-" || is_inf_token(tok, &v) ||
            parse_number(tok, &v))
          continue;
        if (model.variable(tok) < 0)
          model.add_variable(tok, 0.0, kLPInfinity);
      }
    }
  }

  Section sec = kNone;
  std::string pending_tag;
  for (const std::string& line : lines) {
    // Comment lines; `\ tag: …` attaches provenance to the next row.
    {
      size_t first = line.find_first_not_of(" \t");
      if (first != std::string::npos && line[first] == '\\') {
        size_t tagpos = line.find("tag:", first);
        if (tagpos != std::string::npos) {
          size_t start = line.find_first_not_of(" \t", tagpos + 4);
          if (start != std::string::npos) pending_tag = line.substr(start);
        }
        continue;
      }
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::string head = tokens[0];
    for (char& c : head) c = std::tolower(static_cast<unsigned char>(c));
    if (head == "maximize" || head == "max") {
      model.maximize = true;
      sec = kObjective;
      continue;
    }
    if (head == "minimize" || head == "min") {
      model.maximize = false;
      sec = kObjective;
      continue;
    }
    if (head == "subject" || head == "st") {
      sec = kRows;
      continue;
    }
    if (head == "bounds") {
      sec = kBounds;
      continue;
    }
    if (head == "end") {
      sec = kDone;
      break;
    }

    size_t begin = 0;
    if (!tokens.empty() && tokens[0].back() == ':') begin = 1;  // row label

    if (sec == kObjective) {
      auto terms = parse_expr(tokens, begin, tokens.size(), model);
      for (const auto& [j, a] : terms) {
        while (model.objective.size() < model.vars.size())
          model.objective.push_back(0.0);
        model.objective[j] += a;
      }
    } else if (sec == kRows) {
      size_t relpos = tokens.size();
      Relation rel = Relation::kLe;
      for (size_t i = begin; i < tokens.size(); ++i) {
        if (tokens[i] == "<=" || tokens[i] == "=<") {
          rel = Relation::kLe;
          relpos = i;
          break;
        }
        if (tokens[i] == ">=" || tokens[i] == "=>") {
          rel = Relation::kGe;
          relpos = i;
          break;
        }
        if (tokens[i] == "=") {
          rel = Relation::kEq;
          relpos = i;
          break;
        }
      }
      if (relpos == tokens.size())
        throw std::runtime_error("constraint without relation: " + line);
      auto terms = parse_expr(tokens, begin, relpos, model);
      // Right-hand side: [sign] number.
      double rhs = 0.0, sgn = 1.0;
      bool have = false;
      for (size_t i = relpos + 1; i < tokens.size(); ++i) {
        if (tokens[i] == "-")
          sgn = -sgn;
        else if (tokens[i] == "+")
          continue;
        else if (parse_number(tokens[i], &rhs))
          have = true;
        else
          throw std::runtime_error("bad right-hand side: " + line);
      }
      if (!have) throw std::runtime_error("missing right-hand side: " + line);
      model.add_row(pending_tag, std::move(terms), rel, sgn * rhs);
      pending_tag.clear();
    } else if (sec == kBounds) {
      // Forms: `x free`, `L <= x <= U`, `x >= L`, `x <= U`, `-inf <= x <= U`.
      if (tokens.size() == 2 && tokens[1] == "free") {
        int j = model.variable(tokens[0]);
        if (j < 0) j = model.add_variable(tokens[0], 0.0, kLPInfinity);
        model.vars[j].lower = -kLPInfinity;
        model.vars[j].upper = kLPInfinity;
        continue;
      }
      // Collect (value | name | relation) triplets.
      std::vector<std::string> toks(tokens.begin(), tokens.end());
      // Merge standalone signs into following numbers.
      std::vector<std::string> merged;
      for (size_t i = 0; i < toks.size(); ++i) {
        double v;
        if ((toks[i] == "-" || toks[i] == "+") && i + 1 < toks.size() &&
            (parse_number(toks[i + 1], &v) || is_inf_token(toks[i + 1], &v))) {
          merged.push_back(toks[i] + toks[i + 1]);
          ++i;
        } else {
          merged.push_back(toks[i]);
        }
      }
      auto value_of = [](const std::string& tok, double* out) {
        return is_inf_token(tok, out) || parse_number(tok, out);
      };
      double v;
      if (merged.size() == 5 && merged[1] == "<=" && merged[3] == "<=") {
        double lo, hi;
        if (!value_of(merged[0], &lo) || !value_of(merged[4], &hi))
          throw std::runtime_error("bad bounds line: " + line);
        int j = model.variable(merged[2]);
        if (j < 0) j = model.add_variable(merged[2], 0.0, kLPInfinity);
        model.vars[j].lower = lo;
        model.vars[j].upper = hi;
      } else if (merged.size() == 3 && value_of(merged[2], &v)) {
        int j = model.variable(merged[0]);
        if (j < 0) j = model.add_variable(merged[0], 0.0, kLPInfinity);
        if (merged[1] == ">=")
          model.vars[j].lower = v;
        else if (merged[1] == "<=")
          model.vars[j].upper = v;
        else if (merged[1] == "=")
          model.vars[j].lower = model.vars[j].upper = v;
        else
          throw std::runtime_error("bad bounds line: " + line);
      } else {
        throw std::runtime_error("bad bounds line: " + line);
      }
    } else if (sec == kNone) {
      throw std::runtime_error("content outside any section: " + line);
    }
  }
  while (model.objective.size() < model.vars.size())
    model.objective.push_back(0.0);
  model.check();
  return model;
}

}  // namespace tame

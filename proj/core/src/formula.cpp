#include "mlsspf/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mlsspf/errors.hpp"

namespace mlsspf {

std::string_view kind_name(LiteralKind k) {
  switch (k) {
    case LiteralKind::Eq: return "Eq";
    case LiteralKind::Neq: return "Neq";
    case LiteralKind::EqEmpty: return "EqEmpty";
    case LiteralKind::Union: return "Union";
    case LiteralKind::Inter: return "Inter";
    case LiteralKind::Diff: return "Diff";
    case LiteralKind::Subseteq: return "Subseteq";
    case LiteralKind::NotSubseteq: return "NotSubseteq";
    case LiteralKind::In: return "In";
    case LiteralKind::NotIn: return "NotIn";
    case LiteralKind::Pow: return "Pow";
    case LiteralKind::Enum: return "Enum";
    case LiteralKind::Finite: return "Finite";
    case LiteralKind::NotFinite: return "NotFinite";
  }
  return "?";
}

std::string Literal::render() const {
  const auto& v = vars;
  switch (kind) {
    case LiteralKind::Eq: return v[0] + " = " + v[1];
    case LiteralKind::Neq: return "!" + v[0] + " = " + v[1];
    case LiteralKind::EqEmpty: return v[0] + " = {}";
    case LiteralKind::Union: return v[0] + " = " + v[1] + " U " + v[2];
    case LiteralKind::Inter: return v[0] + " = " + v[1] + " I " + v[2];
    case LiteralKind::Diff: return v[0] + " = " + v[1] + " \\ " + v[2];
    case LiteralKind::Subseteq: return v[0] + " <= " + v[1];
    case LiteralKind::NotSubseteq: return "!" + v[0] + " <= " + v[1];
    case LiteralKind::In: return v[0] + " in " + v[1];
    case LiteralKind::NotIn: return "!" + v[0] + " in " + v[1];
    case LiteralKind::Pow: return v[0] + " = Pow(" + v[1] + ")";
    case LiteralKind::Enum: {
      std::string s = v[0] + " = {";
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (i > 1) s += ", ";
        s += v[i];
      }
      return s + "}";
    }
    case LiteralKind::Finite: return "Finite(" + v[0] + ")";
    case LiteralKind::NotFinite: return "!Finite(" + v[0] + ")";
  }
  return {};
}

Formula::Formula(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::set<std::string> vs;
  for (const auto& l : literals_) vs.insert(l.vars.begin(), l.vars.end());
  vars_.assign(vs.begin(), vs.end());
}

std::vector<std::size_t> Formula::duplicate_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < literals_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (literals_[i] == literals_[j]) {
        out.push_back(i);
        break;
      }
  return out;
}

bool Formula::has_not_finite() const {
  return std::any_of(literals_.begin(), literals_.end(),
                     [](const Literal& l) { return l.kind == LiteralKind::NotFinite; });
}

std::vector<std::string> Formula::not_finite_vars() const {
  std::set<std::string> out;
  for (const auto& l : literals_)
    if (l.kind == LiteralKind::NotFinite) out.insert(l.vars[0]);
  return {out.begin(), out.end()};
}

std::string Formula::render() const {
  std::string s;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) s += " & ";
    s += literals_[i].render();
  }
  return s;
}

bool is_reserved_word(std::string_view w) {
  return w == "in" || w == "U" || w == "I" || w == "Pow" || w == "Finite";
}

namespace {

enum class Tok { Ident, Eq, LBrace, RBrace, Comma, LParen, RParen, Amp, Newline, Bang, Le, Backslash, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, std::size_t len) {
    out.push_back({k, std::move(t), line, col});
    i += len;
    col += len;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      out.push_back({Tok::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push(Tok::Ident, std::string(s.substr(i, j - i)), j - i);
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      push(Tok::Le, "<=", 2);
    } else {
      Tok k;
      switch (c) {
        case '=': k = Tok::Eq; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case ',': k = Tok::Comma; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '&': k = Tok::Amp; break;
        case '!': k = Tok::Bang; break;
        case '\\': k = Tok::Backslash; break;
        default: throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      }
      push(k, std::string(1, c), 1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    std::vector<Literal> lits;
    skip_newlines();
    if (peek().kind == Tok::End) return Formula{};
    lits.push_back(literal());
    while (true) {
      if (peek().kind == Tok::Amp) {
        next();
        skip_newlines();
        lits.push_back(literal());
      } else if (peek().kind == Tok::Newline) {
        skip_newlines();
        if (peek().kind == Tok::End) break;
        if (peek().kind == Tok::Amp) {
          next();
          skip_newlines();
        }
        lits.push_back(literal());
      } else if (peek().kind == Tok::End) {
        break;
      } else {
        error("expected '&' or newline");
      }
    }
    return Formula(std::move(lits));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                      t.col);
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) error(std::string("expected ") + what);
    next();
  }
  std::string var() {
    if (peek().kind != Tok::Ident || is_reserved_word(peek().text)) error("expected variable");
    return next().text;
  }

  Literal literal() {
    const Token start = peek();
    bool neg = false;
    if (peek().kind == Tok::Bang) {
      next();
      neg = true;
    }
    Literal l = atom();
    if (!neg) return l;
    switch (l.kind) {
      case LiteralKind::Eq: l.kind = LiteralKind::Neq; break;
      case LiteralKind::Subseteq: l.kind = LiteralKind::NotSubseteq; break;
      case LiteralKind::In: l.kind = LiteralKind::NotIn; break;
      case LiteralKind::Finite: l.kind = LiteralKind::NotFinite; break;
      default:
        throw SyntaxError("negation not allowed on " + std::string(kind_name(l.kind)) + " literal", start.line,
                          start.col);
    }
    return l;
  }

  Literal atom() {
    if (at_word("Finite")) {
      next();
      expect(Tok::LParen, "'('");
      std::string v = var();
      expect(Tok::RParen, "')'");
      return {LiteralKind::Finite, {v}};
    }
    std::string x = var();
    if (peek().kind == Tok::Le) {
      next();
      return {LiteralKind::Subseteq, {x, var()}};
    }
    if (at_word("in")) {
      next();
      return {LiteralKind::In, {x, var()}};
    }
    expect(Tok::Eq, "'=', '<=' or 'in'");
    if (peek().kind == Tok::LBrace) {
      const Token brace = next();
      if (peek().kind == Tok::RBrace) {
        next();
        return {LiteralKind::EqEmpty, {x}};
      }
      std::vector<std::string> vs{x};
      while (true) {
        if (peek().kind != Tok::Ident || is_reserved_word(peek().text))
          throw ArityError("malformed enumeration", peek().line, peek().col);
        vs.push_back(next().text);
        if (peek().kind == Tok::Comma) {
          next();
          continue;
        }
        if (peek().kind == Tok::RBrace) {
          next();
          break;
        }
        throw ArityError("unterminated enumeration opened", brace.line, brace.col);
      }
      return {LiteralKind::Enum, std::move(vs)};
    }
    if (at_word("Pow")) {
      next();
      expect(Tok::LParen, "'('");
      std::string w = var();
      expect(Tok::RParen, "')'");
      return {LiteralKind::Pow, {x, w}};
    }
    std::string y = var();
    LiteralKind k;
    if (at_word("U"))
      k = LiteralKind::Union;
    else if (at_word("I"))
      k = LiteralKind::Inter;
    else if (peek().kind == Tok::Backslash)
      k = LiteralKind::Diff;
    else
      return {LiteralKind::Eq, {x, y}};
    next();
    return {k, {x, y, var()}};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const HfSet& lookup(const Assignment& m, const std::string& v) {
  auto it = m.find(v);
  if (it == m.end()) throw UnboundVariable(v);
  return it->second;
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).run(); }

bool eval_literal(const Literal& l, const Assignment& m, const Limits& limits) {
  auto at = [&](std::size_t i) -> const HfSet& { return lookup(m, l.vars[i]); };
  switch (l.kind) {
    case LiteralKind::Eq: return at(0) == at(1);
    case LiteralKind::Neq: return at(0) != at(1);
    case LiteralKind::EqEmpty: return at(0).empty();
    case LiteralKind::Union: return at(0) == set_union(at(1), at(2));
    case LiteralKind::Inter: return at(0) == set_intersection(at(1), at(2));
    case LiteralKind::Diff: return at(0) == set_difference(at(1), at(2));
    case LiteralKind::Subseteq: return at(0).subset_of(at(1));
    case LiteralKind::NotSubseteq: return !at(0).subset_of(at(1));
    case LiteralKind::In: return at(1).contains(at(0));
    case LiteralKind::NotIn: return !at(1).contains(at(0));
    case LiteralKind::Pow:
      if (at(1).size() >= 63 || at(0).size() != (std::size_t{1} << at(1).size())) return false;
      return at(0) == powerset(at(1), limits.pow);
    case LiteralKind::Enum: {
      std::vector<HfSet> elems;
      for (std::size_t i = 1; i < l.vars.size(); ++i) elems.push_back(at(i));
      return at(0) == HfSet::make(std::move(elems));
    }
    case LiteralKind::Finite: at(0); return true;
    case LiteralKind::NotFinite: at(0); return false;
  }
  return false;
}

SatisfactionReport eval(const Formula& phi, const Assignment& m, const Limits& limits) {
  SatisfactionReport r;
  for (const auto& l : phi.literals()) {
    const bool v = eval_literal(l, m, limits);
    r.values.push_back(v);
    r.verdict = r.verdict && v;
  }
  return r;
}

Formula phi_minus(const Formula& phi) {
  std::vector<Literal> out;
  for (const auto& l : phi.literals())
    if (!l.is_finiteness()) out.push_back(l);
  return Formula(std::move(out));
}

}  // namespace mlsspf

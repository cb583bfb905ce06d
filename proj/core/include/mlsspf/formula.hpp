#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mlsspf/hf_set.hpp"

namespace mlsspf {

enum class LiteralKind {
  Eq,           // x = y
  Neq,          // x != y
  EqEmpty,      // x = {}
  Union,        // x = y U z
  Inter,        // x = y I z
  Diff,         // x = y \ z
  Subseteq,     // x <= y
  NotSubseteq,  // !x <= y
  In,           // x in y
  NotIn,        // !x in y
  Pow,          // x = Pow(y)
  Enum,         // x = {w0, ..., wH}
  Finite,       // Finite(x)
  NotFinite,    // !Finite(x)
};

std::string_view kind_name(LiteralKind k);

struct Literal {
  LiteralKind kind;
  // Operands in source order. For Enum: vars[0] is the left side, the rest
  // the listed elements.
  std::vector<std::string> vars;

  bool operator==(const Literal&) const = default;

  bool is_finiteness() const { return kind == LiteralKind::Finite || kind == LiteralKind::NotFinite; }
  std::string render() const;
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  // X_Φ, sorted.
  const std::vector<std::string>& vars() const { return vars_; }
  // Indices of literals identical to an earlier one.
  std::vector<std::size_t> duplicate_indices() const;

  bool has_not_finite() const;
  std::vector<std::string> not_finite_vars() const;

  std::string render() const;

  bool operator==(const Formula& o) const { return literals_ == o.literals_; }

 private:
  std::vector<Literal> literals_;
  std::vector<std::string> vars_;
};

bool is_reserved_word(std::string_view w);

// Throws SyntaxError / ArityError.
Formula parse(std::string_view text);

using Assignment = std::map<std::string, HfSet>;

struct Limits {
  std::size_t pow = kDefaultLimit;
};

// Finite(v) holds for every value; NotFinite never holds under a finite assignment.
bool eval_literal(const Literal& l, const Assignment& m, const Limits& limits = {});

struct SatisfactionReport {
  std::vector<bool> values;
  bool verdict = true;
  bool operator==(const SatisfactionReport&) const = default;
};

SatisfactionReport eval(const Formula& phi, const Assignment& m, const Limits& limits = {});

// Φ without Finite / NotFinite literals.
Formula phi_minus(const Formula& phi);

}  // namespace mlsspf

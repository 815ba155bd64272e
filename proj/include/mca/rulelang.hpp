#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mca/errors.hpp"

namespace mca {

// Assignment of states to the owning automaton's neighborhood entries, in
// neighborhood declaration order.
using LocalConfig = std::vector<int>;

// Expression AST for per-cell local rules.
//
//   expr ::= ite | or ;  ite ::= "if" or "then" or "else" or | or
//   or   ::= and ("or" and)* ;  and ::= cmp ("and" cmp)* ;
//   cmp  ::= add (("=="|"!="|"<"|"<=") add)? ;
//   add  ::= mul (("+"|"-") mul)* ; mul ::= unary (("*"|"%") unary)* ;
//   unary ::= "not" unary | atom ; atom ::= INT | "K" | "n(" NAME ")" | "(" expr ")"
//
// Booleans coerce: false=0, true=1. `%` is the mathematical modulus.
struct RuleExpr {
  enum class Kind {
    Int, Param, Neighbor,
    Add, Sub, Mul, Mod,
    Eq, Ne, Lt, Le,
    And, Or, Not, If,
  };

  Kind kind = Kind::Int;
  long value = 0;           // Int payload
  std::string name;         // Neighbor payload
  int neighborIndex = -1;   // resolved by bind_neighbors
  std::vector<RuleExpr> children;

  friend bool operator==(const RuleExpr& a, const RuleExpr& b) {
    return a.kind == b.kind && a.value == b.value && a.name == b.name &&
           a.children == b.children;
  }
};

RuleExpr parse_rule(std::string_view text);
std::string serialize_rule(const RuleExpr& e);

// Names of neighborhood entries referenced by e, in first-occurrence order.
std::vector<std::string> referenced_neighbors(const RuleExpr& e);

// Resolves n(name) references against the declared entry order; throws
// Error on an undeclared name.
void bind_neighbors(RuleExpr& e, const std::vector<std::string>& names);

// Evaluates a bound rule on states indexed by neighborhood position.
long eval_rule(const RuleExpr& e, std::span<const int> states, long K);

// Unbound convenience entry: resolves names against `names` on the fly.
long eval_rule(const RuleExpr& e, const std::vector<std::string>& names,
               std::span<const int> states, long K);

struct RangeVerdict {
  bool pass = true;
  std::optional<LocalConfig> witness;  // offending assignment on Fail
  std::string reason;
};

// Enumerates all |S|^|N| assignments and checks every output lies in
// 0..stateCount-1 without evaluation errors.
RangeVerdict check_range(const RuleExpr& e, const std::vector<std::string>& names,
                         int stateCount, long K);

}  // namespace mca

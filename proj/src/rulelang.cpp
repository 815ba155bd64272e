#include "mca/rulelang.hpp"

#include <algorithm>
#include <cctype>

namespace mca {

namespace {

using Kind = RuleExpr::Kind;

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  bool peek_symbol(std::string_view sym) {
    skip_ws();
    return text.substr(pos, sym.size()) == sym;
  }

  bool eat_symbol(std::string_view sym) {
    if (!peek_symbol(sym)) return false;
    pos += sym.size();
    return true;
  }

  std::string peek_name() {
    skip_ws();
    std::size_t p = pos;
    if (p >= text.size() || !std::isalpha(static_cast<unsigned char>(text[p]))) return {};
    std::size_t start = p;
    while (p < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_'))
      ++p;
    return std::string(text.substr(start, p - start));
  }

  bool eat_keyword(std::string_view kw) {
    if (peek_name() != kw) return false;
    skip_ws();
    pos += kw.size();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, pos); }

  RuleExpr expr() {
    if (eat_keyword("if")) {
      RuleExpr node;
      node.kind = Kind::If;
      node.children.push_back(or_expr());
      if (!eat_keyword("then")) fail("expected 'then'");
      node.children.push_back(or_expr());
      if (!eat_keyword("else")) fail("expected 'else'");
      node.children.push_back(or_expr());
      return node;
    }
    return or_expr();
  }

  RuleExpr or_expr() {
    RuleExpr left = and_expr();
    while (eat_keyword("or")) {
      RuleExpr node;
      node.kind = Kind::Or;
      node.children = {std::move(left), and_expr()};
      left = std::move(node);
    }
    return left;
  }

  RuleExpr and_expr() {
    RuleExpr left = cmp();
    while (eat_keyword("and")) {
      RuleExpr node;
      node.kind = Kind::And;
      node.children = {std::move(left), cmp()};
      left = std::move(node);
    }
    return left;
  }

  RuleExpr cmp() {
    RuleExpr left = add();
    Kind k;
    if (eat_symbol("==")) k = Kind::Eq;
    else if (eat_symbol("!=")) k = Kind::Ne;
    else if (eat_symbol("<=")) k = Kind::Le;
    else if (eat_symbol("<")) k = Kind::Lt;
    else return left;
    RuleExpr node;
    node.kind = k;
    node.children = {std::move(left), add()};
    return node;
  }

  RuleExpr add() {
    RuleExpr left = mul();
    while (true) {
      Kind k;
      if (eat_symbol("+")) k = Kind::Add;
      else if (eat_symbol("-")) k = Kind::Sub;
      else return left;
      RuleExpr node;
      node.kind = k;
      node.children = {std::move(left), mul()};
      left = std::move(node);
    }
  }

  RuleExpr mul() {
    RuleExpr left = unary();
    while (true) {
      Kind k;
      if (eat_symbol("*")) k = Kind::Mul;
      else if (eat_symbol("%")) k = Kind::Mod;
      else return left;
      RuleExpr node;
      node.kind = k;
      node.children = {std::move(left), unary()};
      left = std::move(node);
    }
  }

  RuleExpr unary() {
    if (eat_keyword("not")) {
      RuleExpr node;
      node.kind = Kind::Not;
      node.children = {unary()};
      return node;
    }
    return atom();
  }

  RuleExpr atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    if (eat_symbol("(")) {
      RuleExpr inner = expr();
      if (!eat_symbol(")")) fail("expected ')'");
      return inner;
    }
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      RuleExpr node;
      node.kind = Kind::Int;
      node.value = v;
      return node;
    }
    std::string name = peek_name();
    if (name == "K") {
      skip_ws();
      pos += 1;
      RuleExpr node;
      node.kind = Kind::Param;
      return node;
    }
    if (name == "n") {
      skip_ws();
      pos += 1;
      if (!eat_symbol("(")) fail("expected '(' after 'n'");
      std::string inner = peek_name();
      if (inner.empty()) fail("expected neighbor name");
      skip_ws();
      pos += inner.size();
      if (!eat_symbol(")")) fail("expected ')' after neighbor name");
      RuleExpr node;
      node.kind = Kind::Neighbor;
      node.name = std::move(inner);
      return node;
    }
    fail("unexpected token");
  }
};

int precedence(Kind k) {
  switch (k) {
    case Kind::If: return 0;
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Eq: case Kind::Ne: case Kind::Lt: case Kind::Le: return 3;
    case Kind::Add: case Kind::Sub: return 4;
    case Kind::Mul: case Kind::Mod: return 5;
    case Kind::Not: return 6;
    default: return 7;
  }
}

void serialize(const RuleExpr& e, std::string& out, int parentPrec) {
  int prec = precedence(e.kind);
  bool parens = prec < parentPrec;
  if (parens) out += '(';
  switch (e.kind) {
    case Kind::Int: out += std::to_string(e.value); break;
    case Kind::Param: out += 'K'; break;
    case Kind::Neighbor: out += "n(" + e.name + ")"; break;
    case Kind::Not:
      out += "not ";
      serialize(e.children[0], out, prec);
      break;
    case Kind::If:
      out += "if ";
      serialize(e.children[0], out, 1);
      out += " then ";
      serialize(e.children[1], out, 1);
      out += " else ";
      serialize(e.children[2], out, 1);
      break;
    default: {
      const char* op = nullptr;
      switch (e.kind) {
        case Kind::Add: op = " + "; break;
        case Kind::Sub: op = " - "; break;
        case Kind::Mul: op = " * "; break;
        case Kind::Mod: op = " % "; break;
        case Kind::Eq: op = " == "; break;
        case Kind::Ne: op = " != "; break;
        case Kind::Lt: op = " < "; break;
        case Kind::Le: op = " <= "; break;
        case Kind::And: op = " and "; break;
        case Kind::Or: op = " or "; break;
        default: break;
      }
      // Left-assoc chains keep the left child at the same level; the right
      // child needs one level more so reparsing rebuilds the same tree.
      serialize(e.children[0], out, prec);
      out += op;
      serialize(e.children[1], out, prec + 1);
      break;
    }
  }
  if (parens) out += ')';
}

void collect_neighbors(const RuleExpr& e, std::vector<std::string>& out) {
  if (e.kind == Kind::Neighbor &&
      std::find(out.begin(), out.end(), e.name) == out.end())
    out.push_back(e.name);
  for (const RuleExpr& c : e.children) collect_neighbors(c, out);
}

}  // namespace

RuleExpr parse_rule(std::string_view text) {
  Parser p{text};
  RuleExpr e = p.expr();
  if (!p.at_end()) throw SyntaxError("trailing input after expression", p.pos);
  return e;
}

std::string serialize_rule(const RuleExpr& e) {
  std::string out;
  serialize(e, out, 0);
  return out;
}

std::vector<std::string> referenced_neighbors(const RuleExpr& e) {
  std::vector<std::string> out;
  collect_neighbors(e, out);
  return out;
}

void bind_neighbors(RuleExpr& e, const std::vector<std::string>& names) {
  if (e.kind == Kind::Neighbor) {
    auto it = std::find(names.begin(), names.end(), e.name);
    if (it == names.end())
      throw Error("rule references undeclared neighbor '" + e.name + "'");
    e.neighborIndex = static_cast<int>(it - names.begin());
  }
  for (RuleExpr& c : e.children) bind_neighbors(c, names);
}

long eval_rule(const RuleExpr& e, std::span<const int> states, long K) {
  switch (e.kind) {
    case Kind::Int: return e.value;
    case Kind::Param: return K;
    case Kind::Neighbor:
      if (e.neighborIndex < 0 ||
          static_cast<std::size_t>(e.neighborIndex) >= states.size())
        throw Error("unbound neighbor reference 'n(" + e.name + ")'");
      return states[static_cast<std::size_t>(e.neighborIndex)];
    case Kind::Add: return eval_rule(e.children[0], states, K) + eval_rule(e.children[1], states, K);
    case Kind::Sub: return eval_rule(e.children[0], states, K) - eval_rule(e.children[1], states, K);
    case Kind::Mul: return eval_rule(e.children[0], states, K) * eval_rule(e.children[1], states, K);
    case Kind::Mod: {
      long a = eval_rule(e.children[0], states, K);
      long b = eval_rule(e.children[1], states, K);
      if (b < 1) throw ModulusNonPositiveError();
      long r = a % b;
      return r < 0 ? r + b : r;
    }
    case Kind::Eq: return eval_rule(e.children[0], states, K) == eval_rule(e.children[1], states, K);
    case Kind::Ne: return eval_rule(e.children[0], states, K) != eval_rule(e.children[1], states, K);
    case Kind::Lt: return eval_rule(e.children[0], states, K) < eval_rule(e.children[1], states, K);
    case Kind::Le: return eval_rule(e.children[0], states, K) <= eval_rule(e.children[1], states, K);
    case Kind::And:
      return eval_rule(e.children[0], states, K) != 0 && eval_rule(e.children[1], states, K) != 0;
    case Kind::Or:
      return eval_rule(e.children[0], states, K) != 0 || eval_rule(e.children[1], states, K) != 0;
    case Kind::Not: return eval_rule(e.children[0], states, K) == 0;
    case Kind::If:
      return eval_rule(e.children[0], states, K) != 0
                 ? eval_rule(e.children[1], states, K)
                 : eval_rule(e.children[2], states, K);
  }
  throw Error("corrupt rule expression");
}

long eval_rule(const RuleExpr& e, const std::vector<std::string>& names,
               std::span<const int> states, long K) {
  RuleExpr bound = e;
  bind_neighbors(bound, names);
  return eval_rule(bound, states, K);
}

RangeVerdict check_range(const RuleExpr& e, const std::vector<std::string>& names,
                         int stateCount, long K) {
  RuleExpr bound = e;
  try {
    bind_neighbors(bound, names);
  } catch (const Error& err) {
    return {false, std::nullopt, err.what()};
  }
  LocalConfig states(names.size(), 0);
  while (true) {
    try {
      long out = eval_rule(bound, states, K);
      if (out < 0 || out >= stateCount)
        return {false, states, "output " + std::to_string(out) + " outside 0.." +
                                   std::to_string(stateCount - 1)};
    } catch (const Error& err) {
      return {false, states, err.what()};
    }
    // odometer over |S|^|N|
    std::size_t i = 0;
    for (; i < states.size(); ++i) {
      if (++states[i] < stateCount) break;
      states[i] = 0;
    }
    if (i == states.size()) break;
  }
  return {};
}

}  // namespace mca

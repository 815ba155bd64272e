#include "mca/document.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace mca {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Line {
  int number;
  std::string text;
};

// significant lines with comments stripped
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream is{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
  }
  return out;
}

long parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
}

// `key = value`; returns false when there is no '='
bool key_value(const std::string& text, std::string& key, std::string& value) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos || (eq + 1 < text.size() && text[eq + 1] == '='))
    return false;
  key = trim(std::string_view(text).substr(0, eq));
  value = trim(std::string_view(text).substr(eq + 1));
  return true;
}

}  // namespace

CellularAutomaton parse_automaton(std::string_view text) {
  CellularAutomaton ca;
  ca.stateCount = 0;
  std::string section;
  std::string ruleTarget;
  bool sawMonoid = false, sawCells = false, sawStates = false, sawNeighborhood = false;
  std::map<std::string, std::string> ruleText;  // "*" or cell name -> expression
  std::map<std::string, int> ruleLine;
  std::vector<std::tuple<int, std::string, std::string>> actionLines;  // line, lhs, rhs
  std::vector<std::pair<int, std::string>> paramLines;
  std::vector<std::tuple<int, std::string, std::string>> neighborhoodLines;
  std::vector<std::pair<int, std::string>> relationLines;
  std::optional<std::pair<int, std::string>> baseLine;

  for (const Line& line : significant_lines(text)) {
    if (line.text.front() == '[') {
      if (line.text.back() != ']') throw ParseError("unterminated section header", line.number);
      std::string header = trim(std::string_view(line.text).substr(1, line.text.size() - 2));
      if (header.rfind("rule", 0) == 0) {
        section = "rule";
        ruleTarget = trim(std::string_view(header).substr(4));
        if (ruleTarget.empty())
          throw ParseError("rule section needs a cell name or *", line.number);
        if (ruleText.contains(ruleTarget))
          throw ParseError("duplicate rule section for '" + ruleTarget + "'", line.number);
        ruleText[ruleTarget] = "";
        ruleLine[ruleTarget] = line.number;
      } else if (header == "monoid" || header == "cells" || header == "states" ||
                 header == "action" || header == "neighborhood" || header == "params") {
        section = header;
        if (header == "monoid") {
          if (sawMonoid) throw ParseError("duplicate [monoid] section", line.number);
          sawMonoid = true;
        }
        if (header == "cells") {
          if (sawCells) throw ParseError("duplicate [cells] section", line.number);
          sawCells = true;
        }
        if (header == "states") {
          if (sawStates) throw ParseError("duplicate [states] section", line.number);
          sawStates = true;
        }
        if (header == "neighborhood") {
          if (sawNeighborhood) throw ParseError("duplicate [neighborhood] section", line.number);
          sawNeighborhood = true;
        }
      } else {
        throw ParseError("unknown section [" + header + "]", line.number);
      }
      continue;
    }
    if (section.empty()) throw ParseError("content before first section", line.number);

    if (section == "rule") {
      std::string& body = ruleText[ruleTarget];
      if (!body.empty()) body += ' ';
      body += line.text;
      continue;
    }
    if (section == "monoid") {
      if (line.text.rfind("relation", 0) == 0 &&
          (line.text.size() == 8 || line.text[8] == ' ' || line.text[8] == '\t')) {
        relationLines.emplace_back(line.number, trim(std::string_view(line.text).substr(8)));
        continue;
      }
      std::string key, value;
      if (key_value(line.text, key, value) && key == "generators") {
        for (const std::string& name : split(value, ',')) {
          if (!valid_name_token(name))
            throw ParseError("invalid generator name '" + name + "'", line.number);
          if (ca.pres.generator_index(name) >= 0)
            throw ParseError("duplicate generator '" + name + "'", line.number);
          ca.pres.generators.push_back(name);
        }
        continue;
      }
      throw ParseError("expected `generators = ...` or `relation u == v`", line.number);
    }
    if (section == "cells") {
      std::string key, value;
      if (!key_value(line.text, key, value))
        throw ParseError("expected `names = ...` or `base = ...`", line.number);
      if (key == "names") {
        for (const std::string& name : split(value, ',')) {
          if (!valid_name_token(name))
            throw ParseError("invalid cell name '" + name + "'", line.number);
          if (ca.cell_index(name) >= 0)
            throw ParseError("duplicate cell '" + name + "'", line.number);
          ca.cells.push_back(name);
        }
      } else if (key == "base") {
        baseLine = {line.number, value};
      } else {
        throw ParseError("unknown key '" + key + "' in [cells]", line.number);
      }
      continue;
    }
    if (section == "states") {
      std::string key, value;
      if (!key_value(line.text, key, value) || key != "count")
        throw ParseError("expected `count = N`", line.number);
      ca.stateCount = static_cast<int>(parse_int(value, line.number));
      continue;
    }
    if (section == "action") {
      std::string key, value;
      if (!key_value(line.text, key, value))
        throw ParseError("expected `cell.generator = cell`", line.number);
      actionLines.emplace_back(line.number, key, value);
      continue;
    }
    if (section == "neighborhood") {
      std::string key, value;
      if (!key_value(line.text, key, value))
        throw ParseError("expected `name = word`", line.number);
      neighborhoodLines.emplace_back(line.number, key, value);
      continue;
    }
    // params
    paramLines.emplace_back(line.number, line.text);
  }

  if (!sawMonoid) throw ParseError("missing [monoid] section", 0);
  if (!sawCells || ca.cells.empty()) throw ParseError("missing or empty [cells] section", 0);
  if (!sawStates) throw ParseError("missing [states] section", 0);
  if (!sawNeighborhood) throw ParseError("missing [neighborhood] section", 0);

  for (const auto& [number, rel] : relationLines) {
    std::size_t eq = rel.find("==");
    if (eq == std::string::npos) throw ParseError("relation needs `u == v`", number);
    try {
      ca.pres.relations.emplace_back(
          parse_word(trim(std::string_view(rel).substr(0, eq)), ca.pres),
          parse_word(trim(std::string_view(rel).substr(eq + 2)), ca.pres));
    } catch (const Error& err) {
      throw ParseError(err.what(), number);
    }
  }

  ca.action.assign(ca.cells.size(), std::vector<int>(ca.pres.generators.size(), -1));
  for (const auto& [number, lhs, rhs] : actionLines) {
    std::size_t dot = lhs.find('.');
    if (dot == std::string::npos) throw ParseError("expected `cell.generator = cell`", number);
    std::string cellName = trim(std::string_view(lhs).substr(0, dot));
    std::string genName = trim(std::string_view(lhs).substr(dot + 1));
    int x = ca.cell_index(cellName);
    if (x < 0) throw ParseError("unknown cell '" + cellName + "'", number);
    int g = ca.pres.generator_index(genName);
    if (g < 0) throw ParseError("unknown generator '" + genName + "'", number);
    int y = ca.cell_index(rhs);
    if (y < 0) throw ParseError("unknown cell '" + rhs + "'", number);
    if (ca.action[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)] >= 0)
      throw ParseError("duplicate action entry for " + cellName + "." + genName, number);
    ca.action[static_cast<std::size_t>(x)][static_cast<std::size_t>(g)] = y;
  }
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    for (std::size_t g = 0; g < ca.pres.generators.size(); ++g)
      if (ca.action[x][g] < 0)
        throw ParseError("missing action entry for " + ca.cells[x] + "." +
                             ca.pres.generators[g], 0);

  for (const auto& [number, name, wordText] : neighborhoodLines) {
    if (!valid_name_token(name))
      throw ParseError("invalid neighborhood name '" + name + "'", number);
    try {
      ca.neighborhood.push_back({name, parse_word(wordText, ca.pres)});
    } catch (const Error& err) {
      throw ParseError(err.what(), number);
    }
  }

  ca.params.assign(ca.cells.size(), 0);
  for (const auto& [number, text] : paramLines) {
    std::string key, value;
    if (!key_value(text, key, value)) throw ParseError("expected `cell = INT`", number);
    int x = ca.cell_index(key);
    if (x < 0) throw ParseError("unknown cell '" + key + "'", number);
    ca.params[static_cast<std::size_t>(x)] = parse_int(value, number);
  }

  std::optional<RuleExpr> defaultRule;
  if (auto it = ruleText.find("*"); it != ruleText.end()) {
    try {
      defaultRule = parse_rule(it->second);
    } catch (const Error& err) {
      throw ParseError(err.what(), ruleLine["*"]);
    }
  }
  ca.rules.resize(ca.cells.size());
  for (std::size_t x = 0; x < ca.cells.size(); ++x) {
    auto it = ruleText.find(ca.cells[x]);
    if (it != ruleText.end()) {
      try {
        ca.rules[x] = parse_rule(it->second);
      } catch (const Error& err) {
        throw ParseError(err.what(), ruleLine[ca.cells[x]]);
      }
    } else if (defaultRule) {
      ca.rules[x] = *defaultRule;
    } else {
      throw ParseError("no rule for cell '" + ca.cells[x] + "' and no [rule *]", 0);
    }
  }
  for (const auto& [target, body] : ruleText)
    if (target != "*" && ca.cell_index(target) < 0)
      throw ParseError("rule section for unknown cell '" + target + "'", ruleLine.at(target));

  if (baseLine) {
    int x = ca.cell_index(baseLine->second);
    if (x < 0) throw ParseError("unknown base cell '" + baseLine->second + "'", baseLine->first);
    ca.base = x;
  }

  Verdict verdict = validate(ca);
  if (!verdict) throw ValidationFailedError(verdict.message);
  return ca;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CellularAutomaton load_automaton(const std::string& path) {
  return parse_automaton(read_file(path));
}

std::string save_automaton(const CellularAutomaton& ca) {
  std::ostringstream os;
  os << "[monoid]\ngenerators =";
  for (std::size_t g = 0; g < ca.pres.generators.size(); ++g)
    os << (g ? ", " : " ") << ca.pres.generators[g];
  os << '\n';
  for (const auto& [u, v] : ca.pres.relations)
    os << "relation " << format_word(u, ca.pres) << " == " << format_word(v, ca.pres)
       << '\n';
  os << "\n[cells]\nnames =";
  for (std::size_t x = 0; x < ca.cells.size(); ++x) os << (x ? ", " : " ") << ca.cells[x];
  os << '\n';
  if (ca.base) os << "base = " << ca.cells[static_cast<std::size_t>(*ca.base)] << '\n';
  os << "\n[states]\ncount = " << ca.stateCount << "\n\n[action]\n";
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    for (std::size_t g = 0; g < ca.pres.generators.size(); ++g)
      os << ca.cells[x] << '.' << ca.pres.generators[g] << " = "
         << ca.cells[static_cast<std::size_t>(ca.action[x][g])] << '\n';
  os << "\n[neighborhood]\n";
  for (const auto& entry : ca.neighborhood)
    os << entry.name << " = " << format_word(entry.word, ca.pres) << '\n';
  os << "\n[params]\n";
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    os << ca.cells[x] << " = " << ca.params[x] << '\n';
  for (std::size_t x = 0; x < ca.cells.size(); ++x)
    os << "\n[rule " << ca.cells[x] << "]\n" << serialize_rule(ca.rules[x]) << '\n';
  return os.str();
}

CellMapSpec parse_cell_map(std::string_view text, const CellularAutomaton& g,
                           const CellularAutomaton& d) {
  CellMapSpec f;
  f.mapping.assign(g.cells.size(), -1);
  for (const Line& line : significant_lines(text)) {
    std::size_t arrow = line.text.find("->");
    if (arrow == std::string::npos)
      throw ParseError("expected `source -> target`", line.number);
    std::string src = trim(std::string_view(line.text).substr(0, arrow));
    std::string dst = trim(std::string_view(line.text).substr(arrow + 2));
    int x = g.cell_index(src);
    if (x < 0) throw ParseError("unknown source cell '" + src + "'", line.number);
    int y = d.cell_index(dst);
    if (y < 0) throw ParseError("unknown target cell '" + dst + "'", line.number);
    if (f.mapping[static_cast<std::size_t>(x)] >= 0)
      throw ParseError("duplicate mapping for '" + src + "'", line.number);
    f.mapping[static_cast<std::size_t>(x)] = y;
  }
  for (std::size_t x = 0; x < g.cells.size(); ++x)
    if (f.mapping[x] < 0) throw ParseError("no mapping for cell '" + g.cells[x] + "'", 0);
  return f;
}

CellMapSpec load_cell_map(const std::string& path, const CellularAutomaton& g,
                          const CellularAutomaton& d) {
  return parse_cell_map(read_file(path), g, d);
}

SectionSpec parse_section(std::string_view text, const CellularAutomaton& g,
                          const CellularAutomaton& d) {
  SectionSpec s;
  s.perTarget.resize(d.cells.size());
  std::vector<bool> seen(d.cells.size(), false);
  for (const Line& line : significant_lines(text)) {
    std::size_t arrow = line.text.find("<=");
    if (arrow == std::string::npos)
      throw ParseError("expected `target <= copy SOURCE` or `target <= const INT`",
                       line.number);
    std::string dst = trim(std::string_view(line.text).substr(0, arrow));
    std::string body = trim(std::string_view(line.text).substr(arrow + 2));
    int y = d.cell_index(dst);
    if (y < 0) throw ParseError("unknown target cell '" + dst + "'", line.number);
    if (seen[static_cast<std::size_t>(y)])
      throw ParseError("duplicate directive for '" + dst + "'", line.number);
    seen[static_cast<std::size_t>(y)] = true;
    SectionDirective dir;
    if (body.rfind("copy ", 0) == 0) {
      std::string src = trim(std::string_view(body).substr(5));
      int x = g.cell_index(src);
      if (x < 0) throw ParseError("unknown source cell '" + src + "'", line.number);
      dir = {SectionDirective::Kind::Copy, x};
    } else if (body.rfind("const ", 0) == 0) {
      long v = parse_int(trim(std::string_view(body).substr(6)), line.number);
      if (v < 0 || v >= d.stateCount)
        throw ParseError("const state out of range", line.number);
      dir = {SectionDirective::Kind::Const, static_cast<int>(v)};
    } else {
      throw ParseError("expected `copy SOURCE` or `const INT`", line.number);
    }
    s.perTarget[static_cast<std::size_t>(y)] = dir;
  }
  for (std::size_t y = 0; y < d.cells.size(); ++y)
    if (!seen[y]) throw ParseError("no directive for cell '" + d.cells[y] + "'", 0);
  return s;
}

SectionSpec load_section(const std::string& path, const CellularAutomaton& g,
                         const CellularAutomaton& d) {
  return parse_section(read_file(path), g, d);
}

Configuration parse_configuration(std::string_view text, const CellularAutomaton& ca) {
  std::vector<std::string> parts = split(text, ',');
  if (parts.size() != ca.cells.size())
    throw Error("configuration needs " + std::to_string(ca.cells.size()) +
                " states, got " + std::to_string(parts.size()));
  Configuration c(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    long v = 0;
    try {
      std::size_t used = 0;
      v = std::stol(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      throw Error("invalid state '" + parts[i] + "' in configuration");
    }
    if (v < 0 || v >= ca.stateCount)
      throw Error("state " + std::to_string(v) + " out of range in configuration");
    c[i] = static_cast<int>(v);
  }
  return c;
}

}  // namespace mca

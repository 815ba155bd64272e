#pragma once

#include <string>
#include <string_view>

#include "mca/automaton.hpp"
#include "mca/equivalence.hpp"

namespace mca {

// Sectioned automaton file:
//
//   [monoid]        generators = p, q ; one `relation u == v` line per relation
//   [cells]         names = k0, k1, ... ; optional `base = k0`
//   [states]        count = 6
//   [action]        one `cell.generator = cell` line per edge
//   [neighborhood]  one `name = word` line per entry, in order
//   [params]        optional `cell = INT` lines (default 0)
//   [rule *]        default rule expression; [rule CELL] overrides per cell
//
// `#` starts a comment; blank lines are ignored.
CellularAutomaton parse_automaton(std::string_view text);
CellularAutomaton load_automaton(const std::string& path);

std::string save_automaton(const CellularAutomaton& ca);

// One `source -> target` line per source cell.
CellMapSpec parse_cell_map(std::string_view text, const CellularAutomaton& g,
                           const CellularAutomaton& d);
CellMapSpec load_cell_map(const std::string& path, const CellularAutomaton& g,
                          const CellularAutomaton& d);

// One line per target cell: `target <= copy SOURCE` or `target <= const INT`.
SectionSpec parse_section(std::string_view text, const CellularAutomaton& g,
                          const CellularAutomaton& d);
SectionSpec load_section(const std::string& path, const CellularAutomaton& g,
                         const CellularAutomaton& d);

// Comma-separated states in cell declaration order, e.g. "0,0,2,0,0,0".
Configuration parse_configuration(std::string_view text, const CellularAutomaton& ca);

std::string read_file(const std::string& path);

}  // namespace mca

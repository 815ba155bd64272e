#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mca {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct UnknownGeneratorError : Error {
  explicit UnknownGeneratorError(const std::string& symbol)
      : Error("unknown generator '" + symbol + "'"), symbol(symbol) {}
  std::string symbol;
};

struct UnknownCellError : Error {
  explicit UnknownCellError(const std::string& name)
      : Error("unknown cell '" + name + "'"), name(name) {}
  std::string name;
};

struct ModulusNonPositiveError : Error {
  ModulusNonPositiveError() : Error("modulus divisor evaluated to a value < 1") {}
};

struct NotOrbitInvariantError : Error {
  NotOrbitInvariantError() : Error("local configuration is not orbit-invariant") {}
};

struct AtomOutOfRangeError : Error {
  explicit AtomOutOfRangeError(int atom)
      : Error("state atom #" + std::to_string(atom) + " out of range"), atom(atom) {}
  int atom;
};

struct CapExceededError : Error {
  CapExceededError(unsigned long long required, unsigned long long cap)
      : Error("configuration space of size " + std::to_string(required) +
              " exceeds cap " + std::to_string(cap) + "; use sampled mode") {}
};

struct NotClosedError : Error {
  NotClosedError(const std::string& cell, const std::string& generator)
      : Error("subset not closed: cell '" + cell + "' leaves under generator '" +
              generator + "'"),
        cell(cell), generator(generator) {}
  std::string cell;
  std::string generator;
};

struct IncompatibleSignaturesError : Error {
  explicit IncompatibleSignaturesError(const std::string& what)
      : Error("incompatible signatures: " + what) {}
};

struct NotReachableError : Error {
  explicit NotReachableError(const std::string& cell)
      : Error("cell '" + cell + "' is not reachable from the base cell"), cell(cell) {}
  std::string cell;
};

struct LiftImpossibleError : Error {
  explicit LiftImpossibleError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

struct ValidationFailedError : Error {
  explicit ValidationFailedError(const std::string& what) : Error(what) {}
};

}  // namespace mca

#pragma once

#include <stdexcept>
#include <string>

namespace igl {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text input (formula, sequent, or proof document) could not be parsed.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position(position) {}
  explicit ParseError(const std::string& what) : Error(what), position(0) {}
  std::size_t position;
};

// A path does not address a node of the tree it was used on.
struct PathNotInTree : Error {
  using Error::Error;
};

// A rule instance was queried for structure it does not have.
struct NotAnInstance : Error {
  using Error::Error;
};

// A proof transformer met input that is not the valid proof it requires.
struct NotAProof : Error {
  using Error::Error;
};

// A world index outside the model it was used on.
struct UnknownWorld : Error {
  using Error::Error;
};

// A search or unfolding budget was exhausted before an answer was reached.
struct ResourceLimit : Error {
  using Error::Error;
};

// An invariant the library itself guarantees failed to hold. Never swallowed.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace igl

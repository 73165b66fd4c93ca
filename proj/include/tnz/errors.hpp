#pragma once

#include <stdexcept>
#include <string>

namespace tnz {

// Malformed or inconsistent input data (bad file, invalid cocycle, wrong sizes).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical or algebraic solver could not produce an answer
// (Newton non-convergence, no integer solution, unsupported homology).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes collapsed onto {0, 1, inf}.
class DegeneracyError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Broken internal invariant, e.g. an exact division that leaves a remainder.
// Never caught by the library or the CLI.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tnz

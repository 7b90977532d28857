#ifndef DIALOGFST_ERROR_HPP
#define DIALOGFST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dialogfst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating corpus input.
class CorpusError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or invalid rules file.
class RulesError : public Error {
 public:
  using Error::Error;
};

/// Invalid use of an automaton: bad ids, stale split candidates, empty inputs.
class FstError : public Error {
 public:
  using Error::Error;
};

/// Corrupted, truncated or version-mismatched model file.
class ModelFormatError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

/// Non-fatal findings collected while loading or annotating.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace dialogfst

#endif  // DIALOGFST_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace autree {

// Error codes for contract violations and malformed input. Verdict-style
// outcomes (a failed verification, a non-Cauchy sequence) are returned as
// data, never thrown.
enum class errc {
  bad_parameters,
  bad_letter,
  root_has_no_parent,
  not_in_subtree,
  syntax_error,
  validation_error,
  unknown_state,
  not_a_permutation,
  automaton_mismatch,
  malformed_portrait,
  not_in_level_stabilizer,
  cap_exceeded,
  requires_root_line,
  too_large_for_exhaustive,
  too_large,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_parameters: return "BadParameters";
    case errc::bad_letter: return "BadLetter";
    case errc::root_has_no_parent: return "RootHasNoParent";
    case errc::not_in_subtree: return "NotInSubtree";
    case errc::syntax_error: return "SyntaxError";
    case errc::validation_error: return "ValidationError";
    case errc::unknown_state: return "UnknownState";
    case errc::not_a_permutation: return "NotAPermutation";
    case errc::automaton_mismatch: return "AutomatonMismatch";
    case errc::malformed_portrait: return "MalformedPortrait";
    case errc::not_in_level_stabilizer: return "NotInLevelStabilizer";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::requires_root_line: return "RequiresRootLine";
    case errc::too_large_for_exhaustive: return "TooLargeForExhaustive";
    case errc::too_large: return "TooLarge";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace autree

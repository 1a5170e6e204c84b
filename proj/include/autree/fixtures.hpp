#pragma once

#include <array>
#include <memory>
#include <string>

#include "autree/io.hpp"

namespace autree {

// Built-in automata, shipped identically as data files under fixtures/.
//   rootswap:   a swaps the two top subtrees and acts trivially below.
//   odometer:   t adds one in little-endian binary, t = (e, t)(0 1).
//   grigorchuk: the five-state automaton with b = (a, c), c = (a, d),
//               d = (e, b) and a the root swap.
struct Fixture {
  const char* name;
  const char* definition;
};

inline const std::array<Fixture, 3>& fixtures() {
  static const std::array<Fixture, 3> table{{
      {"rootswap",
       "alphabet: 2\n"
       "state e = id | e e\n"
       "state a = (0 1) | e e\n"},
      {"odometer",
       "alphabet: 2\n"
       "state e = id | e e\n"
       "state t = (0 1) | e t\n"},
      {"grigorchuk",
       "alphabet: 2\n"
       "state e = id | e e\n"
       "state a = (0 1) | e e\n"
       "state b = id | a c\n"
       "state c = id | a d\n"
       "state d = id | e b\n"},
  }};
  return table;
}

inline bool is_fixture_name(std::string_view name) {
  for (const Fixture& f : fixtures())
    if (name == f.name) return true;
  return false;
}

inline std::shared_ptr<const AutomatonDef> fixture_automaton(std::string_view name) {
  for (const Fixture& f : fixtures())
    if (name == f.name) return parse_automaton_text(f.definition);
  fail(errc::bad_parameters, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace autree

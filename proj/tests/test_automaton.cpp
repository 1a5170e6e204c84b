#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "autree/automaton.hpp"
#include "autree/fixtures.hpp"
#include "autree/io.hpp"

using namespace autree;

namespace {

bool has_issue(const ValidationReport& report, errc code) {
  for (const auto& issue : report.issues)
    if (issue.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("identity-only automaton validates") {
  AutomatonSpec spec;
  spec.alphabet = 2;
  spec.states.push_back({"e", {0, 1}, {"e", "e"}});
  CHECK(validate_automaton(spec).valid());
  auto def = AutomatonDef::from_spec(spec);
  REQUIRE(def->identity_state().has_value());
  CHECK(*def->identity_state() == 0);
}

TEST_CASE("transition to an undeclared state is reported") {
  AutomatonSpec spec;
  spec.alphabet = 2;
  spec.states.push_back({"e", {0, 1}, {"e", "ghost"}});
  auto report = validate_automaton(spec);
  CHECK_FALSE(report.valid());
  CHECK(has_issue(report, errc::unknown_state));
}

TEST_CASE("non-bijective output is reported") {
  AutomatonSpec spec;
  spec.alphabet = 2;
  spec.states.push_back({"s", {0, 0}, {"s", "s"}});
  auto report = validate_automaton(spec);
  CHECK_FALSE(report.valid());
  CHECK(has_issue(report, errc::not_a_permutation));
}

TEST_CASE("duplicate state names are reported") {
  AutomatonSpec spec;
  spec.alphabet = 2;
  spec.states.push_back({"s", {0, 1}, {"s", "s"}});
  spec.states.push_back({"s", {1, 0}, {"s", "s"}});
  CHECK(has_issue(validate_automaton(spec), errc::validation_error));
}

TEST_CASE("from_spec throws on invalid input") {
  AutomatonSpec spec;
  spec.alphabet = 2;
  spec.states.push_back({"s", {0, 0}, {"s", "s"}});
  CHECK_THROWS_MATCHES(AutomatonDef::from_spec(spec), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::validation_error; }));
}

TEST_CASE("odometer file parses to two states") {
  auto def = parse_automaton_text("alphabet: 2\nstate e = id | e e\nstate t = (0 1) | e t\n");
  REQUIRE(def->size() == 2);
  CHECK(def->p() == 2);
  CHECK(def->find("t").has_value());
  CHECK(def->state(*def->find("t")).output.to_cycles() == "(0 1)");
  REQUIRE(def->identity_state().has_value());
  CHECK(def->state(*def->identity_state()).name == "e");
}

TEST_CASE("missing alphabet line fails on line 1") {
  try {
    parse_automaton_text("state e = id | e e\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::syntax_error);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("reference to an undeclared state fails validation") {
  CHECK_THROWS_MATCHES(parse_automaton_text("alphabet: 2\nstate s = id | s ghost\n"), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::validation_error; }));
}

TEST_CASE("syntax errors carry the offending line number") {
  try {
    parse_automaton_text("alphabet: 2\nstate e = id | e e\nstate ! = id | e e\n");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::syntax_error);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  auto def = parse_automaton_text(
      "# odometer\n\nalphabet: 2\n\nstate e = id | e e  # trivial\nstate t = (0 1) | e t\n");
  CHECK(def->size() == 2);
}

TEST_CASE("multi-cycle permutations parse") {
  auto def = parse_automaton_text("alphabet: 4\nstate s = (0 1)(2 3) | s s s s\n");
  const auto& perm = def->state(0).output;
  CHECK(perm(0) == 1);
  CHECK(perm(1) == 0);
  CHECK(perm(2) == 3);
  CHECK(perm(3) == 2);
}

TEST_CASE("cycle entries outside the alphabet fail") {
  CHECK_THROWS_AS(parse_automaton_text("alphabet: 2\nstate s = (0 2) | s s\n"), Error);
}

TEST_CASE("built-in fixtures parse, validate, and match their data files") {
  for (const Fixture& f : fixtures()) {
    auto built_in = fixture_automaton(f.name);
    CHECK(built_in->p() == 2);

    std::ifstream file(std::string(AUTREE_FIXTURE_DIR) + "/" + f.name + ".aut");
    REQUIRE(file.good());
    std::ostringstream text;
    text << file.rdbuf();
    auto from_file = parse_automaton_text(text.str());
    CHECK(built_in->same_definition(*from_file));
  }
}

TEST_CASE("render/parse round trip preserves the definition") {
  for (const Fixture& f : fixtures()) {
    auto def = fixture_automaton(f.name);
    auto reparsed = parse_automaton_text(render_automaton(*def));
    CHECK(def->same_definition(*reparsed));
  }
}

TEST_CASE("merging automata keeps left indices and folds identity states") {
  auto odo = fixture_automaton("odometer");
  auto gri = fixture_automaton("grigorchuk");
  MergedAutomaton merged = merge_automata(*odo, *gri);
  for (int i = 0; i < odo->size(); ++i) CHECK(merged.left_map[i] == i);
  // Both have an identity state, so the merged automaton has size 2 + 5 - 1.
  CHECK(merged.def->size() == 6);
  CHECK(merged.right_map[*gri->identity_state()] == *odo->identity_state());
  CHECK(merged.def->find("b").has_value());
}

TEST_CASE("merging automata over different alphabets fails") {
  auto odo = fixture_automaton("odometer");
  auto tri = parse_automaton_text("alphabet: 3\nstate e = id | e e e\n");
  CHECK_THROWS_MATCHES(merge_automata(*odo, *tri), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::automaton_mismatch; }));
}

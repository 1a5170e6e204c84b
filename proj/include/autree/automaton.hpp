#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autree/error.hpp"
#include "autree/permutation.hpp"

namespace autree {

// Raw, unvalidated description of a finite self-similar automaton. Output
// permutations are kept as plain image tables so that validation can report
// non-bijective outputs instead of refusing to represent them.
struct StateSpec {
  std::string name;
  std::vector<int> output_images;        // candidate image table over 0..p-1
  std::vector<std::string> transitions;  // section state name per letter
};

struct AutomatonSpec {
  int alphabet = 0;
  std::vector<StateSpec> states;
};

struct ValidationIssue {
  errc code;
  std::string state;  // offending state name, empty for automaton-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }

  std::string summary() const {
    std::string s;
    for (const auto& i : issues) {
      if (!s.empty()) s += "; ";
      s += std::string(errc_name(i.code)) + " " + i.message;
    }
    return s;
  }
};

// Confirms the automaton invariants; the report carries all violations.
inline ValidationReport validate_automaton(const AutomatonSpec& spec) {
  ValidationReport report;
  auto add = [&](errc code, const std::string& state, std::string msg) {
    report.issues.push_back({code, state, std::move(msg)});
  };

  if (spec.alphabet < 2)
    add(errc::bad_parameters, "", "alphabet degree must be >= 2");
  if (spec.states.empty())
    add(errc::validation_error, "", "automaton declares no states");

  std::map<std::string, int> seen;
  for (const auto& st : spec.states) {
    if (st.name.empty()) add(errc::validation_error, st.name, "empty state name");
    if (seen.count(st.name))
      add(errc::validation_error, st.name, "duplicate state '" + st.name + "'");
    seen[st.name] = 1;
  }
  for (const auto& st : spec.states) {
    if (static_cast<int>(st.output_images.size()) != spec.alphabet ||
        !Permutation::from_images(st.output_images)) {
      add(errc::not_a_permutation, st.name,
          "output of state '" + st.name + "' is not a permutation of the alphabet");
    }
    if (static_cast<int>(st.transitions.size()) != spec.alphabet) {
      add(errc::validation_error, st.name,
          "state '" + st.name + "' must list one section per letter");
    }
    for (const auto& target : st.transitions) {
      if (!seen.count(target))
        add(errc::unknown_state, st.name,
            "state '" + st.name + "' has a section to undeclared state '" + target + "'");
    }
  }
  return report;
}

// A validated finite self-similar automaton. Each state carries its root
// permutation (activity) and, per letter, the state acting on that subtree.
class AutomatonDef {
 public:
  struct State {
    std::string name;
    Permutation output;
    std::vector<int> transitions;  // state index per letter
  };

  static std::shared_ptr<const AutomatonDef> from_spec(const AutomatonSpec& spec) {
    ValidationReport report = validate_automaton(spec);
    if (!report.valid()) fail(errc::validation_error, report.summary());

    auto def = std::make_shared<AutomatonDef>();
    def->p_ = spec.alphabet;
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(spec.states.size()); ++i)
      index[spec.states[i].name] = i;
    for (const auto& st : spec.states) {
      State s{st.name, *Permutation::from_images(st.output_images), {}};
      s.transitions.reserve(spec.alphabet);
      for (const auto& target : st.transitions) s.transitions.push_back(index.at(target));
      def->states_.push_back(std::move(s));
    }
    def->index_ = std::move(index);
    def->detect_identity_state();
    return def;
  }

  int p() const { return p_; }
  int size() const { return static_cast<int>(states_.size()); }
  const State& state(int i) const { return states_[i]; }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // The designated identity state: trivial output, all sections to itself.
  std::optional<int> identity_state() const { return identity_state_; }

  bool same_definition(const AutomatonDef& other) const {
    if (p_ != other.p_ || states_.size() != other.states_.size()) return false;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (states_[i].name != other.states_[i].name) return false;
      if (states_[i].output != other.states_[i].output) return false;
      if (states_[i].transitions != other.states_[i].transitions) return false;
    }
    return true;
  }

  // Internal: used by builders that assemble states directly.
  int p_ = 0;
  std::vector<State> states_;
  std::map<std::string, int> index_;
  std::optional<int> identity_state_;

  void detect_identity_state() {
    identity_state_.reset();
    for (int i = 0; i < size(); ++i) {
      if (!states_[i].output.is_identity()) continue;
      bool self = true;
      for (int t : states_[i].transitions)
        if (t != i) self = false;
      if (self) {
        identity_state_ = i;
        return;
      }
    }
  }
};

// Disjoint union of two automata over the same alphabet. Left states keep
// their indices; right states are appended, renamed on name collision. When
// both automata have a designated identity state the right one is folded
// onto the left one.
struct MergedAutomaton {
  std::shared_ptr<const AutomatonDef> def;
  std::vector<int> left_map;   // old left index -> merged index (identity map)
  std::vector<int> right_map;  // old right index -> merged index
};

inline MergedAutomaton merge_automata(const AutomatonDef& a, const AutomatonDef& b) {
  if (a.p() != b.p())
    fail(errc::automaton_mismatch, "cannot merge automata over different alphabets");

  auto merged = std::make_shared<AutomatonDef>();
  merged->p_ = a.p();
  merged->states_ = a.states_;

  std::vector<int> right_map(b.size(), -1);
  const bool fold_identity = a.identity_state().has_value() && b.identity_state().has_value();
  for (int i = 0; i < b.size(); ++i) {
    if (fold_identity && i == *b.identity_state()) {
      right_map[i] = *a.identity_state();
      continue;
    }
    right_map[i] = static_cast<int>(merged->states_.size());
    merged->states_.push_back(b.state(i));
  }
  // Re-target the copied transitions and fix up colliding names.
  for (int i = 0; i < b.size(); ++i) {
    if (fold_identity && i == *b.identity_state()) continue;
    auto& st = merged->states_[right_map[i]];
    for (int& t : st.transitions) t = right_map[t];
  }
  std::map<std::string, int> index;
  for (int i = 0; i < a.size(); ++i) index[merged->states_[i].name] = i;
  for (int i = a.size(); i < static_cast<int>(merged->states_.size()); ++i) {
    std::string name = merged->states_[i].name;
    int suffix = 2;
    while (index.count(name)) name = merged->states_[i].name + "_" + std::to_string(suffix++);
    merged->states_[i].name = name;
    index[name] = i;
  }
  merged->index_ = std::move(index);
  merged->detect_identity_state();

  std::vector<int> left_map(a.size());
  for (int i = 0; i < a.size(); ++i) left_map[i] = i;
  return {merged, std::move(left_map), std::move(right_map)};
}

}  // namespace autree

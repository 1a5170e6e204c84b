#pragma once

#include <deque>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "autree/automaton.hpp"
#include "autree/error.hpp"
#include "autree/tree.hpp"

namespace autree {

// One letter of a group word: a state of the automaton or its formal inverse.
struct Factor {
  int state;
  int exp;  // +1 or -1

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// An element of Aut T, represented as a group word over the states of a
// self-similar automaton. The word composes left-to-right as functions, the
// leftmost factor applied last. Words are kept as written; equality is
// semantic, decided by the identity procedure below.
//
// Action convention (left action): g(a w) = pi_g(a) . (g|_a)(w). Hence
//   pi_{gh} = pi_g o pi_h,   (gh)|_a = g|_{pi_h(a)} . h|_a,
//   pi_{g^-1} = pi_g^-1,     (g^-1)|_a = (g|_{pi_g^-1(a)})^-1.
class Element {
 public:
  Element(std::shared_ptr<const AutomatonDef> aut, std::vector<Factor> word)
      : aut_(std::move(aut)), word_(std::move(word)) {}

  static Element identity(std::shared_ptr<const AutomatonDef> aut) {
    return Element(std::move(aut), {});
  }

  static Element generator(std::shared_ptr<const AutomatonDef> aut, int state, int exp = 1) {
    if (state < 0 || state >= aut->size()) fail(errc::unknown_state, "state index out of range");
    if (exp != 1 && exp != -1) fail(errc::bad_parameters, "factor exponent must be +1 or -1");
    return Element(std::move(aut), {Factor{state, exp}});
  }

  const AutomatonDef& automaton() const { return *aut_; }
  const std::shared_ptr<const AutomatonDef>& automaton_ptr() const { return aut_; }
  const std::vector<Factor>& word() const { return word_; }

 private:
  std::shared_ptr<const AutomatonDef> aut_;
  std::vector<Factor> word_;
};

namespace detail {

inline Permutation factor_activity(const AutomatonDef& aut, const Factor& f) {
  const Permutation& out = aut.state(f.state).output;
  return f.exp > 0 ? out : out.inverse();
}

// First-level section of a single factor at letter a.
inline Factor factor_section(const AutomatonDef& aut, const Factor& f, int a) {
  const auto& st = aut.state(f.state);
  if (f.exp > 0) return Factor{st.transitions[a], 1};
  int pre = st.output.inverse()(a);
  return Factor{st.transitions[pre], -1};
}

// One step of the wreath recursion on a whole word: returns the first-level
// section word at letter a together with the image letter pi_w(a). Processing
// runs right to left, the rightmost factor acting first.
inline std::pair<std::vector<Factor>, int> word_step(const AutomatonDef& aut,
                                                     const std::vector<Factor>& word, int a) {
  std::deque<Factor> out;
  int b = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out.push_front(factor_section(aut, *it, b));
    b = factor_activity(aut, *it)(b);
  }
  return {std::vector<Factor>(out.begin(), out.end()), b};
}

// Drops designated-identity factors and freely reduces adjacent inverse
// pairs. Semantics-preserving; used for memo keys and the identity search.
inline std::vector<Factor> canonical_word(const AutomatonDef& aut,
                                          const std::vector<Factor>& word) {
  std::vector<Factor> out;
  out.reserve(word.size());
  const auto id_state = aut.identity_state();
  for (const Factor& f : word) {
    if (id_state && f.state == *id_state) continue;
    if (!out.empty() && out.back().state == f.state && out.back().exp == -f.exp) {
      out.pop_back();
      continue;
    }
    out.push_back(f);
  }
  return out;
}

inline void require_same_automaton(const Element& g, const Element& h) {
  if (g.automaton_ptr() == h.automaton_ptr()) return;
  if (g.automaton().same_definition(h.automaton())) return;
  fail(errc::automaton_mismatch, "elements belong to different automata");
}

inline void require_letter(const AutomatonDef& aut, int a) {
  if (a < 0 || a >= aut.p()) fail(errc::bad_letter, "letter out of alphabet range");
}

}  // namespace detail

// The root permutation of g.
inline Permutation activity(const Element& g) {
  Permutation pi = Permutation::identity(g.automaton().p());
  for (const Factor& f : g.word()) pi = pi.after(detail::factor_activity(g.automaton(), f));
  return pi;
}

// The section g|_v, iterating the first-level recursion down the word v.
inline Element section(const Element& g, const Vertex& v) {
  std::vector<Factor> word = g.word();
  for (std::size_t i = 0; i < v.length(); ++i) {
    detail::require_letter(g.automaton(), v.letter(i));
    word = detail::word_step(g.automaton(), word, v.letter(i)).first;
  }
  return Element(g.automaton_ptr(), std::move(word));
}

// The image vertex g(v); same length as v.
inline Vertex apply(const Element& g, const Vertex& v) {
  std::vector<Factor> word = g.word();
  std::vector<int> image;
  image.reserve(v.length());
  for (std::size_t i = 0; i < v.length(); ++i) {
    detail::require_letter(g.automaton(), v.letter(i));
    auto [next, b] = detail::word_step(g.automaton(), word, v.letter(i));
    image.push_back(b);
    word = std::move(next);
  }
  return Vertex(std::move(image));
}

// Group product: the word of g followed by the word of h, so that
// apply(compose(g,h), v) = apply(g, apply(h, v)).
inline Element compose(const Element& g, const Element& h) {
  detail::require_same_automaton(g, h);
  std::vector<Factor> word = g.word();
  word.insert(word.end(), h.word().begin(), h.word().end());
  return Element(g.automaton_ptr(), std::move(word));
}

inline Element invert(const Element& g) {
  std::vector<Factor> word;
  word.reserve(g.word().size());
  for (auto it = g.word().rbegin(); it != g.word().rend(); ++it)
    word.push_back(Factor{it->state, -it->exp});
  return Element(g.automaton_ptr(), std::move(word));
}

// Decides whether g acts trivially on the whole tree. Breadth-first closure
// over section words with a visited set: g is trivial iff every reachable
// section word has trivial activity. Sections of a length-L word are words
// of length <= L over the states and their formal inverses, so the closure
// meets at most (2*#states)^(L+1) distinct words and terminates.
inline bool is_identity(const Element& g) {
  const AutomatonDef& aut = g.automaton();
  std::set<std::vector<Factor>> visited;
  std::deque<std::vector<Factor>> queue;
  queue.push_back(detail::canonical_word(aut, g.word()));
  visited.insert(queue.front());
  while (!queue.empty()) {
    std::vector<Factor> word = std::move(queue.front());
    queue.pop_front();
    Permutation pi = Permutation::identity(aut.p());
    for (const Factor& f : word) pi = pi.after(detail::factor_activity(aut, f));
    if (!pi.is_identity()) return false;
    for (int a = 0; a < aut.p(); ++a) {
      auto child = detail::canonical_word(aut, detail::word_step(aut, word, a).first);
      if (visited.insert(child).second) queue.push_back(std::move(child));
    }
  }
  return true;
}

inline bool equals(const Element& g, const Element& h) {
  detail::require_same_automaton(g, h);
  return is_identity(compose(g, invert(h)));
}

// Wreath decomposition of g: its p first-level sections plus its activity.
struct WreathDecomposition {
  std::vector<Element> sections;
  Permutation activity;
};

inline WreathDecomposition phi(const Element& g) {
  WreathDecomposition d{{}, activity(g)};
  d.sections.reserve(g.automaton().p());
  for (int a = 0; a < g.automaton().p(); ++a)
    d.sections.push_back(section(g, Vertex({a})));
  return d;
}

// True iff g fixes every vertex of length n (hence of every length <= n).
inline bool fixes_level(const Element& g, int n) {
  if (n < 0) fail(errc::bad_parameters, "level must be >= 0");
  for (const Vertex& v : level_vertices(n, Alphabet(g.automaton().p())))
    if (apply(g, v) != v) return false;
  return true;
}

// Level-n sections of a level-n stabilizer member, in lexicographic vertex
// order. Realizes the isomorphism of stab(n) with the p^n-fold product.
inline std::vector<Element> phi_n(const Element& g, int n) {
  if (n < 0) fail(errc::bad_parameters, "level must be >= 0");
  if (!fixes_level(g, n))
    fail(errc::not_in_level_stabilizer, "element does not stabilize level " + std::to_string(n));
  std::vector<Element> sections;
  for (const Vertex& v : level_vertices(n, Alphabet(g.automaton().p())))
    sections.push_back(section(g, v));
  return sections;
}

// Rewrites g over a merged automaton via the state map from merge_automata.
inline Element lift(const Element& g, const MergedAutomaton& merged,
                    const std::vector<int>& state_map) {
  std::vector<Factor> word;
  word.reserve(g.word().size());
  for (const Factor& f : g.word()) word.push_back(Factor{state_map[f.state], f.exp});
  return Element(merged.def, std::move(word));
}

}  // namespace autree

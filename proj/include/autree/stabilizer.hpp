#pragma once

#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "autree/element.hpp"

namespace autree {

inline bool in_vertex_stab(const Element& g, const Vertex& v) { return apply(g, v) == v; }

// Membership in the nth level stabilizer: g fixes every vertex of length n
// (equivalently, of every length <= n).
inline bool in_stab(const Element& g, int n) { return fixes_level(g, n); }

// Largest level, up to a cap, on which two elements act identically.
struct Agreement {
  bool equal;  // equals(g, h); level is meaningless when set
  int level;   // in [0, cap]; level 0 always holds (every automorphism fixes the root)
};

inline Agreement agreement_level(const Element& g, const Element& h, int cap) {
  if (cap < 0) fail(errc::bad_parameters, "cap must be >= 0");
  Element diff = compose(invert(g), h);
  if (is_identity(diff)) return {true, cap};
  int level = 0;
  while (level < cap && in_stab(diff, level + 1)) ++level;
  return {false, level};
}

// The congruence ultrametric, metrized as 2^-(deepest level of agreement).
// Base 2 is a convention; any base induces the same topology.
inline double congruence_distance(const Element& g, const Element& h, int cap) {
  Agreement a = agreement_level(g, h, cap);
  if (a.equal) return 0.0;
  if (a.level >= cap)
    fail(errc::cap_exceeded,
         "elements agree through level " + std::to_string(cap) + " but are not equal");
  return std::ldexp(1.0, -a.level);
}

// g stab(n) = h stab(n), i.e. g and h act identically on level n.
inline bool same_coset_mod_stab(const Element& g, const Element& h, int n) {
  return in_stab(compose(invert(g), h), n);
}

// Rigid-stabilizer membership: does g fix everything outside the subtree at v?
// The test is exact: g must fix the prefix chain of v, and the section at
// every off-path vertex must be the identity element. The depth parameter only
// bounds the breadth-first witness search reported on failure.
struct RistVerdict {
  bool ok;
  std::optional<Vertex> witness;  // a moved vertex outside the subtree, when !ok

  explicit operator bool() const { return ok; }
};

inline RistVerdict in_rist(const Element& g, const Vertex& v, int depth) {
  if (depth < static_cast<int>(v.length()))
    fail(errc::bad_parameters, "witness depth must be >= |v|");

  bool ok = true;
  for (std::size_t i = 0; i < v.length() && ok; ++i) {
    Vertex prefix = v.prefix(i);
    int next = v.letter(i);
    if (activity(section(g, prefix))(next) != next) ok = false;
    for (int b = 0; b < g.automaton().p() && ok; ++b) {
      if (b == next) continue;
      if (!is_identity(section(g, prefix.child(b)))) ok = false;
    }
  }
  if (ok) return {true, std::nullopt};

  // Breadth-first witness search over T \ T_v, bounded by the given depth.
  std::deque<Vertex> queue{Vertex::root()};
  SubtreeRef sub{v};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (!in_subtree(u, sub) && apply(g, u) != u) return {false, u};
    if (static_cast<int>(u.length()) < depth)
      for (int a = 0; a < g.automaton().p(); ++a) queue.push_back(u.child(a));
  }
  return {false, std::nullopt};
}

// Distance profile of a finite sequence of elements under the congruence
// ultrametric, evaluated per consecutive pair.
struct ConvergenceStep {
  bool equal;      // the two samples are equal as automorphisms
  bool capped;     // they agree through the cap but are not equal
  int agreement;   // deepest common level found (== cap when capped)
  double distance; // 0 when equal, else 2^-agreement
};

struct ConvergenceProfile {
  int cap;
  std::vector<ConvergenceStep> steps;
  // Per level 0..cap: first step index from which every later consecutive
  // pair lies in one coset mod stab(level); steps.size() when even the final
  // pair does not.
  std::vector<std::size_t> stable_from;
  // Cauchy certificate: the finite agreement levels of the unequal steps
  // strictly increase (equal steps impose no constraint). Sufficient for a
  // Cauchy window by the ultrametric inequality; a constant sequence passes
  // vacuously.
  bool cauchy;
};

inline ConvergenceProfile converges_congruence(const std::vector<Element>& seq, int cap) {
  if (seq.size() < 2) fail(errc::bad_parameters, "need at least two samples");
  if (cap < 0) fail(errc::bad_parameters, "cap must be >= 0");

  ConvergenceProfile profile;
  profile.cap = cap;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    Agreement a = agreement_level(seq[i], seq[i + 1], cap);
    ConvergenceStep step;
    step.equal = a.equal;
    step.capped = !a.equal && a.level >= cap;
    step.agreement = a.equal ? cap : a.level;
    step.distance = a.equal ? 0.0 : std::ldexp(1.0, -a.level);
    profile.steps.push_back(step);
  }

  profile.stable_from.assign(cap + 1, 0);
  for (int level = 0; level <= cap; ++level) {
    std::size_t from = 0;
    for (std::size_t i = 0; i < profile.steps.size(); ++i) {
      const auto& s = profile.steps[i];
      if (!(s.equal || s.agreement >= level)) from = i + 1;
    }
    profile.stable_from[level] = from;
  }

  profile.cauchy = true;
  int last = -1;
  for (const auto& s : profile.steps) {
    if (s.equal) continue;
    if (s.agreement <= last) profile.cauchy = false;
    last = s.agreement;
  }
  return profile;
}

}  // namespace autree

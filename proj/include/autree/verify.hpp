#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "autree/finite_topology.hpp"
#include "autree/fixtures.hpp"
#include "autree/geodesic.hpp"
#include "autree/portrait.hpp"
#include "autree/stabilizer.hpp"

namespace autree {

// One verification outcome; the CLI prints one line per entry.
struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

using Report = std::vector<CheckLine>;

inline bool all_pass(const Report& report) {
  for (const auto& line : report)
    if (!line.pass) return false;
  return true;
}

inline Element random_element(const std::shared_ptr<const AutomatonDef>& aut, std::mt19937& rng,
                              int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> state_dist(0, aut->size() - 1);
  std::uniform_int_distribution<int> exp_dist(0, 1);
  std::vector<Factor> word;
  const int len = len_dist(rng);
  word.reserve(len);
  for (int i = 0; i < len; ++i)
    word.push_back(Factor{state_dist(rng), exp_dist(rng) ? 1 : -1});
  return Element(aut, std::move(word));
}

namespace detail {

// Agreement level with equality mapped to +infinity, for exact ultrametric
// arithmetic without leaving the integers.
inline long long agreement_or_inf(const Element& g, const Element& h, int cap) {
  Agreement a = agreement_level(g, h, cap);
  if (a.equal) return std::numeric_limits<long long>::max();
  return a.level;
}

inline std::vector<Vertex> vertices_up_to(int depth, int p) {
  std::vector<Vertex> out;
  for (int n = 0; n <= depth; ++n)
    for (const Vertex& v : level_vertices(n, Alphabet(p))) out.push_back(v);
  return out;
}

}  // namespace detail

// Group-law suite: the action axiom, identity and inverse laws, and
// per-level bijectivity, on every vertex up to the given depth, over random
// words from each built-in automaton.
inline Report axioms_suite(int samples = 200, int depth = 6, std::uint32_t seed = 20597) {
  Report report;
  for (const Fixture& fixture : fixtures()) {
    auto aut = fixture_automaton(fixture.name);
    std::mt19937 rng(seed);
    const auto verts = detail::vertices_up_to(depth, aut->p());
    const Element id = Element::identity(aut);
    bool ok = true;
    std::string failure;

    for (int s = 0; s < samples && ok; ++s) {
      Element g = random_element(aut, rng, 6);
      Element h = random_element(aut, rng, 6);
      Element gh = compose(g, h);
      Element gi = invert(g);
      Element g_id = compose(g, id);
      for (const Vertex& v : verts) {
        if (apply(gh, v) != apply(g, apply(h, v))) {
          ok = false;
          failure = "action axiom failed at \"" + v.display() + "\"";
          break;
        }
        if (apply(gi, apply(g, v)) != v) {
          ok = false;
          failure = "inverse law failed at \"" + v.display() + "\"";
          break;
        }
        if (apply(g_id, v) != apply(g, v)) {
          ok = false;
          failure = "identity law failed at \"" + v.display() + "\"";
          break;
        }
      }
      if (!ok) break;
      // Level bijectivity: the action permutes each level (spot levels).
      for (int n : {1, depth}) {
        if (!ok) break;
        auto level = level_vertices(n, Alphabet(aut->p()));
        std::vector<Vertex> images;
        images.reserve(level.size());
        for (const Vertex& v : level) images.push_back(apply(g, v));
        std::sort(images.begin(), images.end());
        if (images != level) {
          ok = false;
          failure = "level " + std::to_string(n) + " image is not a permutation of the level";
        }
      }
    }

    std::ostringstream info;
    info << samples << " random pairs, vertices up to depth " << depth;
    if (!ok) info << "; " << failure;
    report.push_back({std::string("group axioms over ") + fixture.name, ok, info.str()});
  }
  return report;
}

// Exact-equality suite over the five-state automaton: the defining
// relations, and agreement of the word-problem decision with depth-bounded
// portrait equality over random pairs (including engineered equal pairs).
inline Report equality_suite(int pairs = 100, int portrait_depth = 8,
                             std::uint32_t seed = 48611) {
  Report report;
  auto aut = fixture_automaton("grigorchuk");
  auto gen = [&](const char* expr) { return parse_element_expr(aut, expr); };

  {
    bool ok = true;
    std::string failed;
    const std::pair<const char*, const char*> relations[] = {
        {"a*a", "involution a"},   {"b*b", "involution b"},   {"c*c", "involution c"},
        {"d*d", "involution d"},   {"b*c*d", "relation bc=d"}, {"c*d*b", "relation cd=b"},
        {"d*b*c", "relation db=c"},
    };
    for (const auto& [expr, label] : relations) {
      if (!is_identity(gen(expr))) {
        ok = false;
        failed = label;
        break;
      }
    }
    report.push_back({"five-state relations", ok,
                      ok ? "7 relators reduce to the identity" : "failed: " + failed});
  }

  {
    std::mt19937 rng(seed);
    const char* relators[] = {"a*a", "b*b", "c*c", "d*d", "b*c*d", "c*d*b", "d*b*c"};
    bool ok = true;
    int equal_pairs = 0;
    std::string failure;
    for (int i = 0; i < pairs && ok; ++i) {
      Element g = random_element(aut, rng, 6);
      Element h = (i % 4 == 0)
                      ? compose(g, gen(relators[rng() % 7]))  // equal by construction
                      : random_element(aut, rng, 6);
      bool semantic = equals(g, h);
      bool by_portrait = portrait(g, portrait_depth) == portrait(h, portrait_depth);
      if (semantic != by_portrait) {
        ok = false;
        failure = "disagreement on pair " + std::to_string(i) + " (" + render_word(g) + " vs " +
                  render_word(h) + ")";
      }
      if (semantic) ++equal_pairs;
    }
    std::ostringstream info;
    info << pairs << " random pairs, portrait depth " << portrait_depth << ", " << equal_pairs
           << " equal";
    if (!ok) info << "; " << failure;
    report.push_back({"word-problem decision vs portrait oracle", ok, info.str()});
  }
  return report;
}

// Counting suite: the finitary automorphisms of the depth-2 and depth-3
// binary truncations, enumerated as portraits, come out pairwise distinct
// and in the closed-form count.
inline Report counting_suite() {
  Report report;
  for (int depth : {2, 3}) {
    auto portraits = enumerate_finitary(2, depth);
    std::uint64_t expected = finitary_count(2, depth);
    std::set<Portrait> distinct(portraits.begin(), portraits.end());

    bool ok = portraits.size() == expected && distinct.size() == expected;
    // Round trip through elements: each enumerated portrait is realized by
    // an element whose recomputed portrait matches.
    std::size_t round_trips = 0;
    for (const Portrait& P : portraits) {
      if (portrait(from_portrait(P), depth) == P) ++round_trips;
    }
    if (round_trips != portraits.size()) ok = false;

    std::ostringstream info;
    info << "expected " << expected << ", enumerated " << portraits.size() << " distinct "
           << distinct.size() << ", element round trips " << round_trips;
    report.push_back(
        {"finitary count at depth " + std::to_string(depth) + " (p=2)", ok, info.str()});
  }

  {
    // Pairwise distinction by the exact word-problem decision at depth 2.
    FinitaryGroup group = finitary_group(2, 2);
    bool ok = true;
    for (std::size_t i = 0; i < group.elements.size() && ok; ++i)
      for (std::size_t j = i + 1; j < group.elements.size() && ok; ++j)
        if (equals(group.elements[i], group.elements[j])) ok = false;
    report.push_back({"depth-2 elements pairwise distinct", ok,
                      "28 exact inequality checks over 8 elements"});
  }
  return report;
}

// Ultrametric and filtration suite: stabilizer nesting, the ultrametric
// inequality, bi-invariance, and stabilizer normality over random triples,
// plus the pinned odometer-power distances.
inline Report ultrametric_suite(int samples = 200, std::uint32_t seed = 91733, int cap = 12) {
  Report report;

  {
    auto aut = fixture_automaton("odometer");
    Element t = parse_element_expr(aut, "t");
    Element id = Element::identity(aut);
    Element power = t;
    bool ok = true;
    std::ostringstream info;
    for (int k = 0; k < 4; ++k) {
      double expected = std::ldexp(1.0, -k);
      double got = congruence_distance(power, id, 8);
      if (k) info << ", ";
      info << "d(t^" << (1 << k) << ",1)=" << got;
      if (got != expected) ok = false;
      power = compose(power, power);
    }
    report.push_back({"odometer power distances", ok, info.str()});
  }

  bool nesting_ok = true, ultra_ok = true, biinv_ok = true, normal_ok = true;
  std::string failure;
  int checked = 0;
  for (const Fixture& fixture : fixtures()) {
    auto aut = fixture_automaton(fixture.name);
    std::mt19937 rng(seed);
    for (int s = 0; s < samples; ++s) {
      Element g = random_element(aut, rng, 6);
      Element h = random_element(aut, rng, 6);
      Element k = random_element(aut, rng, 6);
      if (s % 3 == 0) g = compose(g, g);  // squares populate the stabilizers
      ++checked;

      for (int n = 0; n < 5; ++n) {
        if (in_stab(g, n + 1) && !in_stab(g, n)) {
          nesting_ok = false;
          failure = "nesting failed for " + render_word(g);
        }
        if (in_stab(compose(compose(k, g), invert(k)), n) != in_stab(g, n)) {
          normal_ok = false;
          failure = "normality failed for " + render_word(g);
        }
      }

      long long dgh = detail::agreement_or_inf(g, h, cap);
      long long dgk = detail::agreement_or_inf(g, k, cap);
      long long dkh = detail::agreement_or_inf(k, h, cap);
      if (dgh < std::min(dgk, dkh)) {
        ultra_ok = false;
        failure = "ultrametric inequality failed";
      }
      if (detail::agreement_or_inf(compose(k, g), compose(k, h), cap) != dgh ||
          detail::agreement_or_inf(compose(g, k), compose(h, k), cap) != dgh) {
        biinv_ok = false;
        failure = "bi-invariance failed";
      }
    }
  }
  std::ostringstream info;
  info << checked << " random triples, levels to 5, agreement cap " << cap;
  report.push_back({"stabilizer nesting", nesting_ok,
                    nesting_ok ? info.str() : info.str() + "; " + failure});
  report.push_back(
      {"ultrametric inequality", ultra_ok, ultra_ok ? info.str() : info.str() + "; " + failure});
  report.push_back(
      {"bi-invariance", biinv_ok, biinv_ok ? info.str() : info.str() + "; " + failure});
  report.push_back({"stabilizer normality", normal_ok,
                    normal_ok ? info.str() : info.str() + "; " + failure});
  return report;
}

// Equivalence of the level-coset condition with the geodesic-image condition,
// exhaustively over all sample sequences of the given length drawn from the
// finitary automorphisms of the depth-d truncation.
inline Report smooth_curves_suite(int p = 2, int d = 2, int len = 3) {
  Report report;
  FinitaryGroup group = finitary_group(p, d);
  const int depth = len - 1;
  auto lines = enumerate_root_lines(p, std::max(depth, 1));

  std::uint64_t total = detail::checked_pow(group.elements.size(), len);
  if (total > kEnumerationLimit) fail(errc::too_large, "sequence enumeration too large");

  std::uint64_t agreements = 0, coset_passes = 0;
  std::optional<std::string> counterexample;
  detail::for_each_assignment(len, group.elements.size(), [&](const std::vector<int>& pick) {
    std::vector<Element> values;
    values.reserve(len);
    for (int i : pick) values.push_back(group.elements[i]);
    CurveSamples samples(0, std::move(values));

    bool coset = coset_condition_check(samples).pass;
    bool image = true;
    for (const GeodesicLine& line : lines)
      if (!geodesic_image_check(samples, line, depth).pass) {
        image = false;
        break;
      }
    if (coset) ++coset_passes;
    if (coset == image) {
      ++agreements;
    } else if (!counterexample) {
      std::string s = "sequence";
      for (int i : pick) s += " " + std::to_string(i);
      counterexample = s;
    }
  });

  std::ostringstream info;
  info << total << " sequences of length " << len << " over " << group.elements.size()
         << " automorphisms, " << lines.size() << " root lines, " << coset_passes << " satisfy the coset condition";
  if (counterexample) info << "; first disagreement: " << *counterexample;
  report.push_back({"coset condition matches geodesic images", agreements == total, info.str()});
  return report;
}

// Exhaustive agreement of openness with D-openness on a truncation model.
inline Report d_topology_suite_one(int p, int d) {
  Report report;
  ComplexModel m = build_complex(p, d);
  std::ostringstream name;
  name << "D-topology equals model topology (p=" << p << ", d=" << d << ")";
  TopologyEquivalenceResult r = d_topology_equivalence(m);
  std::ostringstream info;
  info << r.subsets_checked << " subsets of " << m.num_points() << " points";
  if (!r.equivalent && r.counterexample)
    info << "; counterexample mask " << r.counterexample->to_string();
  report.push_back({name.str(), r.equivalent, info.str()});
  return report;
}

inline Report d_topology_suite() {
  Report report;
  for (auto [p, d] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    Report one = d_topology_suite_one(p, d);
    report.insert(report.end(), one.begin(), one.end());
  }
  return report;
}

// Rigidity of function-space plots into the truncation group: every map
// with continuous evaluation is constant, and the continuous count is
// exactly the group order.
inline Report discreteness_suite_one(int len, int p, int d) {
  Report report;
  FunctionalPlotResult r = functional_plot_enumeration_check(PathModel::interval(len), p, d);
  bool ok = r.all_constant && r.continuous == r.group_order;
  std::ostringstream name;
  name << "plots into the depth-" << d << " truncation group are constant (path " << len
       << " points, p=" << p << ")";
  std::ostringstream info;
  info << r.candidates << " candidates, " << r.continuous << " continuous, group order "
         << r.group_order << (r.all_constant ? ", all constant" : ", NONCONSTANT PLOT FOUND");
  report.push_back({name.str(), ok, info.str()});
  return report;
}

inline Report discreteness_suite() {
  Report report;
  for (auto [len, p, d] : {std::tuple{3, 2, 1}, std::tuple{3, 2, 2}, std::tuple{2, 2, 3}}) {
    Report one = discreteness_suite_one(len, p, d);
    report.insert(report.end(), one.begin(), one.end());
  }
  return report;
}

// The combinatorial kernel behind the constancy of plots: continuous
// vertex-valued maps from interval models are constant.
inline Report vertex_constant_suite() {
  Report report;
  struct Instance {
    int len, p, d;
  };
  for (const Instance& inst :
       {Instance{3, 2, 1}, Instance{5, 2, 1}, Instance{2, 2, 1}, Instance{2, 2, 2},
        Instance{2, 3, 1}}) {
    ComplexModel m = build_complex(inst.p, inst.d);
    ConstancyResult r = vertex_valued_maps_constant(PathModel::interval(inst.len), m);
    bool ok = r.all_constant && r.continuous == static_cast<std::uint64_t>(m.num_vertex_points());
    std::ostringstream name;
    name << "vertex-valued maps constant (path " << inst.len << " points into p=" << inst.p
         << ", d=" << inst.d << ")";
    std::ostringstream info;
    info << r.candidates << " candidates, " << r.continuous << " continuous"
           << (r.all_constant ? ", all constant" : ", NONCONSTANT MAP FOUND");
    report.push_back({name.str(), ok, info.str()});
  }
  return report;
}

}  // namespace autree

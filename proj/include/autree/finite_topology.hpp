#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "autree/error.hpp"
#include "autree/portrait.hpp"
#include "autree/tree.hpp"

namespace autree {

// A finite poset carrying its Alexandrov topology: open sets are exactly the
// up-closed subsets, so the minimal open set of a point is its up-closure.
// For the face poset of a graph this makes a vertex's minimal open its open
// star, and edge points maximal.
struct Poset {
  int n = 0;
  std::vector<std::pair<int, int>> covers;  // (lower, upper)
  std::vector<std::vector<int>> above;      // direct covers of each point

  void finalize() {
    above.assign(n, {});
    for (auto [lo, hi] : covers) above[lo].push_back(hi);
  }

  // Transitive up-closure of a point, as a membership mask.
  std::vector<char> up_closure(int x) const {
    std::vector<char> mask(n, 0);
    std::deque<int> queue{x};
    mask[x] = 1;
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int z : above[y])
        if (!mask[z]) {
          mask[z] = 1;
          queue.push_back(z);
        }
    }
    return mask;
  }

  bool is_up_closed(const std::vector<char>& mask) const {
    for (auto [lo, hi] : covers)
      if (mask[lo] && !mask[hi]) return false;
    return true;
  }
};

// Componentwise order on pairs of points.
inline Poset product_poset(const Poset& a, const Poset& b) {
  Poset prod;
  prod.n = a.n * b.n;
  auto index = [&](int i, int j) { return i * b.n + j; };
  for (auto [lo, hi] : a.covers)
    for (int j = 0; j < b.n; ++j) prod.covers.emplace_back(index(lo, j), index(hi, j));
  for (auto [lo, hi] : b.covers)
    for (int i = 0; i < a.n; ++i) prod.covers.emplace_back(index(i, lo), index(i, hi));
  prod.finalize();
  return prod;
}

inline std::vector<std::vector<char>> all_up_closures(const Poset& p) {
  std::vector<std::vector<char>> ups;
  ups.reserve(p.n);
  for (int x = 0; x < p.n; ++x) ups.push_back(p.up_closure(x));
  return ups;
}

// Continuity of a point map between finite Alexandrov spaces, tested by the
// definition through the minimal-open basis: the preimage of every basic
// open set must be open.
inline bool is_continuous(const std::vector<int>& f, const Poset& dom, const Poset& cod,
                          const std::vector<std::vector<char>>& cod_ups) {
  std::vector<char> pre(dom.n, 0);
  for (int b = 0; b < cod.n; ++b) {
    const std::vector<char>& up = cod_ups[b];
    for (int x = 0; x < dom.n; ++x) pre[x] = up[f[x]];
    if (!dom.is_up_closed(pre)) return false;
  }
  return true;
}

inline bool is_continuous(const std::vector<int>& f, const Poset& dom, const Poset& cod) {
  return is_continuous(f, dom, cod, all_up_closures(cod));
}

// Equivalent order-theoretic characterization; kept separate so the
// equivalence itself can be asserted in tests.
inline bool is_monotone(const std::vector<int>& f, const Poset& dom, const Poset& cod) {
  for (auto [lo, hi] : dom.covers)
    if (!cod.up_closure(f[lo])[f[hi]]) return false;
  return true;
}

struct SubsetMask {
  std::vector<char> bits;

  static SubsetMask from_bits(std::uint32_t word, int n) {
    SubsetMask mask;
    mask.bits.assign(n, 0);
    for (int i = 0; i < n; ++i) mask.bits[i] = (word >> i) & 1u;
    return mask;
  }

  std::string to_string() const {
    std::string s;
    for (char b : bits) s += b ? '1' : '0';
    return s;
  }
};

// The face poset of the depth-d truncation of the p-regular rooted tree:
// points are its vertices and edges, with each vertex below its incident
// edges. Point indices list vertices first (level-then-lex), then edges.
struct ComplexModel {
  int p = 0;
  int depth = 0;
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // (parent vertex index, child vertex index)
  Poset poset;

  int num_vertex_points() const { return static_cast<int>(vertices.size()); }
  int num_points() const { return static_cast<int>(vertices.size() + edges.size()); }
  bool is_vertex_point(int point) const { return point < num_vertex_points(); }
  int edge_point(int edge_index) const { return num_vertex_points() + edge_index; }

  int vertex_index(const Vertex& v) const {
    auto it = vindex_.find(v);
    if (it == vindex_.end()) fail(errc::bad_parameters, "vertex outside the truncation");
    return it->second;
  }

  int edge_index(int parent_point, int child_point) const {
    auto it = eindex_.find({parent_point, child_point});
    if (it == eindex_.end()) fail(errc::bad_parameters, "no such edge");
    return it->second;
  }

  std::string point_label(int point) const {
    if (is_vertex_point(point)) return vertices[point].display();
    auto [a, b] = edges[point - num_vertex_points()];
    return "[" + vertices[a].display() + "-" + vertices[b].display() + "]";
  }

  std::map<Vertex, int> vindex_;
  std::map<std::pair<int, int>, int> eindex_;
};

inline ComplexModel build_complex(int p, int d) {
  if (p < 2 || d < 1) fail(errc::bad_parameters, "need p >= 2 and d >= 1");
  ComplexModel m;
  m.p = p;
  m.depth = d;
  for (int n = 0; n <= d; ++n)
    for (const Vertex& v : level_vertices(n, Alphabet(p))) {
      m.vindex_[v] = static_cast<int>(m.vertices.size());
      m.vertices.push_back(v);
    }
  for (int i = 0; i < static_cast<int>(m.vertices.size()); ++i) {
    const Vertex& v = m.vertices[i];
    if (static_cast<int>(v.length()) >= d) continue;
    for (int a = 0; a < p; ++a) {
      int j = m.vindex_.at(v.child(a));
      m.eindex_[{i, j}] = static_cast<int>(m.edges.size());
      m.edges.emplace_back(i, j);
    }
  }
  m.poset.n = m.num_points();
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    m.poset.covers.emplace_back(m.edges[e].first, m.edge_point(e));
    m.poset.covers.emplace_back(m.edges[e].second, m.edge_point(e));
  }
  m.poset.finalize();
  return m;
}

// An alternating chain of vertex- and edge-points: the finite stand-in for a
// curve. Paths produced from a complex carry their inclusion map and run
// leaf to leaf; free-standing interval models (no inclusion) serve as
// abstract curve domains. Even positions are vertex-points.
struct PathModel {
  int npoints = 0;
  std::vector<int> into_model;  // point indices in the source complex; empty if abstract
  Poset poset;

  bool is_vertex_position(int i) const { return i % 2 == 0; }

  static PathModel interval(int npoints) {
    if (npoints < 2) fail(errc::bad_parameters, "interval model needs at least two points");
    PathModel path;
    path.npoints = npoints;
    path.poset.n = npoints;
    for (int i = 1; i < npoints; i += 2) {
      path.poset.covers.emplace_back(i - 1, i);
      if (i + 1 < npoints) path.poset.covers.emplace_back(i + 1, i);
    }
    path.poset.finalize();
    return path;
  }
};

// All leaf-to-leaf geodesic paths of the truncation, ordered by the leaf
// pair. Every edge lies on at least one of them, and every vertex with any
// pair of its incident edges lies on one as well, which is exactly the
// coverage the D-open/open comparison needs.
inline std::vector<PathModel> enumerate_geodesic_paths(const ComplexModel& m) {
  std::vector<int> leaves;
  for (int i = 0; i < m.num_vertex_points(); ++i)
    if (static_cast<int>(m.vertices[i].length()) == m.depth) leaves.push_back(i);

  auto ascend = [&](int point) {  // vertex point indices from a leaf up to the root
    std::vector<int> chain{point};
    Vertex v = m.vertices[point];
    while (!v.is_root()) {
      v = v.parent();
      chain.push_back(m.vertex_index(v));
    }
    return chain;
  };

  std::vector<PathModel> paths;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      std::vector<int> up = ascend(leaves[i]);
      std::vector<int> down = ascend(leaves[j]);
      // Trim the common tail above the meeting vertex.
      while (up.size() > 1 && down.size() > 1 && up[up.size() - 2] == down[down.size() - 2]) {
        up.pop_back();
        down.pop_back();
      }
      std::vector<int> chain = up;  // leaf_i ... lca
      for (std::size_t k = down.size() - 1; k-- > 0;) chain.push_back(down[k]);

      PathModel path;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        path.into_model.push_back(chain[k]);
        if (k + 1 == chain.size()) continue;
        int a = chain[k], b = chain[k + 1];
        if (m.vertices[a].length() > m.vertices[b].length()) std::swap(a, b);
        path.into_model.push_back(m.edge_point(m.edge_index(a, b)));
      }
      path.npoints = static_cast<int>(path.into_model.size());
      path.poset.n = path.npoints;
      for (int k = 1; k < path.npoints; k += 2) {
        path.poset.covers.emplace_back(k - 1, k);
        path.poset.covers.emplace_back(k + 1, k);
      }
      path.poset.finalize();
      paths.push_back(std::move(path));
    }
  }
  return paths;
}

inline bool is_open(const ComplexModel& m, const SubsetMask& s) {
  return m.poset.is_up_closed(s.bits);
}

inline bool is_open(const PathModel& path, const SubsetMask& s) {
  return path.poset.is_up_closed(s.bits);
}

// D-openness against the generating curves: the preimage of the subset under
// every leaf-to-leaf path inclusion must be open in the path.
inline bool is_d_open(const ComplexModel&, const SubsetMask& s,
                      const std::vector<PathModel>& paths) {
  for (const PathModel& path : paths) {
    std::vector<char> pre(path.npoints, 0);
    for (int k = 0; k < path.npoints; ++k) pre[k] = s.bits[path.into_model[k]];
    if (!path.poset.is_up_closed(pre)) return false;
  }
  return true;
}

inline bool is_d_open(const ComplexModel& m, const SubsetMask& s) {
  return is_d_open(m, s, enumerate_geodesic_paths(m));
}

// Pinned bound for exhaustive subset enumeration.
inline constexpr int kExhaustivePointLimit = 25;

struct TopologyEquivalenceResult {
  bool equivalent;
  std::uint64_t subsets_checked;
  bool exhaustive;
  std::optional<SubsetMask> counterexample;
};

// Exhaustive check that the D-topology of the path-generated structure is
// the Alexandrov topology of the model: for every subset, open iff D-open.
inline TopologyEquivalenceResult d_topology_equivalence(const ComplexModel& m) {
  const int n = m.num_points();
  if (n > kExhaustivePointLimit)
    fail(errc::too_large_for_exhaustive,
         "model has " + std::to_string(n) + " points; exhaustive mode is capped at " +
             std::to_string(kExhaustivePointLimit));
  const auto paths = enumerate_geodesic_paths(m);
  TopologyEquivalenceResult result{true, 0, true, std::nullopt};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t word = 0; word < total; ++word) {
    SubsetMask mask = SubsetMask::from_bits(static_cast<std::uint32_t>(word), n);
    ++result.subsets_checked;
    if (is_open(m, mask) != is_d_open(m, mask, paths)) {
      result.equivalent = false;
      result.counterexample = mask;
      return result;
    }
  }
  return result;
}

// Sampled fallback for larger models: always includes every open star and
// its complement, plus uniformly random subsets.
inline TopologyEquivalenceResult d_topology_equivalence_sampled(const ComplexModel& m,
                                                                std::uint64_t samples,
                                                                std::uint32_t seed) {
  const int n = m.num_points();
  const auto paths = enumerate_geodesic_paths(m);
  TopologyEquivalenceResult result{true, 0, false, std::nullopt};

  auto check = [&](const SubsetMask& mask) {
    ++result.subsets_checked;
    if (is_open(m, mask) != is_d_open(m, mask, paths)) {
      result.equivalent = false;
      result.counterexample = mask;
      return false;
    }
    return true;
  };

  for (int x = 0; x < n; ++x) {
    std::vector<char> star = m.poset.up_closure(x);
    SubsetMask mask{star};
    SubsetMask complement;
    complement.bits.assign(n, 0);
    for (int i = 0; i < n; ++i) complement.bits[i] = !star[i];
    if (!check(mask) || !check(complement)) return result;
  }
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::uint64_t i = 0; i < samples; ++i) {
    SubsetMask mask;
    mask.bits.assign(n, 0);
    for (int x = 0; x < n; ++x) mask.bits[x] = coin(rng);
    if (!check(mask)) return result;
  }
  return result;
}

// Enumeration guard for the map-space checks below.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 24;

struct ConstancyResult {
  bool all_constant;
  std::uint64_t candidates;
  std::uint64_t continuous;
  std::optional<std::vector<int>> counterexample;  // a nonconstant continuous map
};

namespace detail {

// Mixed-radix enumeration of maps from `positions` slots into `base` values;
// calls visit with each assignment.
template <typename Visit>
void for_each_assignment(int positions, std::uint64_t base, Visit&& visit) {
  std::vector<int> q(positions, 0);
  for (;;) {
    visit(q);
    int k = positions;
    while (k-- > 0) {
      if (++q[k] < static_cast<int>(base)) break;
      q[k] = 0;
    }
    if (k < 0) return;
  }
}

inline std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t total = 1;
  for (int i = 0; i < exp; ++i) {
    if (total > kEnumerationLimit) return total;
    total *= base;
  }
  return total;
}

}  // namespace detail

// The combinatorial kernel of the constancy argument: a continuous map from
// a path model into a complex whose image contains only vertex-points must
// be constant, because distinct vertex-points are incomparable.
inline ConstancyResult vertex_valued_maps_constant(const PathModel& path, const ComplexModel& m) {
  const std::uint64_t nv = m.num_vertex_points();
  std::uint64_t total = detail::checked_pow(nv, path.npoints);
  if (total > kEnumerationLimit)
    fail(errc::too_large, "vertex-valued enumeration exceeds the pinned bound of 2^24");

  ConstancyResult result{true, 0, 0, std::nullopt};
  const auto cod_ups = all_up_closures(m.poset);
  detail::for_each_assignment(path.npoints, nv, [&](const std::vector<int>& q) {
    ++result.candidates;
    if (!is_continuous(q, path.poset, m.poset, cod_ups)) return;
    ++result.continuous;
    for (int k = 1; k < path.npoints; ++k)
      if (q[k] != q[0]) {
        result.all_constant = false;
        if (!result.counterexample) result.counterexample = q;
        return;
      }
  });
  return result;
}

// Action of a finitary automorphism on the points of the truncation model:
// vertices map by the portrait action, edges by their endpoint images.
inline std::vector<int> model_point_action(const Portrait& g, const ComplexModel& m) {
  std::vector<int> image(m.num_points());
  for (int i = 0; i < m.num_vertex_points(); ++i)
    image[i] = m.vertex_index(g.apply(m.vertices[i]));
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    auto [a, b] = m.edges[e];
    image[m.edge_point(e)] = m.edge_point(m.edge_index(image[a], image[b]));
  }
  return image;
}

struct FunctionalPlotResult {
  bool all_constant;
  std::uint64_t candidates;
  std::uint64_t continuous;
  std::uint64_t group_order;
  std::optional<std::vector<int>> counterexample;
};

// Enumerates every map q from the path points into Aut(T_d) and keeps those
// whose evaluation (x, t) -> q(x)(t) is continuous on the product of the
// path model with the truncation model. The check passes when every such
// map is constant; the continuous count is then exactly |Aut(T_d)|.
inline FunctionalPlotResult functional_plot_enumeration_check(const PathModel& path, int p,
                                                              int d) {
  std::vector<Portrait> group = enumerate_finitary(p, d);
  std::uint64_t total = detail::checked_pow(group.size(), path.npoints);
  if (total > kEnumerationLimit)
    fail(errc::too_large, "functional enumeration exceeds the pinned bound of 2^24");

  ComplexModel m = build_complex(p, d);
  std::vector<std::vector<int>> actions;
  actions.reserve(group.size());
  for (const Portrait& g : group) actions.push_back(model_point_action(g, m));

  Poset prod = product_poset(path.poset, m.poset);
  FunctionalPlotResult result{true, 0, 0, group.size(), std::nullopt};
  std::vector<int> evaluation(prod.n);
  const auto cod_ups = all_up_closures(m.poset);
  detail::for_each_assignment(path.npoints, group.size(), [&](const std::vector<int>& q) {
    ++result.candidates;
    for (int x = 0; x < path.npoints; ++x)
      for (int t = 0; t < m.num_points(); ++t)
        evaluation[x * m.num_points() + t] = actions[q[x]][t];
    if (!is_continuous(evaluation, prod, m.poset, cod_ups)) return;
    ++result.continuous;
    for (int k = 1; k < path.npoints; ++k)
      if (q[k] != q[0]) {
        result.all_constant = false;
        if (!result.counterexample) result.counterexample = q;
        return;
      }
  });
  return result;
}

}  // namespace autree

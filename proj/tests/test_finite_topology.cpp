#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "autree/finite_topology.hpp"
#include "autree/io.hpp"

using namespace autree;

namespace {

SubsetMask mask_of(const ComplexModel& m, std::initializer_list<int> points) {
  SubsetMask s;
  s.bits.assign(m.num_points(), 0);
  for (int x : points) s.bits[x] = 1;
  return s;
}

}  // namespace

TEST_CASE("complex model point counts") {
  ComplexModel m21 = build_complex(2, 1);
  CHECK(m21.num_vertex_points() == 3);
  CHECK(m21.edges.size() == 2);

  ComplexModel m22 = build_complex(2, 2);
  CHECK(m22.num_vertex_points() == 7);
  CHECK(m22.edges.size() == 6);

  ComplexModel m31 = build_complex(3, 1);
  CHECK(m31.num_vertex_points() == 4);
  CHECK(m31.edges.size() == 3);

  CHECK_THROWS_MATCHES(build_complex(1, 1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::bad_parameters; }));
  CHECK_THROWS_AS(build_complex(2, 0), Error);
}

TEST_CASE("geodesic path enumeration counts and coverage") {
  ComplexModel m21 = build_complex(2, 1);
  CHECK(enumerate_geodesic_paths(m21).size() == 1);

  ComplexModel m22 = build_complex(2, 2);
  auto paths = enumerate_geodesic_paths(m22);
  CHECK(paths.size() == 6);  // C(4,2) leaf pairs

  // Every edge point is covered by some path.
  std::set<int> covered;
  for (const PathModel& path : paths)
    for (int point : path.into_model)
      if (!m22.is_vertex_point(point)) covered.insert(point);
  CHECK(covered.size() == m22.edges.size());

  // For every vertex and every pair of its incident edges, some path holds
  // both with the vertex between them.
  std::map<int, std::set<int>> incident;
  for (int e = 0; e < static_cast<int>(m22.edges.size()); ++e) {
    incident[m22.edges[e].first].insert(m22.edge_point(e));
    incident[m22.edges[e].second].insert(m22.edge_point(e));
  }
  for (const auto& [vertex, edge_points] : incident) {
    for (int e1 : edge_points) {
      for (int e2 : edge_points) {
        if (e1 >= e2) continue;
        bool found = false;
        for (const PathModel& path : paths) {
          for (int k = 1; k + 1 < path.npoints; k += 2) {
            // positions k, k+1, k+2 read edge, vertex, edge
            if (path.into_model[k + 1] == vertex &&
                ((path.into_model[k] == e1 && path.into_model[k + 2] == e2) ||
                 (path.into_model[k] == e2 && path.into_model[k + 2] == e1)))
              found = true;
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("paths alternate and run leaf to leaf") {
  ComplexModel m = build_complex(2, 2);
  for (const PathModel& path : enumerate_geodesic_paths(m)) {
    REQUIRE(path.npoints >= 3);
    CHECK(path.npoints % 2 == 1);
    for (int k = 0; k < path.npoints; ++k)
      CHECK(m.is_vertex_point(path.into_model[k]) == (k % 2 == 0));
    const Vertex& first = m.vertices[path.into_model[0]];
    const Vertex& last = m.vertices[path.into_model[path.npoints - 1]];
    CHECK(static_cast<int>(first.length()) == m.depth);
    CHECK(static_cast<int>(last.length()) == m.depth);
  }
}

TEST_CASE("openness is up-closure") {
  ComplexModel m = build_complex(2, 1);
  int root = m.vertex_index(Vertex::root());
  int e0 = m.edge_point(0), e1 = m.edge_point(1);

  CHECK(is_open(m, mask_of(m, {root, e0, e1})));  // open star of the root
  CHECK_FALSE(is_open(m, mask_of(m, {root})));
  CHECK(is_open(m, mask_of(m, {e0})));  // edge points are maximal
  CHECK(is_open(m, mask_of(m, {})));
}

TEST_CASE("D-openness examples") {
  ComplexModel m = build_complex(2, 1);
  int root = m.vertex_index(Vertex::root());

  SubsetMask everything;
  everything.bits.assign(m.num_points(), 1);
  CHECK(is_d_open(m, everything));
  CHECK_FALSE(is_d_open(m, mask_of(m, {root})));
}

TEST_CASE("open implies D-open on every subset of the depth-2 model") {
  ComplexModel m = build_complex(2, 2);
  auto paths = enumerate_geodesic_paths(m);
  for (std::uint32_t word = 0; word < (1u << m.num_points()); ++word) {
    SubsetMask s = SubsetMask::from_bits(word, m.num_points());
    if (is_open(m, s)) REQUIRE(is_d_open(m, s, paths));
  }
}

TEST_CASE("exhaustive topology agreement on the pinned models") {
  for (auto [p, d] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    ComplexModel m = build_complex(p, d);
    TopologyEquivalenceResult r = d_topology_equivalence(m);
    CHECK(r.equivalent);
    CHECK(r.exhaustive);
    CHECK(r.subsets_checked == (std::uint64_t{1} << m.num_points()));
  }
}

TEST_CASE("exhaustive mode refuses oversized models") {
  ComplexModel m = build_complex(2, 3);  // 29 points
  CHECK_THROWS_MATCHES(d_topology_equivalence(m), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == errc::too_large_for_exhaustive;
                       }));
  TopologyEquivalenceResult sampled = d_topology_equivalence_sampled(m, 200, 99);
  CHECK(sampled.equivalent);
  CHECK_FALSE(sampled.exhaustive);
  // stars and complements (2 * 29) plus the random samples
  CHECK(sampled.subsets_checked == 2u * 29 + 200);
}

TEST_CASE("opens are closed under union and intersection") {
  ComplexModel m = build_complex(2, 2);
  std::mt19937 rng(17);
  auto random_open = [&]() {
    // Up-closure of a random subset is the smallest open containing it.
    std::vector<char> bits(m.num_points(), 0);
    for (int i = 0; i < m.num_points(); ++i) bits[i] = rng() % 4 == 0;
    std::vector<char> closed(m.num_points(), 0);
    for (int i = 0; i < m.num_points(); ++i)
      if (bits[i]) {
        auto up = m.poset.up_closure(i);
        for (int j = 0; j < m.num_points(); ++j) closed[j] |= up[j];
      }
    return SubsetMask{closed};
  };
  for (int trial = 0; trial < 50; ++trial) {
    SubsetMask A = random_open(), B = random_open();
    REQUIRE(is_open(m, A));
    REQUIRE(is_open(m, B));
    SubsetMask uni, inter;
    uni.bits.assign(m.num_points(), 0);
    inter.bits.assign(m.num_points(), 0);
    for (int i = 0; i < m.num_points(); ++i) {
      uni.bits[i] = A.bits[i] | B.bits[i];
      inter.bits[i] = A.bits[i] & B.bits[i];
    }
    CHECK(is_open(m, uni));
    CHECK(is_open(m, inter));
  }
}

TEST_CASE("basis continuity coincides with monotonicity") {
  ComplexModel m = build_complex(2, 2);
  PathModel path = PathModel::interval(5);
  std::mt19937 rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> f(path.npoints);
    for (int& x : f) x = rng() % m.num_points();
    CHECK(is_continuous(f, path.poset, m.poset) == is_monotone(f, path.poset, m.poset));
  }
}

TEST_CASE("interval models") {
  PathModel two = PathModel::interval(2);
  CHECK(two.poset.covers.size() == 1);
  PathModel five = PathModel::interval(5);
  CHECK(five.poset.covers.size() == 4);
  CHECK_THROWS_AS(PathModel::interval(1), Error);
}

TEST_CASE("vertex-valued continuous maps are constant") {
  ComplexModel m21 = build_complex(2, 1);

  ConstancyResult three = vertex_valued_maps_constant(PathModel::interval(3), m21);
  CHECK(three.all_constant);
  CHECK(three.candidates == 27);
  CHECK(three.continuous == 3);

  ConstancyResult five = vertex_valued_maps_constant(PathModel::interval(5), m21);
  CHECK(five.all_constant);
  CHECK(five.candidates == 243);
  CHECK(five.continuous == 3);

  ConstancyResult two = vertex_valued_maps_constant(PathModel::interval(2), m21);
  CHECK(two.all_constant);
  CHECK(two.candidates == 9);

  for (auto [p, d] : {std::pair{2, 2}, std::pair{3, 1}}) {
    ComplexModel m = build_complex(p, d);
    ConstancyResult r = vertex_valued_maps_constant(PathModel::interval(2), m);
    CHECK(r.all_constant);
    CHECK(r.continuous == static_cast<std::uint64_t>(m.num_vertex_points()));
  }
}

TEST_CASE("a covering pair forces equal values on vertex-valued maps") {
  // Lemma-level: on the 2-point interval, any continuous map with vertex
  // images has q(x) = q(x') for the covering pair x < x'.
  ComplexModel m = build_complex(2, 2);
  PathModel path = PathModel::interval(2);
  const int nv = m.num_vertex_points();
  for (int x = 0; x < nv; ++x)
    for (int y = 0; y < nv; ++y) {
      std::vector<int> f{x, y};
      if (is_continuous(f, path.poset, m.poset)) CHECK(x == y);
    }
}

TEST_CASE("constant maps are always continuous") {
  ComplexModel m = build_complex(2, 2);
  PathModel path = PathModel::interval(5);
  for (int t = 0; t < m.num_points(); ++t) {
    std::vector<int> f(path.npoints, t);
    CHECK(is_continuous(f, path.poset, m.poset));
  }
}

TEST_CASE("automorphism action on model points is a poset automorphism") {
  ComplexModel m = build_complex(2, 2);
  for (const Portrait& g : enumerate_finitary(2, 2)) {
    std::vector<int> action = model_point_action(g, m);
    std::set<int> image(action.begin(), action.end());
    REQUIRE(image.size() == action.size());
    CHECK(is_monotone(action, m.poset, m.poset));
  }
}

TEST_CASE("functional plots into truncation groups are constant") {
  FunctionalPlotResult r1 = functional_plot_enumeration_check(PathModel::interval(3), 2, 1);
  CHECK(r1.all_constant);
  CHECK(r1.candidates == 8);
  CHECK(r1.continuous == 2);
  CHECK(r1.group_order == 2);

  FunctionalPlotResult r2 = functional_plot_enumeration_check(PathModel::interval(3), 2, 2);
  CHECK(r2.all_constant);
  CHECK(r2.candidates == 512);
  CHECK(r2.continuous == 8);

  FunctionalPlotResult r3 = functional_plot_enumeration_check(PathModel::interval(2), 2, 3);
  CHECK(r3.all_constant);
  CHECK(r3.candidates == 16384);
  CHECK(r3.continuous == 128);
}

TEST_CASE("enumeration guards") {
  ComplexModel big = build_complex(2, 3);  // 15 vertex points; 15^7 > 2^24
  CHECK_THROWS_MATCHES(vertex_valued_maps_constant(PathModel::interval(7), big), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::too_large; }));
  CHECK_THROWS_AS(functional_plot_enumeration_check(PathModel::interval(4), 2, 3), Error);
}

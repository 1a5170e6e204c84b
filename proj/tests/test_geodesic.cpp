#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "autree/fixtures.hpp"
#include "autree/geodesic.hpp"
#include "autree/io.hpp"
#include "autree/portrait.hpp"

using namespace autree;

namespace {

Vertex v(const std::string& s) { return parse_vertex(s, 2); }

GeodesicLine root_line() {
  return GeodesicLine(Vertex::root(), Ray({}, {0}), Ray({}, {1}));
}

}  // namespace

TEST_CASE("ray letters and normalization") {
  Ray r({0, 1}, {1, 0});
  CHECK(r.letter_at(0) == 0);
  CHECK(r.letter_at(1) == 1);
  CHECK(r.letter_at(2) == 1);
  CHECK(r.letter_at(3) == 0);
  CHECK(r.letter_at(4) == 1);

  CHECK(Ray({}, {1, 1}).normalized().period() == std::vector<int>{1});
  CHECK(Ray({0}, {0}).normalized().preperiod().empty());
  CHECK(Ray({1}, {0, 1}) == Ray({}, {1, 0}));
  CHECK_FALSE(Ray({}, {0}) == Ray({}, {1}));
  CHECK_THROWS_AS(Ray({0}, {}), Error);
}

TEST_CASE("line vertices walk the rays") {
  GeodesicLine L = root_line();
  CHECK(line_vertex(L, 0) == Vertex::root());
  CHECK(line_vertex(L, 2) == v("11"));
  CHECK(line_vertex(L, -3) == v("000"));

  GeodesicLine off_root(v("1"), Ray({}, {0}), Ray({}, {1}));
  CHECK(line_vertex(off_root, 0) == v("1"));
  CHECK(line_vertex(off_root, 1) == v("11"));
  CHECK(line_vertex(off_root, -2) == v("100"));
  CHECK_FALSE(off_root.contains_root());
}

TEST_CASE("consecutive line vertices are adjacent") {
  for (const GeodesicLine& L : {root_line(), GeodesicLine(v("01"), Ray({1}, {0}), Ray({}, {0, 1}))}) {
    for (long n = -4; n < 4; ++n)
      CHECK(is_adjacent(line_vertex(L, n), line_vertex(L, n + 1)));
  }
}

TEST_CASE("lines require distinct first letters and order canonically") {
  CHECK_THROWS_AS(GeodesicLine(Vertex::root(), Ray({}, {0}), Ray({0}, {1})), Error);
  GeodesicLine backwards(Vertex::root(), Ray({}, {1}), Ray({}, {0}));
  CHECK_FALSE(backwards.is_canonical());
  CHECK(backwards.canonicalized().is_canonical());
  CHECK(backwards.canonicalized() == root_line());
}

TEST_CASE("identity maps every line to itself") {
  auto odo = fixture_automaton("odometer");
  GeodesicLine L = root_line();
  CHECK(apply_to_line(Element::identity(odo), L) == L);
}

TEST_CASE("the root swap exchanges the two rays of the root line") {
  auto rs = fixture_automaton("rootswap");
  GeodesicLine image = apply_to_line(parse_element_expr(rs, "a"), root_line());
  CHECK(image == root_line());  // rays swap, canonical order restores
}

TEST_CASE("odometer image of the root line") {
  // t maps 0^infty to 10^infty and, by the all-ones carry, 1^infty to
  // 0^infty; the canonical image line therefore has rays 000... and 100....
  auto odo = fixture_automaton("odometer");
  GeodesicLine image = apply_to_line(parse_element_expr(odo, "t"), root_line());
  CHECK(image.v0() == Vertex::root());
  CHECK(image.ray_minus() == Ray({}, {0}));
  CHECK(image.ray_plus() == Ray({1}, {0}));

  // Frozen from the vertex images: the line through 00,0,root,1,11 maps to
  // the path through 10,1,root,0,00.
  CHECK(apply(parse_element_expr(odo, "t"), v("00")) == v("10"));
  CHECK(apply(parse_element_expr(odo, "t"), v("11")) == v("00"));
}

TEST_CASE("line images preserve the root and the base length") {
  auto gri = fixture_automaton("grigorchuk");
  for (const char* expr : {"a", "b", "a*b", "b*a*d"}) {
    Element g = parse_element_expr(gri, expr);
    GeodesicLine image = apply_to_line(g, root_line());
    CHECK(image.contains_root());
    CHECK(image.v0().length() == 0);

    GeodesicLine off(v("01"), Ray({}, {0}), Ray({}, {1}));
    GeodesicLine off_image = apply_to_line(g, off);
    CHECK(off_image.v0() == apply(g, v("01")));
    CHECK(off_image.v0().length() == 2);
  }
}

TEST_CASE("line image vertices are images of line vertices") {
  auto gri = fixture_automaton("grigorchuk");
  Element g = parse_element_expr(gri, "a*b*c");
  GeodesicLine L = root_line();
  GeodesicLine image = apply_to_line(g, L);
  // The image path as a set: for each n the image vertex must sit on the
  // image line at parameter n or -n.
  for (long n = 0; n <= 6; ++n) {
    Vertex pos = apply(g, line_vertex(L, n));
    CHECK((pos == line_vertex(image, n) || pos == line_vertex(image, -n)));
    Vertex neg = apply(g, line_vertex(L, -n));
    CHECK((neg == line_vertex(image, n) || neg == line_vertex(image, -n)));
  }
}

TEST_CASE("curve samples index a window") {
  auto gri = fixture_automaton("grigorchuk");
  Element a = parse_element_expr(gri, "a");
  CurveSamples s(-1, {a, a, a});
  CHECK(s.lo() == -1);
  CHECK(s.hi() == 1);
  CHECK_THROWS_AS(s.at(2), Error);
  CHECK_THROWS_AS(CurveSamples(0, {}), Error);
}

TEST_CASE("coset condition examples") {
  auto gri = fixture_automaton("grigorchuk");
  Element id = Element::identity(gri);
  Element a = parse_element_expr(gri, "a");

  CHECK(coset_condition_check(CurveSamples(0, {a, a, a})).pass);
  // [id, a, a]: level 0 is vacuous, level 1 compares a with a.
  CHECK(coset_condition_check(CurveSamples(0, {id, a, a})).pass);
  // [id, id, a]: fails at n = 1 since a does not stabilize level 1.
  CosetCheckResult bad = coset_condition_check(CurveSamples(0, {id, id, a}));
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->first == 1);
  CHECK(bad.violation->second == 1);
}

TEST_CASE("coset condition covers the negative side") {
  auto gri = fixture_automaton("grigorchuk");
  Element id = Element::identity(gri);
  Element a = parse_element_expr(gri, "a");
  Element b = parse_element_expr(gri, "b");

  // Window [-2, 0]: the pair (s(-1), s(-2)) is tested at level 1.
  CHECK(coset_condition_check(CurveSamples(-2, {compose(a, b), a, id})).pass);
  CosetCheckResult bad = coset_condition_check(CurveSamples(-2, {id, a, id}));
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->first == -1);
}

TEST_CASE("left translation invariance of the coset condition") {
  auto gri = fixture_automaton("grigorchuk");
  Element k = parse_element_expr(gri, "a*b");
  std::vector<CurveSamples> windows;
  Element id = Element::identity(gri);
  Element a = parse_element_expr(gri, "a");
  Element b = parse_element_expr(gri, "b");
  windows.emplace_back(0, std::vector<Element>{id, a, a});
  windows.emplace_back(0, std::vector<Element>{id, id, a});
  windows.emplace_back(0, std::vector<Element>{a, b, compose(a, b)});
  for (const CurveSamples& s : windows) {
    std::vector<Element> translated;
    for (long n = s.lo(); n <= s.hi(); ++n) translated.push_back(compose(k, s.at(n)));
    CurveSamples ks(s.lo(), translated);
    CHECK(coset_condition_check(s).pass == coset_condition_check(ks).pass);
  }
}

TEST_CASE("geodesic image check") {
  auto gri = fixture_automaton("grigorchuk");
  Element id = Element::identity(gri);
  Element a = parse_element_expr(gri, "a");

  CHECK(geodesic_image_check(CurveSamples(0, {id, id, id}), root_line(), 2).pass);

  // Line with gamma(1) = 0, gamma(2) = 00 on the positive side: a(0) = 1 is
  // a child of the root, so [id, a] passes at depth 1.
  GeodesicLine through_zero(Vertex::root(), Ray({}, {1}), Ray({}, {0}));
  CHECK(geodesic_image_check(CurveSamples(0, {id, a}), through_zero, 1).pass);

  // [id, id, a] on the canonical root line: at n = 1 the image of 11 under a
  // is 01, not a child of id(1) = 1.
  GeodesicImageResult bad = geodesic_image_check(CurveSamples(0, {id, id, a}), root_line(), 2);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.violation.has_value());
  CHECK(*bad.violation == 1);

  GeodesicLine off_root(v("1"), Ray({}, {0}), Ray({}, {1}));
  CHECK_THROWS_MATCHES(geodesic_image_check(CurveSamples(0, {id, id}), off_root, 1), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == errc::requires_root_line; }));
}

TEST_CASE("stabilization from cosets") {
  auto gri = fixture_automaton("grigorchuk");
  Element id = Element::identity(gri);
  Element a = parse_element_expr(gri, "a");
  Element b = parse_element_expr(gri, "b");

  StabilizationResult constant = stabilization_from_cosets(CurveSamples(0, {a, a, a}));
  CHECK(constant.ok());
  CHECK(constant.status == StabilizationResult::Status::stable);

  // [id, a, a, a b]: b stabilizes level 1 but not level 2, so the coset
  // precondition breaks at n = 2 while the level-1 chain still stabilizes
  // from index 1 onward.
  StabilizationResult partial =
      stabilization_from_cosets(CurveSamples(0, {id, a, a, compose(a, b)}));
  CHECK(partial.status == StabilizationResult::Status::coset_condition_failed);
  REQUIRE(partial.coset_violation.has_value());
  CHECK(partial.coset_violation->first == 2);
  REQUIRE(partial.forward.stable_from.size() >= 2);
  CHECK(partial.forward.stable_from[1] == 1);

  StabilizationResult bad = stabilization_from_cosets(CurveSamples(0, {id, id, a}));
  CHECK(bad.status == StabilizationResult::Status::coset_condition_failed);
}

TEST_CASE("stabilized windows converge in the congruence metric") {
  auto odo = fixture_automaton("odometer");
  std::vector<Element> seq{Element::identity(odo)};
  Element power = parse_element_expr(odo, "t");
  // s(n) = t^(2^n) * ... pattern: s(n+1) = s(n) * t^(2^(n+1)); each step
  // multiplies by a stab(n+1) member, so the coset condition holds.
  Element acc = Element::identity(odo);
  for (int n = 0; n < 4; ++n) {
    power = compose(power, power);  // t^2, t^4, t^8, t^16
    acc = compose(acc, power);
    seq.push_back(acc);
  }
  StabilizationResult result = stabilization_from_cosets(CurveSamples(0, seq));
  CHECK(result.ok());
  CHECK(result.forward.cauchy);
}

TEST_CASE("root line enumeration covers both orientations") {
  auto lines = enumerate_root_lines(2, 2);
  CHECK(lines.size() == 8);
  bool saw_non_canonical = false;
  std::set<std::string> level2_positive;
  for (const GeodesicLine& L : lines) {
    if (!L.is_canonical()) saw_non_canonical = true;
    level2_positive.insert(line_vertex(L, 2).str());
  }
  CHECK(saw_non_canonical);
  // Every vertex of length 2 appears at parameter +2 on some line.
  CHECK(level2_positive == std::set<std::string>{"00", "01", "10", "11"});

  CHECK(enumerate_root_lines(3, 1).size() == 6);
}

TEST_CASE("line literal round trip") {
  GeodesicLine L = parse_line("line v0=ε minus=0(0) plus=1(1)", 2);
  CHECK(L == root_line());
  CHECK(render_line(L) == "line v0=ε minus=0(0) plus=1(1)");
  GeodesicLine M = parse_line("v0=01 minus=(10) plus=0(0)", 2);
  CHECK(M.v0() == v("01"));
  CHECK(M.ray_minus() == Ray({}, {1, 0}));
  CHECK_THROWS_AS(parse_line("v0=01 minus=(10)", 2), Error);
  CHECK_THROWS_AS(parse_line("line v0=0 minus=2(0) plus=1(1)", 2), Error);
}

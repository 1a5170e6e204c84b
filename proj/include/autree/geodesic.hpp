#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autree/element.hpp"
#include "autree/stabilizer.hpp"

namespace autree {

// An eventually periodic infinite descending word: preperiod followed by the
// period repeated forever. The finite presentation of an infinite ray.
class Ray {
 public:
  Ray(std::vector<int> preperiod, std::vector<int> period)
      : pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) fail(errc::bad_parameters, "ray period must be nonempty");
  }

  int letter_at(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return period_[(i - pre_.size()) % period_.size()];
  }

  const std::vector<int>& preperiod() const { return pre_; }
  const std::vector<int>& period() const { return period_; }

  // Canonical form: primitive period, minimal preperiod. Two rays denote the
  // same infinite word iff their normalized forms are equal.
  Ray normalized() const {
    std::vector<int> period = period_;
    for (std::size_t d = 1; d <= period.size() / 2; ++d) {
      if (period.size() % d != 0) continue;
      bool repeats = true;
      for (std::size_t i = d; i < period.size(); ++i)
        if (period[i] != period[i - d]) repeats = false;
      if (repeats) {
        period.resize(d);
        break;
      }
    }
    std::vector<int> pre = pre_;
    while (!pre.empty() && pre.back() == period.back()) {
      pre.pop_back();
      std::rotate(period.begin(), period.end() - 1, period.end());
    }
    return Ray(std::move(pre), std::move(period));
  }

  // Literal syntax: preperiod digits, then the period in parentheses.
  std::string str() const {
    std::string s;
    for (int a : pre_) s += static_cast<char>('0' + a);
    s += '(';
    for (int a : period_) s += static_cast<char>('0' + a);
    s += ')';
    return s;
  }

  friend bool operator==(const Ray& a, const Ray& b) {
    Ray na = a.normalized(), nb = b.normalized();
    return na.pre_ == nb.pre_ && na.period_ == nb.period_;
  }

 private:
  std::vector<int> pre_;
  std::vector<int> period_;
};

// A bi-infinite geodesic in canonical parameterization: gamma(0) is the
// vertex of minimal length, and the two rays descend from it through
// distinct first letters. Integer parameters sit on vertices, the open unit
// intervals between them on edges; no real-valued evaluation ever happens.
//
// Canonical orientation puts the lexicographically smaller ray on the
// negative side. Construction accepts either orientation (a check may need a
// prescribed vertex on the positive side); apply_to_line re-canonicalizes.
class GeodesicLine {
 public:
  GeodesicLine(Vertex v0, Ray minus, Ray plus)
      : v0_(std::move(v0)), minus_(std::move(minus)), plus_(std::move(plus)) {
    if (minus_.letter_at(0) == plus_.letter_at(0))
      fail(errc::bad_parameters, "the two rays must descend through distinct first letters");
  }

  const Vertex& v0() const { return v0_; }
  const Ray& ray_minus() const { return minus_; }
  const Ray& ray_plus() const { return plus_; }
  bool contains_root() const { return v0_.is_root(); }

  bool is_canonical() const { return minus_.letter_at(0) < plus_.letter_at(0); }

  GeodesicLine canonicalized() const {
    if (is_canonical()) return *this;
    return GeodesicLine(v0_, plus_, minus_);
  }

  friend bool operator==(const GeodesicLine& a, const GeodesicLine& b) {
    return a.v0_ == b.v0_ && a.minus_ == b.minus_ && a.plus_ == b.plus_;
  }

 private:
  Vertex v0_;
  Ray minus_;
  Ray plus_;
};

// gamma(n): v0 at n = 0, otherwise v0 extended by the first |n| letters of
// the positive or negative ray. The length is |v0| + |n|.
inline Vertex line_vertex(const GeodesicLine& line, long n) {
  const Ray& ray = n >= 0 ? line.ray_plus() : line.ray_minus();
  std::size_t steps = static_cast<std::size_t>(n >= 0 ? n : -n);
  std::vector<int> w = line.v0().letters();
  for (std::size_t i = 0; i < steps; ++i) w.push_back(ray.letter_at(i));
  return Vertex(std::move(w));
}

namespace detail {

// Image of an infinite ray under an element acting below a fixed vertex.
// The pair (canonical section word, position in the ray representation)
// evolves deterministically and eventually cycles, which yields an
// eventually periodic image ray.
inline Ray map_ray(const Element& below, const Ray& ray) {
  const AutomatonDef& aut = below.automaton();
  std::vector<int> output;
  std::map<std::pair<std::vector<Factor>, std::size_t>, std::size_t> seen;
  std::vector<Factor> word = canonical_word(aut, below.word());
  const std::size_t pre_len = ray.preperiod().size();
  const std::size_t period_len = ray.period().size();

  for (std::size_t i = 0;; ++i) {
    std::size_t phase = i < pre_len ? i : pre_len + (i - pre_len) % period_len;
    if (i >= pre_len) {
      auto key = std::make_pair(word, phase);
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) {
        std::size_t start = it->second;
        std::vector<int> pre(output.begin(), output.begin() + start);
        std::vector<int> period(output.begin() + start, output.begin() + i);
        return Ray(std::move(pre), std::move(period)).normalized();
      }
    }
    auto [next, b] = word_step(aut, word, ray.letter_at(i));
    output.push_back(b);
    word = canonical_word(aut, next);
  }
}

}  // namespace detail

// The image line g(L), re-canonicalized. Automorphisms preserve levels, so
// the minimal vertex of the image is g(v0) and the image rays are the images
// of the rays under the section of g at v0.
inline GeodesicLine apply_to_line(const Element& g, const GeodesicLine& line) {
  Vertex v0 = apply(g, line.v0());
  Element below = section(g, line.v0());
  Ray minus = detail::map_ray(below, line.ray_minus());
  Ray plus = detail::map_ray(below, line.ray_plus());
  return GeodesicLine(std::move(v0), std::move(minus), std::move(plus)).canonicalized();
}

// All root lines whose rays are pinned to the given depth: every ordered
// pair of length-`depth` ray prefixes with distinct first letters, each
// extended periodically by its last letter. Both orientations are listed, so
// every vertex of length <= depth sits on the positive side of some line.
inline std::vector<GeodesicLine> enumerate_root_lines(int p, int depth) {
  if (p < 2 || depth < 1) fail(errc::bad_parameters, "need p >= 2 and depth >= 1");
  std::vector<std::vector<int>> prefixes;
  std::vector<int> digits(depth, 0);
  bool exhausted = false;
  while (!exhausted) {
    prefixes.push_back(digits);
    exhausted = true;
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < p) {
        exhausted = false;
        break;
      }
      digits[k] = 0;
    }
  }
  std::vector<GeodesicLine> lines;
  for (const auto& minus : prefixes) {
    for (const auto& plus : prefixes) {
      if (minus[0] == plus[0]) continue;
      std::vector<int> mpre(minus.begin(), minus.end() - 1);
      std::vector<int> ppre(plus.begin(), plus.end() - 1);
      lines.emplace_back(Vertex::root(), Ray(mpre, {minus.back()}), Ray(ppre, {plus.back()}));
    }
  }
  return lines;
}

// Integer-point samples of a candidate smooth curve into Aut T, indexed over
// a window of consecutive integers.
class CurveSamples {
 public:
  CurveSamples(long lo, std::vector<Element> values) : lo_(lo), values_(std::move(values)) {
    if (values_.empty()) fail(errc::bad_parameters, "sample window must be nonempty");
    for (std::size_t i = 1; i < values_.size(); ++i)
      detail::require_same_automaton(values_[0], values_[i]);
  }

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
  const Element& at(long n) const {
    if (n < lo() || n > hi()) fail(errc::bad_parameters, "sample index outside window");
    return values_[static_cast<std::size_t>(n - lo_)];
  }
  std::size_t size() const { return values_.size(); }

 private:
  long lo_;
  std::vector<Element> values_;
};

// The level-coset condition on consecutive samples: s(n) and s(n+1) share a
// coset of stab(n) for n >= 0, and s(-m), s(-m-1) share a coset of stab(m)
// for m >= 0. This is the discrete-time footprint of a smooth curve.
struct CosetCheckResult {
  bool pass;
  // First violation: the pair (parameter, level) where the coset test failed;
  // parameter is the window index closer to 0.
  std::optional<std::pair<long, int>> violation;
};

inline CosetCheckResult coset_condition_check(const CurveSamples& s) {
  for (long n = std::max(0L, s.lo()); n + 1 <= s.hi(); ++n)
    if (!same_coset_mod_stab(s.at(n), s.at(n + 1), static_cast<int>(n)))
      return {false, std::make_pair(n, static_cast<int>(n))};
  for (long m = std::max(0L, -s.hi()); -m - 1 >= s.lo(); ++m)
    if (!same_coset_mod_stab(s.at(-m), s.at(-m - 1), static_cast<int>(m)))
      return {false, std::make_pair(-m, static_cast<int>(m))};
  return {true, std::nullopt};
}

// The geometric counterpart: along a root line, consecutive images
// s(n)(gamma(n)), s(n+1)(gamma(n+1)) must stay parent and child.
struct GeodesicImageResult {
  bool pass;
  std::optional<long> violation;  // first n where the child relation fails
};

inline GeodesicImageResult geodesic_image_check(const CurveSamples& s, const GeodesicLine& line,
                                                int depth) {
  if (!line.contains_root())
    fail(errc::requires_root_line, "geodesic image check requires a line through the root");
  for (long n = std::max(0L, s.lo()); n + 1 <= s.hi() && n + 1 <= depth; ++n) {
    Vertex image_lower = apply(s.at(n), line_vertex(line, n));
    Vertex image_upper = apply(s.at(n + 1), line_vertex(line, n + 1));
    if (image_upper.parent() != image_lower) return {false, n};
  }
  return {true, std::nullopt};
}

// Chain consequence of the coset condition: each coset stabilizes, i.e.
// s(n) stab(n) = s(n+k) stab(n) across the window (and symmetrically on the
// negative side), which is exactly convergence in the congruence topology.
// When the coset precondition fails the status says so, but the per-level
// stabilization table and profiles are still reported for the window.
struct StabilizationResult {
  enum class Status { stable, unstable, coset_condition_failed };
  Status status;
  std::optional<std::pair<long, int>> coset_violation;   // from the precondition check
  std::optional<std::pair<long, long>> chain_violation;  // (n, n+k) with distinct cosets
  ConvergenceProfile forward;                            // over samples at 0..hi
  std::optional<ConvergenceProfile> backward;            // over samples at 0..lo, when lo < 0

  bool ok() const { return status == Status::stable; }
};

inline StabilizationResult stabilization_from_cosets(const CurveSamples& s) {
  StabilizationResult result{StabilizationResult::Status::stable,
                             std::nullopt,
                             std::nullopt,
                             ConvergenceProfile{},
                             std::nullopt};

  CosetCheckResult pre = coset_condition_check(s);
  if (!pre.pass) {
    result.status = StabilizationResult::Status::coset_condition_failed;
    result.coset_violation = pre.violation;
  }

  for (long n = std::max(0L, s.lo()); n <= s.hi() && !result.chain_violation; ++n)
    for (long k = 1; n + k <= s.hi(); ++k)
      if (!same_coset_mod_stab(s.at(n), s.at(n + k), static_cast<int>(n))) {
        result.chain_violation = std::make_pair(n, n + k);
        break;
      }
  for (long m = std::max(0L, -s.hi()); -m >= s.lo() && !result.chain_violation; ++m)
    for (long k = 1; -m - k >= s.lo(); ++k)
      if (!same_coset_mod_stab(s.at(-m), s.at(-m - k), static_cast<int>(m))) {
        result.chain_violation = std::make_pair(-m, -m - k);
        break;
      }
  if (result.chain_violation && result.status == StabilizationResult::Status::stable)
    result.status = StabilizationResult::Status::unstable;

  if (s.hi() >= 0 && s.hi() > std::max(0L, s.lo())) {
    std::vector<Element> fwd;
    for (long n = std::max(0L, s.lo()); n <= s.hi(); ++n) fwd.push_back(s.at(n));
    result.forward = converges_congruence(fwd, static_cast<int>(s.hi()));
  }
  if (s.lo() < 0 && std::min(0L, s.hi()) - s.lo() >= 1) {
    std::vector<Element> bwd;
    for (long m = std::min(0L, s.hi()); m >= s.lo(); --m) bwd.push_back(s.at(m));
    result.backward = converges_congruence(bwd, static_cast<int>(-s.lo()));
  }
  return result;
}

}  // namespace autree

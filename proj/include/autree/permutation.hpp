#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "autree/error.hpp"

namespace autree {

// A permutation of {0,...,p-1}, stored as its image table.
class Permutation {
 public:
  explicit Permutation(int degree) : img_(degree) {
    if (degree < 1) fail(errc::bad_parameters, "permutation degree must be >= 1");
    std::iota(img_.begin(), img_.end(), 0);
  }

  static Permutation identity(int degree) { return Permutation(degree); }

  // Builds from an image table; nullopt when the table is not a bijection.
  static std::optional<Permutation> from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    if (n < 1) return std::nullopt;
    std::vector<char> seen(n, 0);
    for (int x : images) {
      if (x < 0 || x >= n || seen[x]) return std::nullopt;
      seen[x] = 1;
    }
    Permutation p(n);
    p.img_ = std::move(images);
    return p;
  }

  int degree() const { return static_cast<int>(img_.size()); }

  int operator()(int x) const { return img_[x]; }

  // Composition "this after q": (this ∘ q)(x) = this(q(x)).
  Permutation after(const Permutation& q) const {
    Permutation r(degree());
    for (int x = 0; x < degree(); ++x) r.img_[x] = img_[q.img_[x]];
    return r;
  }

  Permutation inverse() const {
    Permutation r(degree());
    for (int x = 0; x < degree(); ++x) r.img_[img_[x]] = x;
    return r;
  }

  bool is_identity() const {
    for (int x = 0; x < degree(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  const std::vector<int>& images() const { return img_; }

  // Disjoint-cycle rendering, e.g. "(0 1)" or "(0 1 2)(3 4)"; "id" when trivial.
  std::string to_cycles() const {
    if (is_identity()) return "id";
    std::string out;
    std::vector<char> done(degree(), 0);
    for (int x = 0; x < degree(); ++x) {
      if (done[x] || img_[x] == x) continue;
      out += '(';
      int y = x;
      bool first = true;
      do {
        if (!first) out += ' ';
        out += std::to_string(y);
        done[y] = 1;
        y = img_[y];
        first = false;
      } while (y != x);
      out += ')';
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> img_;
};

}  // namespace autree

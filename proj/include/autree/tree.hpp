#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "autree/error.hpp"

namespace autree {

// Branching degree of the regular rooted tree; letters are 0..p-1.
struct Alphabet {
  int p;

  explicit Alphabet(int degree) : p(degree) {
    if (p < 2) fail(errc::bad_parameters, "alphabet degree must be >= 2");
  }
};

// A vertex of the tree, i.e. a finite word over the alphabet. The empty word
// is the root. Immutable value with structural equality, usable as a map key.
class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<int> letters) : letters_(std::move(letters)) {
    for (int a : letters_)
      if (a < 0) fail(errc::bad_letter, "negative letter in vertex word");
  }

  static Vertex root() { return Vertex(); }

  std::size_t length() const { return letters_.size(); }
  bool is_root() const { return letters_.empty(); }
  int letter(std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }

  Vertex child(int a) const {
    std::vector<int> w = letters_;
    w.push_back(a);
    return Vertex(std::move(w));
  }

  Vertex parent() const {
    if (is_root()) fail(errc::root_has_no_parent, "the root has no parent");
    std::vector<int> w(letters_.begin(), letters_.end() - 1);
    return Vertex(std::move(w));
  }

  // Prefix of the first n letters.
  Vertex prefix(std::size_t n) const {
    std::vector<int> w(letters_.begin(), letters_.begin() + n);
    return Vertex(std::move(w));
  }

  bool is_prefix_of(const Vertex& other) const {
    if (length() > other.length()) return false;
    for (std::size_t i = 0; i < length(); ++i)
      if (letters_[i] != other.letters_[i]) return false;
    return true;
  }

  // Machine rendering: bare letters, empty string for the root.
  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (int a : letters_) s += static_cast<char>('0' + a);
    return s;
  }

  // Human rendering: the root prints as epsilon.
  std::string display() const { return is_root() ? "ε" : str(); }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<int> letters_;
};

// Reference to the subtree hanging below a vertex.
struct SubtreeRef {
  Vertex root_vertex;
};

inline std::size_t vertex_length(const Vertex& v) { return v.length(); }

inline std::vector<Vertex> children(const Vertex& v, const Alphabet& a) {
  std::vector<Vertex> out;
  out.reserve(a.p);
  for (int x = 0; x < a.p; ++x) out.push_back(v.child(x));
  return out;
}

inline Vertex parent(const Vertex& v) { return v.parent(); }

// Two vertices are joined by an edge iff one is a one-letter extension of
// the other.
inline bool is_adjacent(const Vertex& u, const Vertex& v) {
  const Vertex* shorter = &u;
  const Vertex* longer = &v;
  if (shorter->length() > longer->length()) std::swap(shorter, longer);
  return longer->length() == shorter->length() + 1 && shorter->is_prefix_of(*longer);
}

inline bool in_subtree(const Vertex& u, const SubtreeRef& s) {
  return s.root_vertex.is_prefix_of(u);
}

// Canonical identification of the subtree at s with the whole tree: strips
// the subtree root's word from u.
inline Vertex strip_prefix(const Vertex& u, const SubtreeRef& s) {
  if (!in_subtree(u, s))
    fail(errc::not_in_subtree, "\"" + u.str() + "\" is not in the subtree at \"" +
                                   s.root_vertex.str() + "\"");
  std::vector<int> w(u.letters().begin() + s.root_vertex.length(), u.letters().end());
  return Vertex(std::move(w));
}

// All p^n words of length n, in lexicographic order.
inline std::vector<Vertex> level_vertices(int n, const Alphabet& a) {
  if (n < 0) fail(errc::bad_parameters, "level must be >= 0");
  std::vector<Vertex> level{Vertex::root()};
  for (int k = 0; k < n; ++k) {
    std::vector<Vertex> next;
    next.reserve(level.size() * a.p);
    for (const Vertex& v : level)
      for (int x = 0; x < a.p; ++x) next.push_back(v.child(x));
    level = std::move(next);
  }
  return level;
}

}  // namespace autree

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "autree/element.hpp"

namespace autree {

// Depth-limited portrait of an automorphism: a local permutation at every
// vertex of length < depth. The denoted automorphism acts by those
// permutations above the depth and trivially below, which makes portraits
// exactly the finitary automorphisms of the depth-d truncation.
class Portrait {
 public:
  Portrait(int p, int depth) : p_(p), depth_(depth) {
    if (p < 2) fail(errc::bad_parameters, "alphabet degree must be >= 2");
    if (depth < 0) fail(errc::bad_parameters, "portrait depth must be >= 0");
    for (int n = 0; n < depth; ++n)
      for (const Vertex& v : level_vertices(n, Alphabet(p)))
        assign_.emplace(v, Permutation::identity(p));
  }

  int p() const { return p_; }
  int depth() const { return depth_; }

  const Permutation& at(const Vertex& v) const {
    auto it = assign_.find(v);
    if (it == assign_.end())
      fail(errc::malformed_portrait, "vertex \"" + v.str() + "\" outside portrait domain");
    return it->second;
  }

  void set(const Vertex& v, Permutation perm) {
    auto it = assign_.find(v);
    if (it == assign_.end())
      fail(errc::malformed_portrait, "vertex \"" + v.str() + "\" outside portrait domain");
    if (perm.degree() != p_)
      fail(errc::malformed_portrait, "permutation degree does not match alphabet");
    it->second = std::move(perm);
  }

  // Action of the denoted automorphism on an arbitrary vertex.
  Vertex apply(const Vertex& v) const {
    std::vector<int> image;
    image.reserve(v.length());
    Vertex prefix = Vertex::root();
    for (std::size_t i = 0; i < v.length(); ++i) {
      int a = v.letter(i);
      if (a < 0 || a >= p_) fail(errc::bad_letter, "letter out of alphabet range");
      int b = static_cast<int>(prefix.length()) < depth_ ? at(prefix)(a) : a;
      image.push_back(b);
      prefix = prefix.child(a);
    }
    return Vertex(std::move(image));
  }

  // The portrait with all-identity bottom layers stripped; two portraits
  // denote the same automorphism iff their canonical forms are equal.
  Portrait canonical() const {
    int d = depth_;
    while (d > 0) {
      bool trivial_layer = true;
      for (const Vertex& v : level_vertices(d - 1, Alphabet(p_)))
        if (!at(v).is_identity()) trivial_layer = false;
      if (!trivial_layer) break;
      --d;
    }
    Portrait out(p_, d);
    for (auto& [v, perm] : out.assign_) perm = at(v);
    return out;
  }

  const std::map<Vertex, Permutation>& assignment() const { return assign_; }

  std::string to_string() const {
    std::string s;
    for (int n = 0; n < depth_; ++n) {
      for (const Vertex& v : level_vertices(n, Alphabet(p_))) {
        s += v.display();
        s += ": ";
        s += at(v).to_cycles();
        s += '\n';
      }
    }
    return s;
  }

  friend bool operator==(const Portrait&, const Portrait&) = default;

  // Strict weak order for use as a set/map key. Equal (p, depth) forces
  // identical domains, so only the assigned permutations are compared.
  friend bool operator<(const Portrait& a, const Portrait& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    if (a.depth_ != b.depth_) return a.depth_ < b.depth_;
    auto ita = a.assign_.begin();
    auto itb = b.assign_.begin();
    for (; ita != a.assign_.end(); ++ita, ++itb)
      if (ita->second.images() != itb->second.images())
        return ita->second.images() < itb->second.images();
    return false;
  }

 private:
  int p_;
  int depth_;
  std::map<Vertex, Permutation> assign_;
};

// The depth-n portrait of g: v -> activity(g|_v) for every |v| < n.
inline Portrait portrait(const Element& g, int n) {
  Portrait out(g.automaton().p(), n);
  for (int k = 0; k < n; ++k)
    for (const Vertex& v : level_vertices(k, Alphabet(g.automaton().p())))
      out.set(v, activity(section(g, v)));
  return out;
}

// Synthesizes an automaton realizing the portrait: one state per domain
// vertex plus an identity state backing the trivial action below the depth.
inline Element from_portrait(const Portrait& P) {
  const int p = P.p();
  AutomatonSpec spec;
  spec.alphabet = p;

  std::vector<int> id_images(p);
  for (int a = 0; a < p; ++a) id_images[a] = a;
  spec.states.push_back({"e", id_images, std::vector<std::string>(p, "e")});

  auto state_name = [](const Vertex& v) { return v.is_root() ? std::string("g") : "g" + v.str(); };
  for (int n = 0; n < P.depth(); ++n) {
    for (const Vertex& v : level_vertices(n, Alphabet(p))) {
      StateSpec st;
      st.name = state_name(v);
      st.output_images = P.at(v).images();
      for (int a = 0; a < p; ++a) {
        Vertex child = v.child(a);
        st.transitions.push_back(static_cast<int>(child.length()) < P.depth()
                                     ? state_name(child)
                                     : std::string("e"));
      }
      spec.states.push_back(std::move(st));
    }
  }

  auto def = AutomatonDef::from_spec(spec);
  if (P.depth() == 0) return Element::identity(def);
  return Element::generator(def, *def->find("g"));
}

// Number of finitary automorphisms of the depth-d truncation:
// (p!)^(#internal vertices) with (p^d - 1)/(p - 1) internal vertices.
inline std::uint64_t finitary_count(int p, int depth) {
  std::uint64_t fact = 1;
  for (int k = 2; k <= p; ++k) fact *= k;
  std::uint64_t internal = 0, level = 1;
  for (int n = 0; n < depth; ++n) {
    internal += level;
    level *= p;
  }
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < internal; ++i) total *= fact;
  return total;
}

// All finitary automorphisms of the depth-d truncation as portraits, in a
// fixed mixed-radix order: vertices in level-then-lex order, permutations in
// lexicographic order of their image tables.
inline std::vector<Portrait> enumerate_finitary(int p, int depth) {
  std::vector<Permutation> perms;
  {
    std::vector<int> images(p);
    for (int a = 0; a < p; ++a) images[a] = a;
    do {
      perms.push_back(*Permutation::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
  }
  std::vector<Vertex> domain;
  for (int n = 0; n < depth; ++n)
    for (const Vertex& v : level_vertices(n, Alphabet(p))) domain.push_back(v);

  std::uint64_t total = finitary_count(p, depth);
  if (total > (1u << 24)) fail(errc::too_large, "finitary enumeration too large");

  std::vector<Portrait> out;
  out.reserve(total);
  std::vector<std::size_t> digits(domain.size(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    Portrait P(p, depth);
    for (std::size_t k = 0; k < domain.size(); ++k) P.set(domain[k], perms[digits[k]]);
    out.push_back(std::move(P));
    for (std::size_t k = domain.size(); k-- > 0;) {
      if (++digits[k] < perms.size()) break;
      digits[k] = 0;
    }
  }
  return out;
}

// The finitary automorphisms of the depth-d truncation realized as elements
// over one shared automaton, one state per canonical portrait. Keeps the
// enumerate_finitary order, so elements[i] realizes portraits[i].
struct FinitaryGroup {
  std::shared_ptr<const AutomatonDef> aut;
  std::vector<Portrait> portraits;
  std::vector<Element> elements;
};

inline FinitaryGroup finitary_group(int p, int depth) {
  FinitaryGroup group;
  group.portraits = enumerate_finitary(p, depth);

  std::map<Portrait, int> state_of;
  std::vector<Portrait> canon;
  for (const Portrait& P : group.portraits) {
    Portrait c = P.canonical();
    if (!state_of.count(c)) {
      state_of.emplace(c, static_cast<int>(canon.size()));
      canon.push_back(std::move(c));
    }
  }

  AutomatonSpec spec;
  spec.alphabet = p;
  auto state_name = [](int i) { return "g" + std::to_string(i); };
  for (std::size_t i = 0; i < canon.size(); ++i) {
    const Portrait& P = canon[i];
    StateSpec st;
    st.name = P.depth() == 0 ? "e" : state_name(static_cast<int>(i));
    st.output_images.resize(p);
    for (int a = 0; a < p; ++a)
      st.output_images[a] = P.depth() == 0 ? a : P.at(Vertex::root())(a);
    for (int a = 0; a < p; ++a) {
      // Section portrait at letter a: the assignment below that child,
      // re-rooted. Always a canonical portrait of smaller depth, hence one
      // of the states collected above.
      Portrait sect(p, std::max(P.depth() - 1, 0));
      for (int n = 0; n + 1 < P.depth(); ++n) {
        for (const Vertex& v : level_vertices(n, Alphabet(p))) {
          std::vector<int> w{a};
          w.insert(w.end(), v.letters().begin(), v.letters().end());
          sect.set(v, P.at(Vertex(w)));
        }
      }
      int target = state_of.at(sect.canonical());
      st.transitions.push_back(canon[target].depth() == 0 ? "e" : state_name(target));
    }
    spec.states.push_back(std::move(st));
  }

  group.aut = AutomatonDef::from_spec(spec);
  for (const Portrait& P : group.portraits) {
    int s = state_of.at(P.canonical());
    if (canon[s].depth() == 0) {
      group.elements.push_back(Element::identity(group.aut));
    } else {
      group.elements.push_back(Element::generator(group.aut, *group.aut->find(state_name(s))));
    }
  }
  return group;
}

}  // namespace autree

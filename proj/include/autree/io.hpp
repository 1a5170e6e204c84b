#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "autree/automaton.hpp"
#include "autree/element.hpp"
#include "autree/geodesic.hpp"

namespace autree {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

[[noreturn]] inline void syntax_fail(int line, const std::string& msg) {
  fail(errc::syntax_error, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

// Permutation literal: "id" or disjoint cycles like "(0 1)" or "(0 1)(2 3)".
inline Permutation parse_permutation(std::string_view text, int p, int line = 0) {
  std::string_view s = detail::trim(text);
  if (s == "id") return Permutation::identity(p);

  std::vector<int> images(p);
  for (int a = 0; a < p; ++a) images[a] = a;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    if (s[i] != '(') detail::syntax_fail(line, "expected '(' in permutation");
    std::size_t close = s.find(')', i);
    if (close == std::string_view::npos) detail::syntax_fail(line, "unterminated cycle");
    std::istringstream cycle(std::string(s.substr(i + 1, close - i - 1)));
    std::vector<int> entries;
    int x;
    while (cycle >> x) entries.push_back(x);
    if (!cycle.eof()) detail::syntax_fail(line, "cycle entries must be integers");
    if (entries.size() < 2) detail::syntax_fail(line, "a cycle needs at least two entries");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      int from = entries[k];
      int to = entries[(k + 1) % entries.size()];
      if (from < 0 || from >= p || to < 0 || to >= p)
        fail(errc::validation_error,
             "line " + std::to_string(line) + ": cycle entry out of alphabet range");
      images[from] = to;
    }
    i = close + 1;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    any = true;
  }
  if (!any) detail::syntax_fail(line, "expected 'id' or cycles");
  auto perm = Permutation::from_images(images);
  if (!perm)
    fail(errc::not_a_permutation,
         "line " + std::to_string(line) + ": cycles do not describe a permutation");
  return *perm;
}

// Automaton text format, one definition per file:
//   alphabet: <p>
//   state <name> = <perm> | <s_0> <s_1> ... <s_{p-1}>
// Blank lines and '#' comments are ignored.
inline AutomatonSpec parse_automaton_spec(const std::string& text) {
  AutomatonSpec spec;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool saw_alphabet = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = detail::trim(line.substr(0, hash));
    if (line.empty()) continue;

    if (!saw_alphabet) {
      if (!line.starts_with("alphabet:"))
        detail::syntax_fail(line_no, "expected 'alphabet: <p>' as the first declaration");
      std::istringstream rest{std::string(detail::trim(line.substr(9)))};
      int p = 0;
      if (!(rest >> p) || !(rest >> std::ws).eof())
        detail::syntax_fail(line_no, "alphabet degree must be a single integer");
      spec.alphabet = p;
      saw_alphabet = true;
      continue;
    }

    if (!line.starts_with("state"))
      detail::syntax_fail(line_no, "expected 'state <name> = <perm> | <sections>'");
    std::string_view rest = detail::trim(line.substr(5));
    std::size_t eq = rest.find('=');
    if (eq == std::string_view::npos) detail::syntax_fail(line_no, "missing '=' in state line");
    std::string name{detail::trim(rest.substr(0, eq))};
    if (name.empty()) detail::syntax_fail(line_no, "missing state name");
    for (char c : name)
      if (!detail::is_ident_char(c)) detail::syntax_fail(line_no, "bad character in state name");
    if (std::isdigit(static_cast<unsigned char>(name[0])))
      detail::syntax_fail(line_no, "state names must not start with a digit");

    std::string_view body = rest.substr(eq + 1);
    std::size_t bar = body.find('|');
    if (bar == std::string_view::npos)
      detail::syntax_fail(line_no, "missing '|' between permutation and sections");

    StateSpec st;
    st.name = name;
    st.output_images = parse_permutation(body.substr(0, bar), spec.alphabet, line_no).images();
    std::istringstream sections{std::string(body.substr(bar + 1))};
    std::string target;
    while (sections >> target) st.transitions.push_back(target);
    spec.states.push_back(std::move(st));
  }
  if (!saw_alphabet) detail::syntax_fail(1, "expected 'alphabet: <p>' as the first declaration");
  return spec;
}

// Parses and validates in one step; throws with the validation summary.
inline std::shared_ptr<const AutomatonDef> parse_automaton_text(const std::string& text) {
  return AutomatonDef::from_spec(parse_automaton_spec(text));
}

inline std::string render_automaton(const AutomatonDef& aut) {
  std::string out = "alphabet: " + std::to_string(aut.p()) + "\n";
  for (int i = 0; i < aut.size(); ++i) {
    const auto& st = aut.state(i);
    out += "state " + st.name + " = " + st.output.to_cycles() + " |";
    for (int t : st.transitions) out += " " + aut.state(t).name;
    out += "\n";
  }
  return out;
}

// Element expressions: words like "a*b^-1*a" over declared state names;
// "1" (or "id") is the empty word. Integer exponents expand to repetition.
inline Element parse_element_expr(std::shared_ptr<const AutomatonDef> aut,
                                  const std::string& expr) {
  std::vector<Factor> word;
  std::string_view s = detail::trim(expr);
  if (s.empty()) fail(errc::syntax_error, "empty element expression");

  std::size_t i = 0;
  bool expect_factor = true;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (!expect_factor) {
      if (s[i] != '*') fail(errc::syntax_error, "expected '*' between factors");
      ++i;
      expect_factor = true;
      continue;
    }
    std::size_t start = i;
    while (i < s.size() && detail::is_ident_char(s[i])) ++i;
    std::string name{s.substr(start, i - start)};
    if (name.empty()) fail(errc::syntax_error, "expected a state name in element expression");

    long exponent = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t estart = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == estart) fail(errc::syntax_error, "expected an integer exponent after '^'");
      exponent = std::stol(std::string(s.substr(estart, i - estart)));
    }

    if (name == "1" || ((name == "id" || name == "identity") && !aut->find(name))) {
      expect_factor = false;
      continue;  // the empty word
    }
    auto state = aut->find(name);
    if (!state) fail(errc::unknown_state, "unknown state '" + name + "' in element expression");
    int sign = exponent < 0 ? -1 : 1;
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k)
      word.push_back(Factor{*state, sign});
    expect_factor = false;
  }
  if (expect_factor) fail(errc::syntax_error, "dangling '*' in element expression");
  return Element(std::move(aut), std::move(word));
}

inline std::string render_word(const Element& g) {
  if (g.word().empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < g.word().size(); ++i) {
    if (i) out += '*';
    const Factor& f = g.word()[i];
    out += g.automaton().state(f.state).name;
    if (f.exp < 0) out += "^-1";
  }
  return out;
}

// Vertex literal: bare letters ("011"); the root is the empty string or the
// epsilon sign used in human-facing output.
inline Vertex parse_vertex(std::string_view text, int p) {
  std::string_view s = detail::trim(text);
  if (s.empty() || s == "ε" || s == "e" || s == "eps") return Vertex::root();
  std::vector<int> letters;
  letters.reserve(s.size());
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(errc::syntax_error, "vertex letters must be digits");
    int a = c - '0';
    if (a >= p) fail(errc::bad_letter, "vertex letter out of alphabet range");
    letters.push_back(a);
  }
  return Vertex(std::move(letters));
}

// Ray literal: preperiod digits followed by the period in parentheses,
// e.g. "0(0)", "01(10)", "(1)".
inline Ray parse_ray(std::string_view text, int p) {
  std::string_view s = detail::trim(text);
  std::size_t open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    fail(errc::syntax_error, "ray literal must end with a parenthesized period");
  auto digits = [&](std::string_view part) {
    std::vector<int> out;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(errc::syntax_error, "ray letters must be digits");
      int a = c - '0';
      if (a >= p) fail(errc::bad_letter, "ray letter out of alphabet range");
      out.push_back(a);
    }
    return out;
  };
  std::vector<int> pre = digits(s.substr(0, open));
  std::vector<int> period = digits(s.substr(open + 1, s.size() - open - 2));
  if (period.empty()) fail(errc::syntax_error, "ray period must be nonempty");
  return Ray(std::move(pre), std::move(period));
}

// Line literal: `line v0=<vertex> minus=<ray> plus=<ray>`; the leading word
// "line" is optional.
inline GeodesicLine parse_line(std::string_view text, int p) {
  std::istringstream in{std::string(detail::trim(text))};
  std::string token;
  bool have_v0 = false, have_minus = false, have_plus = false;
  Vertex v0;
  std::vector<Ray> rays{Ray({}, {0}), Ray({}, {0})};
  while (in >> token) {
    if (token == "line") continue;
    std::size_t eq = token.find('=');
    if (eq == std::string::npos) fail(errc::syntax_error, "expected key=value in line literal");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "v0") {
      v0 = parse_vertex(value, p);
      have_v0 = true;
    } else if (key == "minus") {
      rays[0] = parse_ray(value, p);
      have_minus = true;
    } else if (key == "plus") {
      rays[1] = parse_ray(value, p);
      have_plus = true;
    } else {
      fail(errc::syntax_error, "unknown key '" + key + "' in line literal");
    }
  }
  if (!have_v0 || !have_minus || !have_plus)
    fail(errc::syntax_error, "line literal needs v0=, minus= and plus=");
  return GeodesicLine(std::move(v0), std::move(rays[0]), std::move(rays[1]));
}

inline std::string render_line(const GeodesicLine& line) {
  return "line v0=" + line.v0().display() + " minus=" + line.ray_minus().str() +
         " plus=" + line.ray_plus().str();
}

}  // namespace autree

#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autree/fixtures.hpp"
#include "autree/io.hpp"
#include "autree/portrait.hpp"
#include "autree/verify.hpp"

namespace autree {

namespace cli_detail {

inline std::shared_ptr<const AutomatonDef> load_automaton(const std::string& name_or_path) {
  if (is_fixture_name(name_or_path)) return fixture_automaton(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) fail(errc::bad_parameters, "cannot open automaton file '" + name_or_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_automaton_text(text.str());
}

// Exact dyadic rendering of a congruence distance.
inline std::string dyadic(int agreement_level) {
  if (agreement_level == 0) return "1";
  return "1/" + std::to_string(std::uint64_t{1} << agreement_level);
}

struct Output {
  std::ostream& out;
  bool tsv;
};

inline void print_report(const Report& report, Output o) {
  for (const CheckLine& line : report) {
    if (o.tsv)
      o.out << line.name << '\t' << (line.pass ? "PASS" : "FAIL") << '\t' << line.detail << '\n';
    else
      o.out << (line.pass ? "PASS " : "FAIL ") << line.name << ": " << line.detail << '\n';
  }
}

}  // namespace cli_detail

// Command-line front end. Returns the process exit status: 0 when every
// executed check passed, nonzero on failure or usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"self-similar automorphisms of the p-regular rooted tree"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format: text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}));

  std::string automaton_arg;
  std::string elt_a, elt_b, vertex_arg, target_arg;
  int depth = 3, cap = 8, level = 1;
  int opt_p = 0, opt_d = 0, opt_len = 0;

  auto add_automaton = [&](CLI::App* cmd) {
    cmd->add_option("--automaton,-A", automaton_arg, "fixture name or automaton file path")
        ->required();
  };

  CLI::App* cmd_apply = app.add_subcommand("apply", "apply an element to a vertex or line");
  cmd_apply->add_option("element", elt_a)->required();
  cmd_apply->add_option("target", target_arg, "vertex word or line literal")->required();
  add_automaton(cmd_apply);

  CLI::App* cmd_compose = app.add_subcommand("compose", "compose two elements, print portrait");
  cmd_compose->add_option("left", elt_a)->required();
  cmd_compose->add_option("right", elt_b)->required();
  cmd_compose->add_option("--depth", depth, "portrait depth");
  add_automaton(cmd_compose);

  CLI::App* cmd_portrait = app.add_subcommand("portrait", "print the depth-limited portrait");
  cmd_portrait->add_option("element", elt_a)->required();
  cmd_portrait->add_option("--depth", depth, "portrait depth");
  add_automaton(cmd_portrait);

  CLI::App* cmd_dist = app.add_subcommand("dist", "congruence distance of two elements");
  cmd_dist->add_option("left", elt_a)->required();
  cmd_dist->add_option("right", elt_b)->required();
  cmd_dist->add_option("--cap", cap, "deepest level probed");
  add_automaton(cmd_dist);

  CLI::App* cmd_stab = app.add_subcommand("stab", "level stabilizer membership");
  cmd_stab->add_option("element", elt_a)->required();
  cmd_stab->add_option("--level", level, "stabilizer level")->required();
  add_automaton(cmd_stab);

  CLI::App* cmd_rist = app.add_subcommand("rist", "rigid stabilizer membership");
  cmd_rist->add_option("element", elt_a)->required();
  cmd_rist->add_option("--vertex", vertex_arg, "subtree root")->required();
  cmd_rist->add_option("--depth", depth, "witness search depth")->required();
  add_automaton(cmd_rist);

  CLI::App* cmd_phi = app.add_subcommand("phi", "wreath decomposition / level sections");
  cmd_phi->add_option("element", elt_a)->required();
  cmd_phi->add_option("--level", level, "section level");
  add_automaton(cmd_phi);

  CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  std::string which;
  cmd_verify->add_option("suite", which,
                         "axioms | equality | counting | ultrametric | smooth-curves | "
                         "d-topology | discreteness | all")
      ->required()
      ->check(CLI::IsMember({"axioms", "equality", "counting", "ultrametric", "smooth-curves",
                             "d-topology", "discreteness", "all"}));
  cmd_verify->add_option("--p", opt_p, "branching degree for model suites");
  cmd_verify->add_option("--d", opt_d, "truncation depth for model suites");
  cmd_verify->add_option("--len", opt_len, "path length for curve/plot suites");

  CLI::App* cmd_fixtures = app.add_subcommand("fixtures", "fixture management");
  CLI::App* cmd_fixtures_list = cmd_fixtures->add_subcommand("list", "list built-in fixtures");

  args.insert(args.begin(), "autree");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  cli_detail::Output o{out, format == "tsv"};
  try {
    if (*cmd_apply) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      Element g = parse_element_expr(aut, elt_a);
      if (target_arg.find('(') != std::string::npos || target_arg.find("v0=") == 0 ||
          target_arg.rfind("line", 0) == 0) {
        GeodesicLine line = parse_line(target_arg, aut->p());
        out << render_line(apply_to_line(g, line)) << '\n';
      } else {
        Vertex v = parse_vertex(target_arg, aut->p());
        Vertex image = apply(g, v);
        out << (o.tsv ? image.str() : image.display()) << '\n';
      }
      return 0;
    }
    if (*cmd_compose) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      Element g = compose(parse_element_expr(aut, elt_a), parse_element_expr(aut, elt_b));
      out << render_word(g) << '\n' << portrait(g, depth).to_string();
      return 0;
    }
    if (*cmd_portrait) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      out << portrait(parse_element_expr(aut, elt_a), depth).to_string();
      return 0;
    }
    if (*cmd_dist) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      Element g = parse_element_expr(aut, elt_a);
      Element h = parse_element_expr(aut, elt_b);
      Agreement a = agreement_level(g, h, cap);
      if (a.equal) {
        out << (o.tsv ? "0\tEQUAL" : "d = 0 (equal)") << '\n';
      } else if (a.level >= cap) {
        fail(errc::cap_exceeded, "elements agree through level " + std::to_string(cap) +
                                     " but are not equal");
      } else if (o.tsv) {
        out << cli_detail::dyadic(a.level) << '\t' << a.level << '\n';
      } else {
        out << "d = " << cli_detail::dyadic(a.level) << " (agreement level " << a.level << ")\n";
      }
      return 0;
    }
    if (*cmd_stab) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      out << (in_stab(parse_element_expr(aut, elt_a), level) ? "true" : "false") << '\n';
      return 0;
    }
    if (*cmd_rist) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      Vertex v = parse_vertex(vertex_arg, aut->p());
      RistVerdict verdict = in_rist(parse_element_expr(aut, elt_a), v, depth);
      if (verdict.ok)
        out << "true\n";
      else if (verdict.witness)
        out << "false (witness " << verdict.witness->display() << ")\n";
      else
        out << "false (no witness within depth " << depth << ")\n";
      return 0;
    }
    if (*cmd_phi) {
      auto aut = cli_detail::load_automaton(automaton_arg);
      Element g = parse_element_expr(aut, elt_a);
      if (level == 1 && !fixes_level(g, 1)) {
        WreathDecomposition d = phi(g);
        out << "activity: " << d.activity.to_cycles() << '\n';
        for (int a = 0; a < aut->p(); ++a)
          out << a << ": " << render_word(d.sections[a]) << '\n';
      } else {
        std::vector<Element> sections = phi_n(g, level);
        auto level_words = level_vertices(level, Alphabet(aut->p()));
        for (std::size_t i = 0; i < sections.size(); ++i)
          out << level_words[i].display() << ": " << render_word(sections[i]) << '\n';
      }
      return 0;
    }
    if (*cmd_verify) {
      Report report;
      auto extend = [&](const Report& r) { report.insert(report.end(), r.begin(), r.end()); };
      if (which == "axioms") extend(axioms_suite());
      if (which == "equality") extend(equality_suite());
      if (which == "counting") extend(counting_suite());
      if (which == "ultrametric") extend(ultrametric_suite());
      if (which == "smooth-curves")
        extend(smooth_curves_suite(opt_p ? opt_p : 2, opt_d ? opt_d : 2, opt_len ? opt_len : 3));
      if (which == "d-topology")
        extend(opt_p && opt_d ? d_topology_suite_one(opt_p, opt_d) : d_topology_suite());
      if (which == "discreteness") {
        if (opt_p && opt_d && opt_len) {
          extend(discreteness_suite_one(opt_len, opt_p, opt_d));
        } else {
          extend(discreteness_suite());
          extend(vertex_constant_suite());
        }
      }
      if (which == "all") {
        extend(axioms_suite());
        extend(equality_suite());
        extend(counting_suite());
        extend(ultrametric_suite());
        extend(smooth_curves_suite());
        extend(d_topology_suite());
        extend(discreteness_suite());
        extend(vertex_constant_suite());
      }
      cli_detail::print_report(report, o);
      return all_pass(report) ? 0 : 1;
    }
    if (*cmd_fixtures) {
      if (*cmd_fixtures_list || cmd_fixtures->get_subcommands().empty()) {
        for (const Fixture& f : fixtures()) {
          auto aut = fixture_automaton(f.name);
          if (o.tsv) {
            out << f.name << '\t' << aut->p() << '\t';
            for (int i = 0; i < aut->size(); ++i) out << (i ? " " : "") << aut->state(i).name;
            out << '\n';
          } else {
            out << f.name << " (p=" << aut->p() << ", states:";
            for (int i = 0; i < aut->size(); ++i) out << ' ' << aut->state(i).name;
            out << ")\n";
          }
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace autree

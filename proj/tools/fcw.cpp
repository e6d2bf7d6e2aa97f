// fcw: command-line front end for group schemes, reductions, membership
// queries and the verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcw/dsl.hpp"
#include "fcw/gadgets.hpp"
#include "fcw/rewrite.hpp"
#include "fcw/verify.hpp"

namespace {

  using namespace fcw;

  constexpr int kExitError   = 1;
  constexpr int kExitUnknown = 2;
  constexpr int kExitFailure = 3;

  struct Failure {
    int         code;
    std::string message;
  };

  std::string read_input(std::string const& path) {
    if (path == "-") {
      return {std::istreambuf_iterator<char>(std::cin), {}};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Failure{kExitError, path + ": cannot open"};
    }
    return {std::istreambuf_iterator<char>(in), {}};
  }

  Workspace load(std::vector<std::string> const& files) {
    Workspace ws;
    for (auto const& f : files) {
      try {
        ws.load(read_input(f));
      } catch (ParseError const& e) {
        throw Failure{kExitError, (f == "-" ? std::string("<stdin>") : f) + ":" + e.what()};
      }
    }
    return ws;
  }

  void require_valid(Workspace const& ws) {
    auto diags = ws.check();
    if (diags.empty()) {
      return;
    }
    std::string msg;
    for (auto const& d : diags) {
      msg += (msg.empty() ? "" : "\n") + d.str();
    }
    throw Failure{kExitError, msg};
  }

  // Built-in groups: F, Xi<m>, Theta<m>, KJ<m> and AKJ<m> (the two-tail example)
  // (its <a> * K_J form). Negative m is written n<m>, as in Xin2.
  struct Builtin {
    NodePtr                            group;
    std::map<std::string, SubgroupPtr> subgroups;
  };

  std::optional<Builtin> builtin(std::string const& name) {
    static std::regex const re("(F|Xi|Theta|KJ|AKJ)(n?)([0-9]*)");
    std::smatch             m;
    if (!std::regex_match(name, m, re)) {
      return std::nullopt;
    }
    std::string kind = m[1];
    if (kind == "F") {
      if (m[2].length() || m[3].length()) {
        return std::nullopt;
      }
      return Builtin{gadgets::free_bc("F"), {}};
    }
    if (!m[3].length()) {
      return std::nullopt;
    }
    std::int64_t k = std::stoll(m[3]) * (m[2].length() ? -1 : 1);
    Builtin      b;
    if (kind == "Xi") {
      b.group           = gadgets::Xi(k);
      b.subgroups["L"]     = gadgets::xi_closure(b.group, k, gadgets::Direction::Up);
      b.subgroups["Ldown"] = gadgets::xi_closure(b.group, k, gadgets::Direction::Down);
    } else if (kind == "Theta") {
      b.group           = gadgets::Theta(k);
      b.subgroups["L"]     = gadgets::theta_closure(b.group, k, gadgets::Direction::Up);
      b.subgroups["Ldown"] = gadgets::theta_closure(b.group, k, gadgets::Direction::Down);
    } else {
      auto w = gadgets::example_5_4(k, kind == "AKJ");
      b.group          = w.k;
      b.subgroups["L"] = w.l;
      b.subgroups["H"] = w.h;
    }
    return b;
  }

  struct Context {
    Workspace              ws;
    std::optional<Builtin> bi;
  };

  Context open(std::vector<std::string> const& files, std::string const& group) {
    Context c{load(files), std::nullopt};
    require_valid(c.ws);
    if (!group.empty() && !c.ws.has_group(group)) {
      c.bi = builtin(group);
      if (!c.bi) {
        throw Failure{kExitError, "unknown group '" + group + "'"};
      }
    }
    return c;
  }

  NodePtr group_of(Context const& c, std::string const& name) {
    return c.bi ? c.bi->group : c.ws.group(name);
  }

  SubgroupPtr subgroup_of(Context const& c, std::string const& name) {
    if (c.ws.has_subgroup(name)) {
      return c.ws.subgroup(name);
    }
    if (c.bi) {
      if (auto it = c.bi->subgroups.find(name); it != c.bi->subgroups.end()) {
        return it->second;
      }
    }
    throw Failure{kExitError, "unknown subgroup '" + name + "'"};
  }

  Word word_in(Alphabet const& alphabet, std::string const& text) {
    try {
      return parse_word(text, alphabet);
    } catch (ParseError const& e) {
      throw Failure{kExitError, "word:" + std::string(e.what())};
    }
  }

  // construction tree as a graph
  std::string tree_dot(NodePtr const& root) {
    std::ostringstream                       out;
    std::map<Node const*, std::size_t>       id;
    std::vector<NodePtr>                     order;
    std::function<void(NodePtr const&)>      visit = [&](NodePtr const& n) {
      if (id.contains(n.get())) {
        return;
      }
      id[n.get()] = id.size();
      order.push_back(n);
      for (auto const& ch : n->children()) {
        visit(ch);
      }
    };
    visit(root);
    out << "digraph scheme {\n";
    for (auto const& n : order) {
      static char const* const kinds[] = {"free", "hnn", "amalgam", "star"};
      out << "  n" << id[n.get()] << " [label=\"" << n->name() << "\\n"
          << kinds[static_cast<int>(n->kind())] << "\"];\n";
    }
    for (auto const& n : order) {
      for (auto const& ch : n->children()) {
        out << "  n" << id[n.get()] << " -> n" << id[ch.get()] << ";\n";
      }
    }
    out << "}\n";
    return out.str();
  }

  std::string presentation_json(NodePtr const& g) {
    auto           p = presentation(g);
    nlohmann::json j;
    j["name"] = g->name();
    j["generators"] = nlohmann::json::array();
    for (Symbol s : p.generators) {
      j["generators"].push_back(std::string(s.name()));
    }
    j["relators"] = nlohmann::json::array();
    for (auto const& r : p.relators) {
      j["relators"].push_back(r.str());
    }
    return j.dump(2) + "\n";
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free constructions, Britton reduction and benign subgroups"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string              group, subgroup, emit = "dsl";
  bool                     show_witness = false;

  auto* check = app.add_subcommand("check", "Parse and validate scheme files ('-' for stdin)");
  check->add_option("files", files, "Scheme files")->required();

  auto*       reduce = app.add_subcommand("reduce", "Print the normal form of a word");
  std::string word;
  reduce->add_option("-f,--file", files, "Scheme files");
  reduce->add_option("-g,--group", group, "Group name")->required();
  reduce->add_option("word", word, "Word")->required();

  auto* member = app.add_subcommand("member", "Decide membership of a word in a subgroup");
  member->add_option("-f,--file", files, "Scheme files");
  member->add_option("-g,--group", group, "Group name");
  member->add_option("-s,--subgroup", subgroup, "Subgroup name")->required();
  member->add_flag("--witness", show_witness, "Print a witness for Yes verdicts");
  member->add_option("word", word, "Word")->required();

  auto*                    intersect = app.add_subcommand("intersect", "Basis of the intersection of two subgroups");
  std::vector<std::string> pair;
  intersect->add_option("-f,--file", files, "Scheme files");
  intersect->add_option("-g,--group", group, "Group name");
  intersect->add_option("subgroups", pair, "Two subgroup names")->expected(2)->required();

  auto*       dot = app.add_subcommand("dot", "DOT text of a subgroup automaton or a construction tree");
  std::size_t trunc = 8;
  dot->add_option("-f,--file", files, "Scheme files");
  dot->add_option("-g,--group", group, "Group name (tree when no subgroup is given)");
  dot->add_option("-s,--subgroup", subgroup, "Subgroup name");
  dot->add_option("-k,--truncate", trunc, "Truncation length for generator streams");

  auto*                verify = app.add_subcommand("verify", "Run a verification suite and print its JSON report");
  std::string          suite;
  std::size_t          samples = 200, jobs = 1;
  std::uint64_t        seed = 1;
  fcw::verify::SuiteParams params;
  std::int64_t         m_opt = 0;
  std::size_t          r_opt = 0;
  bool                 list  = false;
  verify->add_option("suite", suite, "Suite name");
  verify->add_flag("--list", list, "List suite names");
  verify->add_option("--samples", samples, "Number of samples");
  verify->add_option("--seed", seed, "Seed");
  verify->add_option("--jobs", jobs, "Worker threads");
  auto* m_flag = verify->add_option("--m", m_opt, "Index m");
  auto* r_flag = verify->add_option("--r", r_opt, "Number of stable letters");
  verify->add_option("--assoc", params.assoc, "Associated subgroups: b, c, bc2, G")->delimiter(',');
  verify->add_option("--dir", params.dir, "up, down or both")->check(CLI::IsMember({"up", "down", "both"}));
  verify->add_option("--with-a", params.with_a, "no, yes or both")->check(CLI::IsMember({"no", "yes", "both"}));
  verify->add_option("--length", params.length, "Maximal random word length");
  verify->add_option("--depth", params.budget.depth, "Bounded search depth");
  verify->add_option("--max-ball", params.budget.max_ball, "Bounded search ball size");
  verify->add_flag("--mutate", params.mutate, "Drop one relator from the scheme");
  verify->add_option("--emit", emit, "Output format")->check(CLI::IsMember({"json"}));

  auto*        gadget = app.add_subcommand("gadget", "Print a built-in construction");
  std::string  gname;
  std::int64_t gm = 0;
  gadget->add_option("name", gname, "xi, theta, example54")
      ->required()
      ->check(CLI::IsMember({"xi", "theta", "example54"}));
  gadget->add_option("--m", gm, "Index m");
  gadget->add_option("--emit", emit, "dsl, json or dot")->check(CLI::IsMember({"dsl", "json", "dot"}));

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*check) {
      auto ws = load(files);
      require_valid(ws);
      std::cout << "ok: " << ws.group_names().size() << " groups, " << ws.subgroup_names().size()
                << " subgroups\n";
      return 0;
    }

    if (*reduce) {
      auto c = open(files, group);
      auto g = group_of(c, group);
      std::cout << describe_normal_form(g, word_in(g->alphabet(), word)) << "\n";
      return 0;
    }

    if (*member) {
      auto c = open(files, group);
      auto h = subgroup_of(c, subgroup);
      if (!group.empty() && group_of(c, group) != h->ambient()) {
        throw Failure{kExitError, "subgroup '" + subgroup + "' does not live in '" + group + "'"};
      }
      auto v = h->member(word_in(h->ambient()->alphabet(), word));
      std::cout << v.str() << "\n";
      if (show_witness && v.is_yes()) {
        std::cout << "witness: " << to_string(v.witness) << "\n";
      }
      if (v.is_unknown() && !v.note.empty()) {
        std::cerr << "note: " << v.note << "\n";
      }
      return v.is_unknown() ? kExitUnknown : 0;
    }

    if (*intersect) {
      auto c = open(files, group);
      auto a = subgroup_of(c, pair[0]);
      auto b = subgroup_of(c, pair[1]);
      if (!a->automaton() || !b->automaton()) {
        throw Failure{kExitError, "intersect needs finitely generated subgroups of a free group"};
      }
      if (a->ambient() != b->ambient()) {
        throw Failure{kExitError, "subgroups live in different groups"};
      }
      auto        meet = stallings::intersect(*a->automaton(), *b->automaton());
      std::string out  = "<";
      for (std::size_t i = 0; i < meet.basis().size(); ++i) {
        out += (i ? ", " : "") + meet.basis()[i].str();
      }
      std::cout << out << ">\n";
      return 0;
    }

    if (*dot) {
      auto c = open(files, group);
      if (subgroup.empty()) {
        if (group.empty()) {
          throw Failure{kExitError, "dot needs -g or -s"};
        }
        std::cout << tree_dot(group_of(c, group));
        return 0;
      }
      auto h = subgroup_of(c, subgroup);
      if (h->automaton()) {
        std::cout << h->automaton()->dot(subgroup);
      } else if (h->stream_data()) {
        std::cout << h->truncation(trunc).dot(subgroup);
      } else {
        throw Failure{kExitError, "subgroup '" + subgroup + "' has no automaton"};
      }
      return 0;
    }

    if (*verify) {
      if (list) {
        for (auto const& s : fcw::verify::suite_names()) {
          std::cout << s << "\n";
        }
        return 0;
      }
      if (suite.empty()) {
        throw Failure{kExitError, "verify needs a suite name (see --list)"};
      }
      if (m_flag->count()) {
        params.m = m_opt;
      }
      if (r_flag->count()) {
        params.r = r_opt;
      }
      auto rep = fcw::verify::run_suite(suite, params, samples, seed, jobs);
      std::cout << rep.to_json() << "\n";
      if (rep.fail > 0) {
        return kExitFailure;
      }
      return rep.unknown > 0 ? kExitUnknown : 0;
    }

    if (*gadget) {
      NodePtr                  root;
      std::vector<SubgroupPtr> extra;
      if (gname == "xi") {
        root  = gadgets::Xi(gm);
        extra = {gadgets::xi_closure(root, gm, gadgets::Direction::Up),
                 gadgets::xi_closure(root, gm, gadgets::Direction::Down)};
      } else if (gname == "theta") {
        root  = gadgets::Theta(gm);
        extra = {gadgets::theta_closure(root, gm, gadgets::Direction::Up)};
      } else {
        auto w = gadgets::example_5_4(gm);
        root   = w.k;
        extra  = {w.l};
      }
      if (emit == "dsl") {
        std::cout << emit_dsl(root, extra);
      } else if (emit == "json") {
        std::cout << presentation_json(root);
      } else {
        std::cout << tree_dot(root);
      }
      return 0;
    }
  } catch (Failure const& f) {
    std::cerr << f.message << "\n";
    return f.code;
  } catch (ParseError const& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}

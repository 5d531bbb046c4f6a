// weilc: command-line front end for the Weil_1 kernel.
//
// Exit codes: 0 ok, 1 syntax, 2 validation, 3 verification failure, 4 size guard.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "weil/decompose.hpp"
#include "weil/errors.hpp"
#include "weil/syntax.hpp"
#include "weil/verify.hpp"

namespace {

using namespace weil;

enum Exit { kOk = 0, kSyntax = 1, kValidation = 2, kVerification = 3, kTooLarge = 4 };

struct Options {
  std::string rig = "bool2";
  std::string format = "text";
  int max_vertices = 3;
  bool check = false;
};

// An argument naming an existing file is read from it; `-` reads stdin.
std::string input(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::error_code ec;
  if (arg.find('\n') == std::string::npos && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

bool looks_like_morphism(const std::string& text) { return text.find("->") != std::string::npos; }

bool looks_like_expr(const std::string& text) {
  std::size_t p = text.find_first_not_of(" \t\r\n");
  if (p == std::string::npos) return false;
  for (const char* head : {"id", "eps", "eta", "plus", "ghat", "proj", "tensor", "comp", "pair"}) {
    std::string_view h(head);
    if (text.compare(p, h.size(), h) == 0) return true;
  }
  return (text[p] == 'l' || text[p] == 'c') && text.find_first_not_of(" \t\r\n", p + 1) == std::string::npos;
}

bool looks_like_graph(const std::string& text) {
  std::size_t p = text.find_first_not_of(" \t\r\n0123456789");
  return p == std::string::npos || text[p] == ':';
}

const char* kColours[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};

// Target vertices with the edges of G_B; every circle is a node in the
// cluster of its source generator, joined to the vertices it contains.
std::string morphism_dot(const Morphism& f, const std::string& name) {
  int n = f.source().generators(), m = f.target().generators();
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < m; ++v) os << "  y" << v + 1 << " [label=\"" << generator_name("y", v, m) << "\"];\n";
  for (auto [u, v] : f.target().graph().edges()) os << "  y" << u + 1 << " -- y" << v + 1 << ";\n";
  for (int i = 0; i < n; ++i) {
    const char* colour = kColours[i % 8];
    os << "  subgraph cluster_x" << i + 1 << " {\n";
    os << "    label=\"" << generator_name("x", i, n) << "\";\n    color=" << colour << ";\n";
    const auto& terms = f.image(i).terms();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      Polynomial single = Polynomial::from_terms(0, {terms[t]}, f.rig());
      os << "    c" << i + 1 << "_" << t + 1 << " [shape=ellipse, style=dashed, color=" << colour << ", label=\""
         << to_string(single, "y", m) << "\"];\n";
    }
    os << "  }\n";
    for (std::size_t t = 0; t < terms.size(); ++t) {
      for (int v : members(terms[t].mono)) {
        os << "  c" << i + 1 << "_" << t + 1 << " -- y" << v + 1 << " [color=" << colour << ", style=dashed];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

int cmd_parse(const Options& o, const std::string& arg) {
  std::string text = input(arg);
  Rig rig = parse_rig(o.rig);
  if (looks_like_morphism(text)) {
    std::cout << to_string(parse_morphism(text, rig), morphism_name(text)) << "\n";
  } else if (looks_like_expr(text)) {
    GenExpr e = parse_genexpr(text);
    Signature s = infer(e);
    std::cout << to_string(e) << "\n";
    std::cout << "type: " << to_string(s.source) << " -> " << to_string(s.target) << "\n";
  } else if (looks_like_graph(text)) {
    std::cout << graph_to_string(parse_graph(text)) << "\n";
  } else {
    Cotree t = parse_object(text);
    std::cout << to_string(t) << "\n";
    std::cout << "presentation: " << presentation(WeilObject(t)) << "\n";
    std::cout << "graph: " << graph_to_string(realize(t)) << "\n";
  }
  return kOk;
}

int cmd_validate(const Options& o, const std::string& arg) {
  std::string text = input(arg);
  Morphism f = parse_morphism(text, parse_rig(o.rig));
  std::cout << "valid: " << to_string(f, morphism_name(text)) << "\n";
  return kOk;
}

int cmd_compose(const Options& o, const std::string& g_arg, const std::string& f_arg) {
  Rig rig = parse_rig(o.rig);
  std::string gt = input(g_arg), ft = input(f_arg);
  Morphism g = parse_morphism(gt, rig), f = parse_morphism(ft, rig);
  std::cout << to_string(compose(g, f), morphism_name(gt) + "_" + morphism_name(ft)) << "\n";
  return kOk;
}

int cmd_decompose(const Options& o, const std::string& arg, bool trace) {
  std::string text = input(arg);
  Morphism f = parse_morphism(text, parse_rig(o.rig));
  DecompositionTrace tr;
  GenExpr e = decompose(f, trace ? &tr : nullptr);
  std::cout << to_string(e) << "\n";
  if (trace) {
    for (const TraceStep& s : tr.steps) std::cout << "step " << tag_name(s.tag) << " " << to_string(s.expr) << "\n";
  }
  if (o.check) {
    Morphism back = evaluate(e, f.rig());
    if (back == f) {
      std::cout << "check: OK\n";
    } else {
      std::cout << "check: FAIL\n" << to_string(back, morphism_name(text)) << "\n";
      return kVerification;
    }
  }
  return kOk;
}

int cmd_evaluate(const Options& o, const std::string& arg) {
  GenExpr e = parse_genexpr(input(arg));
  std::cout << to_string(evaluate(e, parse_rig(o.rig)), "e") << "\n";
  return kOk;
}

int cmd_kappa(const Options& o, const std::string& text) {
  Cotree t = parse_object(text);
  KappaGraph k = kappa(realize(t));
  const Graph& g = k.cl.graph;
  std::vector<std::string> labels;
  for (int v = 0; v < g.size(); ++v) labels.push_back(k.vertex_label(v));
  if (o.format == "dot") {
    std::cout << to_dot(g, labels, "kappa");
    return kOk;
  }
  std::cout << "vertices " << g.size() << "\n";
  for (int v = 0; v < g.size(); ++v) std::cout << "  " << v + 1 << " " << labels[static_cast<std::size_t>(v)] << "\n";
  std::cout << "edges " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) std::cout << "  " << u + 1 << " -- " << v + 1 << "\n";
  return kOk;
}

int cmd_cotree(const Options&, const std::string& arg) {
  std::string text = input(arg);
  Graph g = looks_like_graph(text) ? parse_graph(text) : realize(parse_object(text));
  CotreeDecomposition d = cotree_decompose(g);
  std::cout << to_string(d.cotree) << "\n";
  std::cout << "leaves:";
  for (int v : d.perm) std::cout << " " << v + 1;
  std::cout << "\n";
  return kOk;
}

int cmd_hom(const Options&, const std::string& a_arg, const std::string& b_arg) {
  Cotree a = parse_object(input(a_arg)), b = parse_object(input(b_arg));
  HomSet h = enumerate_hom(a, b);
  std::cout << h.morphisms.size() << "\n";
  for (std::size_t i = 0; i < h.morphisms.size(); ++i) {
    std::cout << to_string(h.morphisms[i], "f" + std::to_string(i + 1)) << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& o, int pullback_vertices) {
  AxiomReport report = check_tangent_axioms(2, 2, o.max_vertices);
  report.add(check_foundational_pullbacks(pullback_vertices));
  std::cout << (o.format == "lines" ? report.lines() : report.text());
  return report.all_pass() ? kOk : kVerification;
}

int cmd_dot(const Options& o, const std::string& arg, bool want_kappa) {
  std::string text = input(arg);
  if (looks_like_morphism(text)) {
    std::cout << morphism_dot(parse_morphism(text, parse_rig(o.rig)), morphism_name(text));
    return kOk;
  }
  if (want_kappa) {
    Options k = o;
    k.format = "dot";
    return cmd_kappa(k, text);
  }
  Graph g = looks_like_graph(text) ? parse_graph(text) : realize(parse_object(text));
  std::cout << to_dot(g, {}, "G");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil_1 kernel: objects, morphisms, decomposition and axiom checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--rig", o.rig, "Coefficient rig")->check(CLI::IsMember({"bool2", "nat"}));
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "dot", "lines"}));
  app.add_option("--max-vertices", o.max_vertices, "Sweep bound for verify")->check(CLI::Range(0, 4));
  app.add_flag("--check", o.check, "Re-evaluate and compare after decompose");

  std::string a, b;
  bool trace = false, want_kappa = false;
  int pullback_vertices = 2;

  auto* parse = app.add_subcommand("parse", "Parse an object, morphism, expression or graph and print it back");
  parse->add_option("input", a)->required();
  auto* validate = app.add_subcommand("validate", "Validate a morphism");
  validate->add_option("morphism", a)->required();
  auto* comp = app.add_subcommand("compose", "Print g . f");
  comp->add_option("g", a)->required();
  comp->add_option("f", b)->required();
  auto* dec = app.add_subcommand("decompose", "Decompose a morphism into generators");
  dec->add_option("morphism", a)->required();
  dec->add_flag("--trace", trace, "Print the decomposition steps");
  auto* ev = app.add_subcommand("evaluate", "Evaluate a generator expression");
  ev->add_option("expr", a)->required();
  auto* kap = app.add_subcommand("kappa", "kappa(G_A) = cl(ind+(G_A))");
  kap->add_option("object", a)->required();
  auto* cot = app.add_subcommand("cotree", "Cotree of a graph (`n : u-v ...`) or object");
  cot->add_option("graph", a)->required();
  auto* hom = app.add_subcommand("hom", "Enumerate Hom(A, B) over Bool2");
  hom->add_option("A", a)->required();
  hom->add_option("B", b)->required();
  auto* ver = app.add_subcommand("verify", "Run the axiom suite");
  ver->add_option("--pullback-vertices", pullback_vertices, "Bound on B, A1, A2 in the pullback sweep")
      ->check(CLI::Range(0, 2));
  auto* dot = app.add_subcommand("dot", "Graphviz output for an object, kappa or a morphism");
  dot->add_option("input", a)->required();
  dot->add_flag("--kappa", want_kappa, "Render kappa(G_A) instead of G_A");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kSyntax;
  }

  try {
    if (*parse) return cmd_parse(o, a);
    if (*validate) return cmd_validate(o, a);
    if (*comp) return cmd_compose(o, a, b);
    if (*dec) return cmd_decompose(o, a, trace);
    if (*ev) return cmd_evaluate(o, a);
    if (*kap) return cmd_kappa(o, input(a));
    if (*cot) return cmd_cotree(o, a);
    if (*hom) return cmd_hom(o, a, b);
    if (*ver) return cmd_verify(o, pullback_vertices);
    if (*dot) return cmd_dot(o, a, want_kappa);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSyntax;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTooLarge;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

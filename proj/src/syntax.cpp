#include "weil/syntax.hpp"

#include <cctype>

#include "weil/errors.hpp"

namespace weil {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Raw lookahead, no whitespace skipping.
  char raw(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  bool accept(std::string_view lit) {
    skip_ws();
    if (text_.substr(pos_, lit.size()) != lit) return false;
    for (std::size_t i = 0; i < lit.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail("'" + std::string(lit) + "'");
  }

  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  bool digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::uint64_t number() {
    if (!digit()) fail("a number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int d = text_[pos_] - '0';
      if (v > (UINT64_MAX - static_cast<std::uint64_t>(d)) / 10) fail("a smaller number");
      v = v * 10 + static_cast<std::uint64_t>(d);
      advance();
    }
    return v;
  }

  std::string word() {
    skip_ws();
    std::string out;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'') {
        out += ch;
        advance();
      } else {
        break;
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& expected) {
    skip_ws();
    std::string found = "end of input";
    if (pos_ < text_.size()) {
      found = "'";
      for (std::size_t i = pos_; i < text_.size() && i < pos_ + 8 && text_[i] != '\n'; ++i) found += text_[i];
      found += "'";
    }
    throw SyntaxError(line_, col_, expected, found);
  }

  // Position of the next token.
  int line() {
    skip_ws();
    return line_;
  }
  int col() {
    skip_ws();
    return col_;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

int count(Cursor& in) {
  std::uint64_t n = in.number();
  if (n == 0 || n > static_cast<std::uint64_t>(kMaxVertices)) in.fail("a count between 1 and 63");
  return static_cast<int>(n);
}

Cotree object(Cursor& in);

Cotree atom(Cursor& in) {
  if (in.accept("(")) {
    Cotree t = object(in);
    in.expect(")");
    return t;
  }
  if (in.digit()) {
    int n = count(in);
    if (in.raw() != 'W') in.fail("'W' right after the count");
    in.expect("W");
    return Cotree::copower(n);
  }
  if (in.peek() == 'k') {
    in.expect("k");
    return Cotree::k();
  }
  if (in.peek() != 'W') in.fail("an object");
  in.expect("W");
  if (in.accept("^")) return Cotree::power(count(in));
  return Cotree::w();
}

Cotree term(Cursor& in) {
  Cotree a = atom(in);
  if (in.accept("*")) return Cotree::join(a, term(in));
  return a;
}

Cotree object(Cursor& in) {
  Cotree a = term(in);
  if (in.accept("@") || in.accept("(x)")) return Cotree::disjoint_union(a, object(in));
  return a;
}

// Generator `prefix`, `prefix i`; returns the 0-based index.
int generator(Cursor& in, char prefix, int n) {
  int line = in.line(), col = in.col();
  std::string w = in.word();
  std::string what = std::string("a generator ") + prefix + "1.." + prefix + std::to_string(n);
  if (n == 0) what = "no generator (the object is k)";
  if (w.empty() || w[0] != prefix) in.fail(what);
  if (w.size() == 1) {
    if (n != 1) throw SyntaxError(line, col, what, "'" + w + "'");
    return 0;
  }
  int i = 0;
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (!std::isdigit(static_cast<unsigned char>(w[p])) || i > kMaxVertices) {
      throw SyntaxError(line, col, what, "'" + w + "'");
    }
    i = i * 10 + (w[p] - '0');
  }
  if (i < 1 || i > n) throw SyntaxError(line, col, what, "'" + w + "'");
  return i - 1;
}

// Target generators are normally y's; x is accepted as well, as in `x |-> 2 x`.
bool at_target_generator(Cursor& in) {
  char ch = in.peek();
  return ch == 'y' || ch == 'x';
}

Polynomial polynomial(Cursor& in, const Graph& ambient, Rig rig) {
  int n = ambient.size();
  std::vector<Term> terms;
  do {
    Coeff c = 1;
    bool has_coeff = false;
    if (in.digit()) {
      c = in.number();
      has_coeff = true;
    }
    VertexSet mono = 0;
    bool vanished = false;
    int factors = 0;
    while (at_target_generator(in)) {
      int v = generator(in, in.peek(), n);
      VertexSet bit = VertexSet{1} << v;
      if ((mono & bit) || (ambient.neighbours(v) & mono)) vanished = true;
      mono |= bit;
      ++factors;
    }
    if (factors == 0) {
      if (!has_coeff) in.fail("a term");
      if (c != 0) throw ValidationError("image polynomials have no constant term");
      continue;
    }
    if (!valid(c, rig)) {
      throw ValidationError("coefficient " + std::to_string(c) + " is not in " + std::string(rig_name(rig)));
    }
    if (!vanished) terms.push_back({mono, c});
  } while (in.accept("+"));
  return Polynomial::from_terms(0, terms, rig);
}

}  // namespace

Cotree parse_object(std::string_view text) {
  Cursor in(text);
  Cotree t = object(in);
  in.expect_end();
  return t;
}

namespace {

struct Header {
  std::string name;
  Cotree source;
  Cotree target;
};

Header header(Cursor& in) {
  Header h;
  h.name = in.word();
  if (h.name.empty() || !std::isalpha(static_cast<unsigned char>(h.name[0]))) in.fail("a morphism name");
  in.expect(":");
  h.source = object(in);
  in.expect("->");
  h.target = object(in);
  return h;
}

}  // namespace

std::string morphism_name(std::string_view text) {
  Cursor in(text);
  return header(in).name;
}

Morphism parse_morphism(std::string_view text, Rig rig) {
  Cursor in(text);
  Header h = header(in);
  WeilObject a(h.source), b(h.target);
  int n = a.generators();
  std::vector<Polynomial> images(static_cast<std::size_t>(n), Polynomial(rig));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  while (in.accept(";")) {
    if (in.at_end()) break;
    int line = in.line(), col = in.col();
    int i = generator(in, 'x', n);
    if (seen[static_cast<std::size_t>(i)]) {
      throw SyntaxError(line, col, "one clause per generator", "a second clause for " + generator_name("x", i, n));
    }
    seen[static_cast<std::size_t>(i)] = true;
    in.expect("|->");
    images[static_cast<std::size_t>(i)] = polynomial(in, b.graph(), rig);
  }
  in.expect_end();
  return Morphism(a, b, std::move(images), rig);
}

namespace {

GenExpr genexpr(Cursor& in);

std::pair<GenExpr, GenExpr> two_args(Cursor& in) {
  in.expect("(");
  GenExpr a = genexpr(in);
  in.expect(",");
  GenExpr b = genexpr(in);
  in.expect(")");
  return {a, b};
}

GenExpr genexpr(Cursor& in) {
  int line = in.line(), col = in.col();
  std::string w = in.word();
  if (w == "eps") return GenExpr::eps();
  if (w == "eta") return GenExpr::eta();
  if (w == "plus") return GenExpr::plus();
  if (w == "l") return GenExpr::l();
  if (w == "c") return GenExpr::c();
  if (w == "id") {
    in.expect("(");
    Cotree t = object(in);
    in.expect(")");
    return GenExpr::id(t);
  }
  if (w == "ghat") {
    in.expect("(");
    std::uint64_t r = in.number();
    if (r > 1000) in.fail("r <= 1000");
    in.expect(")");
    return GenExpr::ghat(static_cast<int>(r));
  }
  if (w == "proj") {
    in.expect("(");
    Cotree t = object(in);
    in.expect(",");
    std::uint64_t side = in.number();
    if (side != 1 && side != 2) in.fail("side 1 or 2");
    in.expect(")");
    return GenExpr::proj(t, static_cast<int>(side));
  }
  if (w == "tensor") {
    auto [a, b] = two_args(in);
    return GenExpr::tensor(a, b);
  }
  if (w == "comp") {
    auto [a, b] = two_args(in);
    return GenExpr::compose(a, b);
  }
  if (w == "pair") {
    Cotree left, right;
    if (in.accept("[")) {
      left = object(in);
      in.expect(",");
      right = object(in);
      in.expect("]");
    }
    auto [a, b] = two_args(in);
    return GenExpr::pair(a, b, left, right);
  }
  const char* expected = "eps, eta, plus, l, c, id, ghat, proj, tensor, comp or pair";
  if (w.empty()) in.fail(expected);
  throw SyntaxError(line, col, expected, "'" + w + "'");
}

}  // namespace

GenExpr parse_genexpr(std::string_view text) {
  Cursor in(text);
  GenExpr e = genexpr(in);
  in.expect_end();
  return e;
}

Graph parse_graph(std::string_view text) {
  Cursor in(text);
  std::uint64_t n = in.number();
  if (n > static_cast<std::uint64_t>(kMaxVertices)) in.fail("at most 63 vertices");
  Graph g(static_cast<int>(n));
  if (in.accept(":")) {
    while (in.digit()) {
      int line = in.line(), col = in.col();
      std::uint64_t u = in.number();
      in.expect("-");
      std::uint64_t v = in.number();
      if (u < 1 || v < 1 || u > n || v > n || u == v) {
        throw SyntaxError(line, col, "an edge u-v with distinct u, v in 1.." + std::to_string(n),
                          std::to_string(u) + "-" + std::to_string(v));
      }
      g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      in.accept(",");
    }
  }
  in.expect_end();
  return g;
}

std::string graph_to_string(const Graph& g) {
  std::string out = std::to_string(g.size());
  auto es = g.edges();
  if (!es.empty()) out += " :";
  for (auto [u, v] : es) out += " " + std::to_string(u + 1) + "-" + std::to_string(v + 1);
  return out;
}

}  // namespace weil

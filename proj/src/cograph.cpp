#include "weil/cograph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "weil/errors.hpp"

namespace weil {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(set_size(s)));
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

std::string set_to_string(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : members(s)) {
    if (!first) out += ',';
    out += std::to_string(v + 1);
    first = false;
  }
  return out + "}";
}

Graph::Graph(int n) {
  if (n < 0) throw ValidationError("negative vertex count");
  if (n > kMaxVertices) {
    throw TooLarge("graph with " + std::to_string(n) + " vertices exceeds the limit of " +
                   std::to_string(kMaxVertices));
  }
  adj_.assign(static_cast<std::size_t>(n), 0);
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

bool Graph::has_edges() const noexcept {
  return std::any_of(adj_.begin(), adj_.end(), [](VertexSet s) { return s != 0; });
}

int Graph::edge_count() const noexcept {
  int twice = 0;
  for (VertexSet s : adj_) twice += set_size(s);
  return twice / 2;
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw ValidationError("edge endpoint out of range");
  if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u + 1));
  adj_[u] |= VertexSet{1} << v;
  adj_[v] |= VertexSet{1} << u;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) {
    for (int v : members(adj_[u] >> (u + 1))) out.emplace_back(u, u + 1 + v);
  }
  return out;
}

Graph Graph::induced(VertexSet s) const {
  std::vector<int> vs = members(s);
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (adjacent(vs[i], vs[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return h;
}

Graph combine(const Graph& g, const Graph& h, bool cross) {
  const int n = g.size();
  Graph out(n + h.size());
  const VertexSet gall = g.all(), hall = h.all() << n;
  for (int u = 0; u < n; ++u) out.adj_[u] = g.adj_[u] | (cross ? hall : 0);
  for (int v = 0; v < h.size(); ++v) out.adj_[n + v] = (h.adj_[v] << n) | (cross ? gall : 0);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) { return combine(g, h, false); }
Graph join(const Graph& g, const Graph& h) { return combine(g, h, true); }

Graph complement(const Graph& g) {
  Graph out(g.size());
  for (int u = 0; u < g.size(); ++u) {
    for (int v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

bool is_independent(const Graph& g, VertexSet s) {
  for (int v : members(s)) {
    if (g.neighbours(v) & s) return false;
  }
  return true;
}

bool is_clique(const Graph& g, VertexSet s) {
  for (int v : members(s)) {
    if ((s & ~g.neighbours(v) & ~(VertexSet{1} << v)) != 0) return false;
  }
  return true;
}

std::vector<VertexSet> independent_sets(const Graph& g, bool include_empty) {
  std::vector<VertexSet> out;
  // Extend by vertices above the current maximum that have no neighbour in the set.
  std::function<void(int, VertexSet, VertexSet)> grow = [&](int from, VertexSet cur, VertexSet blocked) {
    for (int v = from; v < g.size(); ++v) {
      VertexSet bit = VertexSet{1} << v;
      if (blocked & bit) continue;
      out.push_back(cur | bit);
      grow(v + 1, cur | bit, blocked | g.neighbours(v));
    }
  };
  if (include_empty) out.push_back(0);
  grow(0, 0, 0);
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

std::vector<VertexSet> cliques(const Graph& g) { return independent_sets(complement(g), true); }

std::vector<VertexSet> components(const Graph& g, VertexSet s) {
  std::vector<VertexSet> out;
  VertexSet left = s;
  while (left != 0) {
    VertexSet comp = left & (~left + 1);
    VertexSet frontier = comp;
    while (frontier != 0) {
      VertexSet next = 0;
      for (int v : members(frontier)) next |= g.neighbours(v);
      next &= s & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

DerivedGraph ind_plus(const Graph& g) {
  DerivedGraph d;
  d.labels = independent_sets(g, false);
  d.graph = Graph(static_cast<int>(d.labels.size()));
  std::vector<VertexSet> reach(d.labels.size());
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    VertexSet r = d.labels[i];
    for (int v : members(d.labels[i])) r |= g.neighbours(v);
    reach[i] = r;
  }
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < d.labels.size(); ++j) {
      if (reach[i] & d.labels[j]) d.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return d;
}

DerivedGraph cl_graph(const Graph& g) {
  DerivedGraph d;
  d.labels = cliques(g);
  d.graph = Graph(static_cast<int>(d.labels.size()));
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < d.labels.size(); ++j) {
      if (is_clique(g, d.labels[i] | d.labels[j])) d.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return d;
}

std::vector<VertexSet> KappaGraph::vertex_sets(int v) const {
  std::vector<VertexSet> out;
  for (int i : members(cl.labels[v])) out.push_back(ind.labels[i]);
  return out;
}

std::string KappaGraph::vertex_label(int v) const {
  std::string out = "{";
  bool first = true;
  for (VertexSet s : vertex_sets(v)) {
    if (!first) out += ',';
    out += set_to_string(s);
    first = false;
  }
  return out + "}";
}

KappaGraph kappa(const Graph& g) {
  KappaGraph k;
  k.ind = ind_plus(g);
  k.cl = cl_graph(k.ind.graph);
  return k;
}

bool KappaCliques::compatible(std::size_t i, std::size_t j) const {
  return is_clique(ind.graph, cliques[i] | cliques[j]);
}

KappaCliques kappa_cliques(const Graph& g) {
  KappaCliques k;
  k.ind = ind_plus(g);
  k.cliques = cliques(k.ind.graph);
  return k;
}

std::uint64_t count_graph_maps(const Graph& source, const KappaCliques& target) {
  const std::size_t m = target.cliques.size();
  std::vector<std::size_t> assign(static_cast<std::size_t>(source.size()));
  std::function<std::uint64_t(int)> count = [&](int v) -> std::uint64_t {
    if (v == source.size()) return 1;
    VertexSet earlier = source.neighbours(v) & ((VertexSet{1} << v) - 1);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < m; ++c) {
      bool ok = true;
      for (int u : members(earlier)) {
        if (!target.compatible(assign[u], c)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assign[v] = c;
      total += count(v + 1);
    }
    return total;
  };
  return count(0);
}

struct Cotree::Node {
  Kind kind;
  Cotree left;
  Cotree right;
  int size;
  mutable std::shared_ptr<const Graph> graph;  // filled on first realize
};

Cotree::Cotree() : node_(nullptr) {}

Cotree::Cotree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Cotree Cotree::w() {
  static const auto node = std::make_shared<const Node>(Node{Kind::W, Cotree(), Cotree(), 1, nullptr});
  return Cotree(node);
}

Cotree Cotree::join(const Cotree& a, const Cotree& b) {
  if (a.kind() == Kind::K) return b;
  if (b.kind() == Kind::K) return a;
  return Cotree(std::make_shared<const Node>(Node{Kind::Join, a, b, a.size() + b.size(), nullptr}));
}

Cotree Cotree::disjoint_union(const Cotree& a, const Cotree& b) {
  if (a.kind() == Kind::K) return b;
  if (b.kind() == Kind::K) return a;
  return Cotree(std::make_shared<const Node>(Node{Kind::Union, a, b, a.size() + b.size(), nullptr}));
}

Cotree Cotree::power(int n) {
  Cotree t;
  for (int i = 0; i < n; ++i) t = join(w(), t);
  return t;
}

Cotree Cotree::copower(int n) {
  Cotree t;
  for (int i = 0; i < n; ++i) t = disjoint_union(w(), t);
  return t;
}

Cotree::Kind Cotree::kind() const noexcept { return node_ ? node_->kind : Kind::K; }

const Cotree& Cotree::left() const {
  if (!node_ || node_->kind == Kind::W) throw std::logic_error("cotree leaf has no children");
  return node_->left;
}

const Cotree& Cotree::right() const {
  if (!node_ || node_->kind == Kind::W) throw std::logic_error("cotree leaf has no children");
  return node_->right;
}

int Cotree::size() const noexcept { return node_ ? node_->size : 0; }

namespace {

void flatten(const Cotree& t, Cotree::Kind kind, std::vector<Cotree>& out) {
  if (t.kind() == Cotree::Kind::K) return;
  if (t.kind() == kind) {
    flatten(t.left(), kind, out);
    flatten(t.right(), kind, out);
    return;
  }
  out.push_back(t);
}

}  // namespace

std::vector<Cotree> Cotree::components() const {
  std::vector<Cotree> out;
  flatten(*this, Kind::Union, out);
  return out;
}

std::vector<Cotree> Cotree::factors() const {
  std::vector<Cotree> out;
  flatten(*this, Kind::Join, out);
  return out;
}

std::optional<int> Cotree::chain_length(Kind kind) const {
  if (this->kind() == Kind::W) return 1;
  if (this->kind() != kind || left().kind() != Kind::W) return std::nullopt;
  auto rest = right().chain_length(kind);
  if (!rest) return std::nullopt;
  return *rest + 1;
}

bool Cotree::operator==(const Cotree& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || size() != other.size()) return false;
  if (kind() == Kind::K || kind() == Kind::W) return true;
  return left() == other.left() && right() == other.right();
}

Cotree tensor_all(const std::vector<Cotree>& parts) {
  Cotree t;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) t = Cotree::disjoint_union(*it, t);
  return t;
}

Cotree product_all(const std::vector<Cotree>& parts) {
  Cotree t;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) t = Cotree::join(*it, t);
  return t;
}

std::shared_ptr<const Graph> Cotree::graph() const {
  if (!node_) {
    static const auto empty = std::make_shared<const Graph>(0);
    return empty;
  }
  if (!node_->graph) {
    switch (node_->kind) {
      case Kind::W:
        node_->graph = std::make_shared<const Graph>(1);
        break;
      case Kind::Join:
        node_->graph = std::make_shared<const Graph>(weil::join(*left().graph(), *right().graph()));
        break;
      default:
        node_->graph = std::make_shared<const Graph>(weil::disjoint_union(*left().graph(), *right().graph()));
        break;
    }
  }
  return node_->graph;
}

Graph realize(const Cotree& t) { return *t.graph(); }

namespace {

enum class Prec { Union, Join, Atom };

Prec precedence(const Cotree& t) {
  if (t.kind() == Cotree::Kind::Union && !t.chain_length(Cotree::Kind::Union)) return Prec::Union;
  if (t.kind() == Cotree::Kind::Join && !t.chain_length(Cotree::Kind::Join)) return Prec::Join;
  return Prec::Atom;
}

std::string operand(const Cotree& t, Prec min) {
  std::string s = to_string(t);
  return precedence(t) < min ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Cotree& t) {
  switch (t.kind()) {
    case Cotree::Kind::K:
      return "k";
    case Cotree::Kind::W:
      return "W";
    case Cotree::Kind::Union:
      if (auto n = t.chain_length(Cotree::Kind::Union)) return std::to_string(*n) + "W";
      return operand(t.left(), Prec::Join) + " @ " + operand(t.right(), Prec::Union);
    case Cotree::Kind::Join:
      if (auto n = t.chain_length(Cotree::Kind::Join)) return "W^" + std::to_string(*n);
      return operand(t.left(), Prec::Atom) + " * " + operand(t.right(), Prec::Join);
  }
  return "k";
}

std::optional<std::vector<int>> find_induced_p4(const Graph& g, VertexSet within) {
  std::vector<int> vs = members(within);
  for (int b : vs) {
    for (int c : members(g.neighbours(b) & within)) {
      // Path a-b-c-d: a ~ b only, d ~ c only.
      VertexSet as = g.neighbours(b) & ~g.neighbours(c) & within & ~(VertexSet{1} << c);
      VertexSet ds = g.neighbours(c) & ~g.neighbours(b) & within & ~(VertexSet{1} << b);
      for (int a : members(as)) {
        VertexSet ok = ds & ~g.neighbours(a) & ~(VertexSet{1} << a);
        if (ok != 0) {
          int d = std::countr_zero(ok);
          if (a < d) return std::vector<int>{a, b, c, d};
          return std::vector<int>{d, c, b, a};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

struct Piece {
  Cotree tree;
  std::vector<int> leaves;
  VertexSet set;
};

Piece decompose_set(const Graph& g, const Graph& gc, VertexSet s) {
  if (set_size(s) == 1) return {Cotree::w(), {std::countr_zero(s)}, s};
  std::vector<VertexSet> parts = components(g, s);
  bool is_union = parts.size() > 1;
  if (!is_union) {
    parts = components(gc, s);
    if (parts.size() == 1) {
      auto p4 = find_induced_p4(g, s);
      std::string path;
      if (p4) {
        for (std::size_t i = 0; i < p4->size(); ++i) {
          if (i) path += '-';
          path += std::to_string((*p4)[i] + 1);
        }
      }
      throw NotACograph(path);
    }
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](VertexSet a, VertexSet b) { return set_size(a) < set_size(b); });
  std::vector<Piece> pieces;
  for (VertexSet p : parts) pieces.push_back(decompose_set(g, gc, p));
  Piece out = std::move(pieces.back());
  for (std::size_t i = pieces.size() - 1; i-- > 0;) {
    Piece& left = pieces[i];
    out.tree = is_union ? Cotree::disjoint_union(left.tree, out.tree) : Cotree::join(left.tree, out.tree);
    left.leaves.insert(left.leaves.end(), out.leaves.begin(), out.leaves.end());
    out.leaves = std::move(left.leaves);
    out.set |= left.set;
  }
  return out;
}

}  // namespace

CotreeDecomposition cotree_decompose(const Graph& g) {
  if (g.size() == 0) return {Cotree::k(), {}};
  Piece p = decompose_set(g, complement(g), g.all());
  return {p.tree, p.leaves};
}

std::string to_dot(const Graph& g, const std::vector<std::string>& labels, const std::string& name) {
  std::ostringstream os;
  os << "graph " << (name.empty() ? "" : name + " ") << "{\n";
  for (int v = 0; v < g.size(); ++v) {
    os << "  " << v + 1;
    if (!labels.empty()) os << " [label=\"" << labels[v] << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u + 1 << " -- " << v + 1 << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace weil

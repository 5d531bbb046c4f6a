#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weil {

// Vertex subsets are bitmasks: bit i is vertex i (printed as label i + 1).
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 63;

inline int set_size(VertexSet s) noexcept { return std::popcount(s); }

// Canonical order on vertex sets: by size, then lexicographically on the
// sorted member list.
inline bool set_less(VertexSet a, VertexSet b) noexcept {
  int sa = set_size(a), sb = set_size(b);
  if (sa != sb) return sa < sb;
  if (a == b) return false;
  VertexSet diff = a ^ b;
  return (a & diff & (~diff + 1)) != 0;
}

std::vector<int> members(VertexSet s);

// The members of s in increasing order, without allocating.
class Bits {
 public:
  struct iterator {
    VertexSet rest;
    int operator*() const noexcept { return std::countr_zero(rest); }
    iterator& operator++() noexcept {
      rest &= rest - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const noexcept { return rest != o.rest; }
  };
  explicit Bits(VertexSet s) noexcept : s_(s) {}
  iterator begin() const noexcept { return {s_}; }
  iterator end() const noexcept { return {0}; }

 private:
  VertexSet s_;
};

// "{1,3}" style rendering with 1-based labels.
std::string set_to_string(VertexSet s);

// Finite simple graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int size() const noexcept { return static_cast<int>(adj_.size()); }
  VertexSet all() const noexcept { return size() == 0 ? 0 : (~VertexSet{0} >> (64 - size())); }
  VertexSet neighbours(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  bool has_edges() const noexcept;
  int edge_count() const noexcept;

  void add_edge(int u, int v);

  // Sorted (u < v) pairs, 0-based.
  std::vector<std::pair<int, int>> edges() const;

  // Induced subgraph on the members of s, relabelled in increasing order.
  Graph induced(VertexSet s) const;

  bool operator==(const Graph&) const = default;

 private:
  friend Graph combine(const Graph& g, const Graph& h, bool cross);
  std::vector<VertexSet> adj_;
};

Graph disjoint_union(const Graph& g, const Graph& h);
Graph join(const Graph& g, const Graph& h);
Graph complement(const Graph& g);

bool is_independent(const Graph& g, VertexSet s);
bool is_clique(const Graph& g, VertexSet s);

// All independent sets (resp. cliques, including the empty one) in canonical order.
std::vector<VertexSet> independent_sets(const Graph& g, bool include_empty);
std::vector<VertexSet> cliques(const Graph& g);

// Connected components of the subgraph induced on s, ordered by their least vertex.
std::vector<VertexSet> components(const Graph& g, VertexSet s);

// A graph whose vertices stand for vertex sets of some base graph.
struct DerivedGraph {
  Graph graph;
  std::vector<VertexSet> labels;
};

// Vertices: non-empty independent sets.  Distinct U1, U2 are adjacent when
// they overlap or some x in U1, y in U2 are adjacent in g (their monomial
// product vanishes).
DerivedGraph ind_plus(const Graph& g);

// Vertices: all cliques including the empty one.  Distinct cliques are
// adjacent when their union is again a clique.  Throws TooLarge when the
// clique count exceeds kMaxVertices.
DerivedGraph cl_graph(const Graph& g);

// kappa(g) = cl(ind_plus(g)).  `cl.labels` are masks over the vertices of
// `ind`, so a kappa vertex is a set of independent sets of g.
struct KappaGraph {
  DerivedGraph ind;
  DerivedGraph cl;

  std::vector<VertexSet> vertex_sets(int v) const;
  std::string vertex_label(int v) const;
};

KappaGraph kappa(const Graph& g);

// Kappa data without the kMaxVertices cap on the number of cliques.  Used for
// counting graph maps into kappa(g).
struct KappaCliques {
  DerivedGraph ind;
  std::vector<VertexSet> cliques;  // masks over ind vertices, canonical order

  // Adjacent-or-equal in kappa(g): the union is a clique of ind_plus(g).
  bool compatible(std::size_t i, std::size_t j) const;
};

KappaCliques kappa_cliques(const Graph& g);

// Number of vertex maps m: G_a -> kappa(G_b) sending each edge of G_a to an
// edge or a single vertex of kappa(G_b).
std::uint64_t count_graph_maps(const Graph& source, const KappaCliques& target);

// Expression tree over {K, W, Join, Union}.  K is the empty graph, W the
// one-point graph.  Construction normalizes K away inside Join/Union, so K
// only ever appears as a whole tree.  Realizing a cotree labels the vertices
// 0..n-1 in left-to-right leaf order.
class Cotree {
 public:
  enum class Kind : std::uint8_t { K, W, Join, Union };

  Cotree();  // K

  static Cotree k() { return Cotree(); }
  static Cotree w();
  static Cotree join(const Cotree& a, const Cotree& b);
  static Cotree disjoint_union(const Cotree& a, const Cotree& b);
  // W^n and nW, right-nested.
  static Cotree power(int n);
  static Cotree copower(int n);

  Kind kind() const noexcept;
  const Cotree& left() const;
  const Cotree& right() const;
  int size() const noexcept;

  // Flattened children of nested Union (resp. Join) nodes, left to right.
  // K yields no components; any other non-Union node is its own single component.
  std::vector<Cotree> components() const;
  std::vector<Cotree> factors() const;

  // True when the tree is a right-nested chain of n >= 1 W leaves under
  // `kind` (a lone W counts for both kinds).
  std::optional<int> chain_length(Kind kind) const;

  bool operator==(const Cotree& other) const;

  // The realized graph, computed once per node.  Not synchronized.
  std::shared_ptr<const Graph> graph() const;

 private:
  struct Node;
  explicit Cotree(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Cotree tensor_all(const std::vector<Cotree>& parts);
Cotree product_all(const std::vector<Cotree>& parts);

Graph realize(const Cotree& t);

// Object notation: `k`, `W`, `nW`, `W^n`, `*` for join and `@` for union,
// with `*` binding tighter.  Both operators are right-associative.
std::string to_string(const Cotree& t);

struct CotreeDecomposition {
  Cotree cotree;
  // Leaf i of the cotree (left-to-right) is vertex perm[i] of the input graph.
  std::vector<int> perm;
};

// Throws NotACograph when g contains an induced P4.
CotreeDecomposition cotree_decompose(const Graph& g);

// Some induced P4 (as a vertex sequence along the path), if one exists.
std::optional<std::vector<int>> find_induced_p4(const Graph& g, VertexSet within);

// Graphviz output.  Nodes are numbered 1..n; `labels`, when non-empty,
// supplies one quoted label per vertex.
std::string to_dot(const Graph& g, const std::vector<std::string>& labels = {},
                   const std::string& name = "");

}  // namespace weil

#include "weil/genexpr.hpp"

#include <unordered_map>

#include "weil/errors.hpp"

namespace weil {

struct GenExpr::Node {
  Kind kind;
  Cotree obj;
  Cotree obj2;
  int num = 0;
  GenExpr a = GenExpr();
  GenExpr b = GenExpr();
};

GenExpr::GenExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

GenExpr GenExpr::make(Kind kind, const Cotree& obj, const Cotree& obj2, int num, const GenExpr& a,
                      const GenExpr& b) {
  return GenExpr(std::make_shared<const Node>(Node{kind, obj, obj2, num, a, b}));
}

GenExpr GenExpr::id(const Cotree& obj) { return make(Kind::Id, obj); }

GenExpr GenExpr::eps() {
  static const GenExpr e = make(Kind::Eps);
  return e;
}

GenExpr GenExpr::eta() {
  static const GenExpr e = make(Kind::Eta);
  return e;
}

GenExpr GenExpr::plus() {
  static const GenExpr e = make(Kind::Plus);
  return e;
}

GenExpr GenExpr::l() {
  static const GenExpr e = make(Kind::L);
  return e;
}

GenExpr GenExpr::c() {
  static const GenExpr e = make(Kind::C);
  return e;
}

GenExpr GenExpr::ghat(int r) {
  if (r < 0) throw ValidationError("ghat needs r >= 0");
  return make(Kind::Ghat, Cotree(), Cotree(), r);
}

GenExpr GenExpr::proj(const Cotree& prod, int side) {
  return make(Kind::Proj, prod, Cotree(), side);
}

GenExpr GenExpr::tensor(const GenExpr& a, const GenExpr& b) {
  return make(Kind::Tensor, Cotree(), Cotree(), 0, a, b);
}

GenExpr GenExpr::compose(const GenExpr& outer, const GenExpr& inner) {
  return make(Kind::Compose, Cotree(), Cotree(), 0, outer, inner);
}

GenExpr GenExpr::pair(const GenExpr& a, const GenExpr& b, const Cotree& left, const Cotree& right) {
  return make(Kind::Pair, left, right, 0, a, b);
}

GenExpr::Kind GenExpr::kind() const noexcept { return node_->kind; }
const Cotree& GenExpr::object() const { return node_->obj; }
const Cotree& GenExpr::right_object() const { return node_->obj2; }
int GenExpr::number() const { return node_->num; }
const GenExpr& GenExpr::first() const { return node_->a; }
const GenExpr& GenExpr::second() const { return node_->b; }

bool GenExpr::operator==(const GenExpr& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& x = *node_;
  const Node& y = *other.node_;
  if (x.kind != y.kind || x.num != y.num || !(x.obj == y.obj) || !(x.obj2 == y.obj2)) return false;
  switch (x.kind) {
    case Kind::Tensor:
    case Kind::Compose:
    case Kind::Pair:
      return x.a == y.a && x.b == y.b;
    default:
      return true;
  }
}

GenExpr tensor_all(const std::vector<GenExpr>& parts) {
  if (parts.empty()) return GenExpr::id(Cotree::k());
  GenExpr e = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) e = GenExpr::tensor(parts[i], e);
  return e;
}

namespace {

// Location of a node, spelled out only when an error needs it.
struct Path {
  const Path* parent = nullptr;
  const char* step = nullptr;

  std::string str() const { return parent ? parent->str() + "." + step : "$"; }
};

bool same_object(const Cotree& a, const Cotree& b) { return a == b || realize(a) == realize(b); }

// Splits `t` into L (x) middle (x) R, or returns false.
bool split_middle(const Cotree& t, const Cotree& l, const Cotree& r, Cotree& middle) {
  std::vector<Cotree> comps = t.components();
  const int nl = l.size(), nr = r.size(), n = t.size();
  // the L and R parts must be whole components
  std::size_t first = 0, last = comps.size();
  for (int seen = 0; seen < nl; ++first) {
    if (first == comps.size()) return false;
    seen += comps[first].size();
    if (seen > nl) return false;
  }
  for (int seen = 0; seen < nr; --last) {
    if (last == first) return false;
    seen += comps[last - 1].size();
    if (seen > nr) return false;
  }
  const Graph& g = *t.graph();
  const VertexSet lmask = nl == 0 ? 0 : (~VertexSet{0} >> (64 - nl));
  const VertexSet rmask = nr == 0 ? 0 : (~VertexSet{0} >> (64 - nr)) << (n - nr);
  if (!(g.induced(lmask) == *l.graph()) || !(g.induced(rmask) == *r.graph())) return false;
  middle = tensor_all(std::vector<Cotree>(comps.begin() + static_cast<long>(first), comps.begin() + static_cast<long>(last)));
  return true;
}

using InferMemo = std::unordered_map<const GenExpr::Node*, Signature>;

Signature infer_node(const GenExpr& e, const Path& path, InferMemo& memo);

Signature infer_at(const GenExpr& e, const Path& path, InferMemo& memo) {
  auto it = memo.find(e.node());
  if (it != memo.end()) return it->second;
  Signature s = infer_node(e, path, memo);
  memo.emplace(e.node(), s);
  return s;
}

Signature infer_node(const GenExpr& e, const Path& path, InferMemo& memo) {
  using K = GenExpr::Kind;
  const Cotree w = Cotree::w();
  switch (e.kind()) {
    case K::Id:
      return {e.object(), e.object()};
    case K::Eps:
      return {w, Cotree::k()};
    case K::Eta:
      return {Cotree::k(), w};
    case K::Plus:
      return {Cotree::power(2), w};
    case K::L:
      return {w, Cotree::copower(2)};
    case K::C:
      return {Cotree::copower(2), Cotree::copower(2)};
    case K::Ghat:
      return {w, w};
    case K::Proj: {
      const Cotree& p = e.object();
      if (p.kind() != Cotree::Kind::Join) throw IllTyped(path.str(), "projection from " + to_string(p) + ", not a product");
      if (e.number() != 1 && e.number() != 2) throw IllTyped(path.str(), "projection side must be 1 or 2");
      return {p, e.number() == 1 ? p.left() : p.right()};
    }
    case K::Tensor: {
      Signature a = infer_at(e.first(), Path{&path, "left"}, memo);
      Signature b = infer_at(e.second(), Path{&path, "right"}, memo);
      return {Cotree::disjoint_union(a.source, b.source), Cotree::disjoint_union(a.target, b.target)};
    }
    case K::Compose: {
      Signature o = infer_at(e.first(), Path{&path, "outer"}, memo);
      Signature i = infer_at(e.second(), Path{&path, "inner"}, memo);
      if (!same_object(i.target, o.source)) {
        throw IllTyped(path.str(), "inner target " + to_string(i.target) + " does not match outer source " +
                                 to_string(o.source));
      }
      return {i.source, o.target};
    }
    case K::Pair: {
      Signature a = infer_at(e.first(), Path{&path, "first"}, memo);
      Signature b = infer_at(e.second(), Path{&path, "second"}, memo);
      if (!same_object(a.source, b.source)) {
        throw IllTyped(path.str(), "pair branches have sources " + to_string(a.source) + " and " + to_string(b.source));
      }
      Cotree p, q;
      if (!split_middle(a.target, e.object(), e.right_object(), p) ||
          !split_middle(b.target, e.object(), e.right_object(), q)) {
        throw IllTyped(path.str(), "pair branch targets " + to_string(a.target) + ", " + to_string(b.target) +
                                 " do not share the outer parts " + to_string(e.object()) + ", " +
                                 to_string(e.right_object()));
      }
      return {a.source, tensor_all({e.object(), Cotree::join(p, q), e.right_object()})};
    }
  }
  throw std::logic_error("unknown expression kind");
}

using EvalMemo = std::unordered_map<const GenExpr::Node*, Morphism>;

Morphism eval_node(const GenExpr& e, Rig rig, const Path& path, EvalMemo& memo);

Morphism eval(const GenExpr& e, Rig rig, const Path& path, EvalMemo& memo) {
  auto it = memo.find(e.node());
  if (it != memo.end()) return it->second;
  Morphism m = eval_node(e, rig, path, memo);
  memo.emplace(e.node(), m);
  return m;
}

Morphism eval_node(const GenExpr& e, Rig rig, const Path& path, EvalMemo& memo) {
  using K = GenExpr::Kind;
  switch (e.kind()) {
    case K::Id:
      return identity(WeilObject(e.object()), rig);
    case K::Eps:
      return gen::eps_w(rig);
    case K::Eta:
      return gen::eta_w(rig);
    case K::Plus:
      return gen::plus_w(rig);
    case K::L:
      return gen::l_w(rig);
    case K::C:
      return gen::c_w(rig);
    case K::Ghat:
      if (rig != Rig::Nat) throw IllTyped(path.str(), "ghat is only available over nat");
      return ghat(e.number(), rig);
    case K::Proj:
      return projection(e.object().left(), e.object().right(), e.number(), rig);
    case K::Tensor:
      return tensor(eval(e.first(), rig, Path{&path, "left"}, memo), eval(e.second(), rig, Path{&path, "right"}, memo));
    case K::Compose:
      return compose(eval(e.first(), rig, Path{&path, "outer"}, memo), eval(e.second(), rig, Path{&path, "inner"}, memo));
    case K::Pair: {
      Morphism a = eval(e.first(), rig, Path{&path, "first"}, memo);
      Morphism b = eval(e.second(), rig, Path{&path, "second"}, memo);
      Cotree p, q;
      split_middle(a.target().cotree(), e.object(), e.right_object(), p);
      split_middle(b.target().cotree(), e.object(), e.right_object(), q);
      try {
        return pair(a, b, e.object(), p, q, e.right_object());
      } catch (const TypeMismatch& err) {
        throw IllTyped(path.str(), err.what());
      }
    }
  }
  throw std::logic_error("unknown expression kind");
}

}  // namespace

Signature infer(const GenExpr& e) {
  InferMemo memo;
  return infer_at(e, Path{}, memo);
}

Morphism evaluate(const GenExpr& e, Rig rig) {
  infer(e);
  EvalMemo memo;
  return eval(e, rig, Path{}, memo);
}

GenExpr expand_ghat(const GenExpr& e) {
  using K = GenExpr::Kind;
  switch (e.kind()) {
    case K::Ghat: {
      int r = e.number();
      if (r == 0) return GenExpr::compose(GenExpr::eta(), GenExpr::eps());
      GenExpr g = GenExpr::id(Cotree::w());
      for (int n = 1; n < r; ++n) g = GenExpr::compose(GenExpr::plus(), GenExpr::pair(GenExpr::id(Cotree::w()), g));
      return g;
    }
    case K::Tensor:
      return GenExpr::tensor(expand_ghat(e.first()), expand_ghat(e.second()));
    case K::Compose:
      return GenExpr::compose(expand_ghat(e.first()), expand_ghat(e.second()));
    case K::Pair:
      return GenExpr::pair(expand_ghat(e.first()), expand_ghat(e.second()), e.object(), e.right_object());
    default:
      return e;
  }
}

std::string to_string(const GenExpr& e) {
  using K = GenExpr::Kind;
  switch (e.kind()) {
    case K::Id:
      return "id(" + to_string(e.object()) + ")";
    case K::Eps:
      return "eps";
    case K::Eta:
      return "eta";
    case K::Plus:
      return "plus";
    case K::L:
      return "l";
    case K::C:
      return "c";
    case K::Ghat:
      return "ghat(" + std::to_string(e.number()) + ")";
    case K::Proj:
      return "proj(" + to_string(e.object()) + ", " + std::to_string(e.number()) + ")";
    case K::Tensor:
      return "tensor(" + to_string(e.first()) + ", " + to_string(e.second()) + ")";
    case K::Compose:
      return "comp(" + to_string(e.first()) + ", " + to_string(e.second()) + ")";
    case K::Pair: {
      std::string head = "pair";
      if (e.object().kind() != Cotree::Kind::K || e.right_object().kind() != Cotree::Kind::K) {
        head += "[" + to_string(e.object()) + ", " + to_string(e.right_object()) + "]";
      }
      return head + "(" + to_string(e.first()) + ", " + to_string(e.second()) + ")";
    }
  }
  return "";
}

std::size_t node_count(const GenExpr& e) {
  switch (e.kind()) {
    case GenExpr::Kind::Tensor:
    case GenExpr::Kind::Compose:
    case GenExpr::Kind::Pair:
      return 1 + node_count(e.first()) + node_count(e.second());
    default:
      return 1;
  }
}

}  // namespace weil

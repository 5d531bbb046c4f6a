#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "weil/morphism.hpp"

namespace weil {

// Expressions over the generating maps.  Leaves Eps, Eta, Plus, L, C and
// Ghat are the fixed W-shaped maps; Id and Proj carry their object.
//
// Pair[L, R](e1, e2) is the map induced into the pullback L (x) (P x Q) (x) R
// of e1: X -> L (x) P (x) R and e2: X -> L (x) Q (x) R over L (x) R.  With L
// and R both k it is the ordinary pairing into a product.  P and Q are read
// off the targets of e1 and e2 after removing the components of L and R.
class GenExpr {
 public:
  enum class Kind : std::uint8_t { Id, Eps, Eta, Plus, L, C, Ghat, Proj, Tensor, Compose, Pair };

  static GenExpr id(const Cotree& obj);
  static GenExpr eps();
  static GenExpr eta();
  static GenExpr plus();
  static GenExpr l();
  static GenExpr c();
  static GenExpr ghat(int r);
  static GenExpr proj(const Cotree& prod, int side);
  static GenExpr tensor(const GenExpr& a, const GenExpr& b);
  static GenExpr compose(const GenExpr& outer, const GenExpr& inner);
  static GenExpr pair(const GenExpr& a, const GenExpr& b, const Cotree& left = Cotree::k(),
                      const Cotree& right = Cotree::k());

  Kind kind() const noexcept;
  // Id: the object.  Proj: the product.  Pair: the L part.
  const Cotree& object() const;
  // Pair: the R part.
  const Cotree& right_object() const;
  // Ghat: r.  Proj: side.
  int number() const;
  // Tensor: (left, right).  Compose: (outer, inner).  Pair: (first, second).
  const GenExpr& first() const;
  const GenExpr& second() const;

  bool operator==(const GenExpr& other) const;

  struct Node;  // implementation detail
  // Identity of the shared node; equal pointers mean the same subexpression.
  const Node* node() const noexcept { return node_.get(); }

 private:
  GenExpr() = default;
  explicit GenExpr(std::shared_ptr<const Node> node);
  static GenExpr make(Kind kind, const Cotree& obj = Cotree(), const Cotree& obj2 = Cotree(), int num = 0,
                      const GenExpr& a = GenExpr(), const GenExpr& b = GenExpr());
  std::shared_ptr<const Node> node_;
};

// Right-nested tensor of the parts.  Empty parts give id(k).
GenExpr tensor_all(const std::vector<GenExpr>& parts);

struct Signature {
  Cotree source;
  Cotree target;
};

// Type inference.  Throws IllTyped naming the offending node by path, e.g.
// `$.inner.first`.
Signature infer(const GenExpr& e);

// Ghat is only accepted under Nat.
Morphism evaluate(const GenExpr& e, Rig rig);

// Replaces every Ghat(r) by its iteration: ghat(0) = eta . eps, ghat(1) = id,
// ghat(r + 1) = plus . pair(id, ghat(r)).
GenExpr expand_ghat(const GenExpr& e);

// Prefix text form, e.g. `comp(tensor(id(W), eta), l)`.
std::string to_string(const GenExpr& e);

// Number of nodes.
std::size_t node_count(const GenExpr& e);

}  // namespace weil

#include "weil/decompose.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "weil/errors.hpp"

namespace weil {

std::vector<Circle> circles(const Morphism& f) {
  std::vector<Circle> out;
  for (int i = 0; i < f.source().generators(); ++i) {
    for (const Term& t : f.image(i).terms()) out.push_back({i, t.mono, t.coeff});
  }
  return out;
}

bool has_intersecting_circles(const Morphism& f) {
  VertexSet seen = 0;
  for (const Circle& c : circles(f)) {
    if (seen & c.mono) return true;
    seen |= c.mono;
  }
  return false;
}

int ChoiceAssignment::slot(std::size_t c, int j) const {
  const Circle& circle = circles.at(c);
  if (((circle.mono >> j) & 1U) == 0) throw std::out_of_range("generator not in circle");
  int before = 0;
  for (std::size_t d = 0; d < c; ++d) before += static_cast<int>((circles[d].mono >> j) & 1U);
  return offset[static_cast<std::size_t>(j)] + before;
}

namespace {

bool edgeless(const WeilObject& b) { return !b.graph().has_edges(); }

}  // namespace

ChoiceAssignment choice_rule(const Morphism& f) {
  if (!edgeless(f.target())) {
    throw PreconditionViolation("choice rule needs a target of the form nW, got " + to_string(f.target().cotree()));
  }
  const int n = f.target().generators();
  std::vector<Circle> cs = circles(f);
  std::vector<int> mult(static_cast<std::size_t>(n), 0), offset(static_cast<std::size_t>(n), 0);
  for (const Circle& c : cs) {
    for (int j : members(c.mono)) ++mult[static_cast<std::size_t>(j)];
  }
  std::vector<Cotree> factors;
  int total = 0;
  for (int j = 0; j < n; ++j) {
    offset[static_cast<std::size_t>(j)] = total;
    total += mult[static_cast<std::size_t>(j)];
    factors.push_back(Cotree::power(mult[static_cast<std::size_t>(j)]));
  }
  Cotree slot_object = tensor_all(factors);
  std::vector<std::vector<Term>> terms(static_cast<std::size_t>(f.source().generators()));
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  for (const Circle& c : cs) {
    VertexSet m = 0;
    for (int j : members(c.mono)) m |= VertexSet{1} << (offset[j] + used[j]++);
    terms[static_cast<std::size_t>(c.generator)].push_back({m, c.coeff});
  }
  std::vector<Polynomial> images;
  for (const auto& ts : terms) images.push_back(Polynomial::from_terms(0, ts, f.rig()));
  Morphism lifted(f.source(), WeilObject(slot_object), std::move(images), f.rig());
  return {std::move(mult), std::move(offset), std::move(cs), slot_object, std::move(lifted)};
}

std::string_view tag_name(StepTag tag) noexcept {
  switch (tag) {
    case StepTag::OneCircle:
      return "OneCircle";
    case StepTag::SplitCircles:
      return "SplitCircles";
    case StepTag::Projection:
      return "Projection";
    case StepTag::NoIntersect:
      return "NoIntersect";
    case StepTag::SplitGeneral:
      return "SplitGeneral";
    case StepTag::PullbackTarget:
      return "PullbackTarget";
    case StepTag::Coefficient:
      return "Coefficient";
  }
  return "?";
}

GenExpr DecompositionTrace::replay() const {
  if (steps.empty()) throw std::logic_error("empty decomposition trace");
  return steps.back().expr;
}

GenExpr plus_tower(int m) {
  if (m < 0) throw std::invalid_argument("negative plus tower");
  if (m == 0) return GenExpr::eta();
  if (m == 1) return GenExpr::id(Cotree::w());
  if (m == 2) return GenExpr::plus();
  Cotree wm = Cotree::power(m);
  GenExpr rest = GenExpr::compose(plus_tower(m - 1), GenExpr::proj(wm, 2));
  return GenExpr::compose(GenExpr::plus(), GenExpr::pair(GenExpr::proj(wm, 1), rest));
}

GenExpr eps_tower(const Cotree& a) {
  switch (a.kind()) {
    case Cotree::Kind::K:
      return GenExpr::id(a);
    case Cotree::Kind::W:
      return GenExpr::eps();
    case Cotree::Kind::Union:
      return GenExpr::tensor(eps_tower(a.left()), eps_tower(a.right()));
    case Cotree::Kind::Join:
      return GenExpr::compose(eps_tower(a.left()), GenExpr::proj(a, 1));
  }
  throw std::logic_error("unknown cotree kind");
}

GenExpr eta_tower(const Cotree& b) {
  switch (b.kind()) {
    case Cotree::Kind::K:
      return GenExpr::id(b);
    case Cotree::Kind::W:
      return GenExpr::eta();
    case Cotree::Kind::Union:
      return GenExpr::tensor(eta_tower(b.left()), eta_tower(b.right()));
    case Cotree::Kind::Join:
      return GenExpr::pair(eta_tower(b.left()), eta_tower(b.right()));
  }
  throw std::logic_error("unknown cotree kind");
}

GenExpr permutation_network(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> a = order;
  std::vector<int> swaps;
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && a[j - 1] > a[j]; --j) {
      std::swap(a[j - 1], a[j]);
      swaps.push_back(j - 1);
    }
  }
  if (swaps.empty()) return GenExpr::id(Cotree::copower(n));
  auto transposition = [n](int t) {
    std::vector<GenExpr> parts;
    if (t > 0) parts.push_back(GenExpr::id(Cotree::copower(t)));
    parts.push_back(GenExpr::c());
    if (n - t - 2 > 0) parts.push_back(GenExpr::id(Cotree::copower(n - t - 2)));
    return tensor_all(parts);
  };
  // Sorting gives order . s_{t_1} . ... . s_{t_k} = id, so the first swap found acts first.
  GenExpr e = transposition(swaps.front());
  for (std::size_t i = 1; i < swaps.size(); ++i) e = GenExpr::compose(transposition(swaps[i]), e);
  return e;
}

namespace {

GenExpr ladder(int s) {
  if (s == 1) return GenExpr::id(Cotree::w());
  GenExpr e = GenExpr::l();
  for (int k = 3; k <= s; ++k) {
    e = GenExpr::compose(GenExpr::tensor(GenExpr::id(Cotree::copower(k - 2)), GenExpr::l()), e);
  }
  return e;
}

GenExpr one_circle(VertexSet u, int n) {
  std::vector<GenExpr> pad;
  for (int p = 0; p < n; ++p) pad.push_back(((u >> p) & 1U) ? GenExpr::id(Cotree::w()) : GenExpr::eta());
  return GenExpr::compose(tensor_all(pad), ladder(set_size(u)));
}

// f with source restricted to generators [lo, hi), which form the object `part`.
Morphism restrict_source(const Morphism& f, int lo, int hi, const Cotree& part) {
  std::vector<Polynomial> images(f.images().begin() + lo, f.images().begin() + hi);
  return Morphism::trusted(WeilObject(part), f.target(), std::move(images), f.rig());
}

// Renames target generator v to map[v]; terms using a generator with map[v] < 0 are dropped.
Morphism remap_target(const Morphism& f, const Cotree& target, const std::vector<int>& map) {
  std::vector<Polynomial> images;
  for (const Polynomial& p : f.images()) {
    std::vector<Term> terms;
    for (const Term& t : p.terms()) {
      VertexSet m = 0;
      bool killed = false;
      for (int v : Bits(t.mono)) {
        if (map[static_cast<std::size_t>(v)] < 0) {
          killed = true;
          break;
        }
        m |= VertexSet{1} << map[static_cast<std::size_t>(v)];
      }
      if (!killed) terms.push_back({m, t.coeff});
    }
    images.push_back(Polynomial::from_terms(0, terms, f.rig()));
  }
  return Morphism::trusted(f.source(), WeilObject(target), std::move(images), f.rig());
}

void append_graph(std::string& key, const Graph& g) {
  key.push_back(static_cast<char>(g.size()));
  for (int v = 0; v < g.size(); ++v) {
    VertexSet row = g.neighbours(v);
    key.append(reinterpret_cast<const char*>(&row), sizeof row);
  }
}

// Source and target graphs plus the images, byte for byte.
std::string memo_key(const Morphism& f) {
  std::string key;
  append_graph(key, f.source().graph());
  append_graph(key, f.target().graph());
  for (const Polynomial& p : f.images()) {
    auto count = static_cast<std::uint32_t>(p.terms().size());
    key.append(reinterpret_cast<const char*>(&count), sizeof count);
    for (const Term& t : p.terms()) {
      key.append(reinterpret_cast<const char*>(&t.mono), sizeof t.mono);
      key.append(reinterpret_cast<const char*>(&t.coeff), sizeof t.coeff);
    }
  }
  return key;
}

class Decomposer {
 public:
  explicit Decomposer(DecompositionTrace* trace) : trace_(trace) {}

  // Sub-problems repeat across the branches of a pullback, so equal
  // morphisms share one expression (and one trace entry).
  GenExpr run(const Morphism& f) {
    std::string key = memo_key(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    GenExpr e = step(f);
    memo_.emplace(std::move(key), e);
    return e;
  }

 private:
  GenExpr step(const Morphism& f) {
    const WeilObject& a = f.source();
    const WeilObject& b = f.target();
    if (b.generators() == 0) return record(StepTag::Projection, eps_tower(a.cotree()));
    if (a.generators() == 0) return record(StepTag::NoIntersect, eta_tower(b.cotree()));
    if (b.graph().has_edges()) return pullback_target(f);
    if (!has_intersecting_circles(f)) return no_intersect(f);
    ChoiceAssignment ch = choice_rule(f);
    GenExpr lifted = run(ch.lifted);
    std::vector<GenExpr> towers;
    for (int m : ch.multiplicity) towers.push_back(plus_tower(m));
    StepTag tag = a.cotree().kind() == Cotree::Kind::W ? StepTag::SplitCircles : StepTag::SplitGeneral;
    return record(tag, GenExpr::compose(tensor_all(towers), lifted));
  }

  GenExpr record(StepTag tag, GenExpr e) {
    if (trace_) trace_->steps.push_back({tag, e});
    return e;
  }

  // B = L (x) (P x Q) (x) R, with P x Q the first connected component that has edges.
  GenExpr pullback_target(const Morphism& f) {
    std::vector<Cotree> comps = f.target().cotree().components();
    std::size_t t = 0;
    while (comps[t].kind() != Cotree::Kind::Join) ++t;
    Cotree l = tensor_all(std::vector<Cotree>(comps.begin(), comps.begin() + static_cast<long>(t)));
    Cotree r = tensor_all(std::vector<Cotree>(comps.begin() + static_cast<long>(t) + 1, comps.end()));
    const Cotree& p = comps[t].left();
    const Cotree& q = comps[t].right();
    const int nl = l.size(), np = p.size(), nq = q.size(), nr = r.size();
    std::vector<int> to1, to2;
    for (int v = 0; v < nl; ++v) {
      to1.push_back(v);
      to2.push_back(v);
    }
    for (int v = 0; v < np; ++v) {
      to1.push_back(nl + v);
      to2.push_back(-1);
    }
    for (int v = 0; v < nq; ++v) {
      to1.push_back(-1);
      to2.push_back(nl + v);
    }
    for (int v = 0; v < nr; ++v) {
      to1.push_back(nl + np + v);
      to2.push_back(nl + nq + v);
    }
    GenExpr e1 = run(remap_target(f, tensor_all({l, p, r}), to1));
    GenExpr e2 = run(remap_target(f, tensor_all({l, q, r}), to2));
    return record(StepTag::PullbackTarget, GenExpr::pair(e1, e2, l, r));
  }

  GenExpr no_intersect(const Morphism& f) {
    const Cotree& a = f.source().cotree();
    const int n = f.target().generators();
    std::vector<Circle> cs = circles(f);
    if (cs.empty()) {
      return record(StepTag::NoIntersect,
                    GenExpr::compose(eta_tower(f.target().cotree()), eps_tower(a)));
    }
    switch (a.kind()) {
      case Cotree::Kind::W: {
        GenExpr e = record(StepTag::OneCircle, one_circle(cs.front().mono, n));
        if (cs.front().coeff == 1) return e;
        return record(StepTag::Coefficient,
                      GenExpr::compose(e, GenExpr::ghat(static_cast<int>(cs.front().coeff))));
      }
      case Cotree::Kind::Join: {
        const int n1 = a.left().size();
        bool left = std::any_of(cs.begin(), cs.end(), [&](const Circle& c) { return c.generator < n1; });
        bool right = std::any_of(cs.begin(), cs.end(), [&](const Circle& c) { return c.generator >= n1; });
        if (left && right) throw std::logic_error("circles on both sides of a product");
        Morphism part = left ? restrict_source(f, 0, n1, a.left())
                             : restrict_source(f, n1, a.size(), a.right());
        return record(StepTag::Projection, GenExpr::compose(run(part), GenExpr::proj(a, left ? 1 : 2)));
      }
      case Cotree::Kind::Union: {
        const int n1 = a.left().size();
        VertexSet s2 = 0;
        for (int i = n1; i < a.size(); ++i) s2 |= f.image(i).support();
        VertexSet all = f.target().graph().all();
        std::vector<int> order = members(all & ~s2);
        const int r = static_cast<int>(order.size());
        for (int v : members(s2)) order.push_back(v);
        std::vector<int> to1(static_cast<std::size_t>(n), -1), to2(static_cast<std::size_t>(n), -1);
        for (int p = 0; p < n; ++p) {
          if (p < r) {
            to1[static_cast<std::size_t>(order[p])] = p;
          } else {
            to2[static_cast<std::size_t>(order[p])] = p - r;
          }
        }
        GenExpr e1 = run(remap_target(restrict_source(f, 0, n1, a.left()), Cotree::copower(r), to1));
        GenExpr e2 = run(remap_target(restrict_source(f, n1, a.size(), a.right()), Cotree::copower(n - r), to2));
        GenExpr e = GenExpr::tensor(e1, e2);
        if (!std::is_sorted(order.begin(), order.end())) e = GenExpr::compose(permutation_network(order), e);
        return record(StepTag::NoIntersect, e);
      }
      case Cotree::Kind::K:
        break;
    }
    throw std::logic_error("unreachable decomposition case");
  }

  DecompositionTrace* trace_;
  std::map<std::string, GenExpr> memo_;
};

}  // namespace

GenExpr decompose_one_circle(const Morphism& f) {
  if (f.source().cotree().kind() != Cotree::Kind::W || !edgeless(f.target())) {
    throw PreconditionViolation("one-circle decomposition needs a map W -> nW");
  }
  const auto& terms = f.image(0).terms();
  if (terms.size() != 1 || terms.front().coeff != 1) {
    throw PreconditionViolation("one-circle decomposition needs a single term with coefficient 1");
  }
  return one_circle(terms.front().mono, f.target().generators());
}

GenExpr decompose(const Morphism& f, DecompositionTrace* trace) { return Decomposer(trace).run(f); }

}  // namespace weil

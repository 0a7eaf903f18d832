#include "matchsig/matchgate.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <unordered_map>

namespace matchsig {

namespace {

// Dense view of a matchgate: node ids mapped to 0..N-1 in ascending id order.
class MatchingCounter {
 public:
  explicit MatchingCounter(const Matchgate& g) : field_(g.field()) {
    ids_ = g.nodes();
    std::sort(ids_.begin(), ids_.end());
    if (ids_.size() > static_cast<std::size_t>(kMaxMatchgateNodes))
      throw std::invalid_argument("perfmatch supports at most " + std::to_string(kMaxMatchgateNodes) + " nodes");
    adjacency_.resize(ids_.size());
    for (const auto& e : g.edges()) {
      int a = position(e.u), b = position(e.v);
      adjacency_[static_cast<std::size_t>(a)].push_back({b, e.weight});
      adjacency_[static_cast<std::size_t>(b)].push_back({a, e.weight});
    }
    for (auto& list : adjacency_)
      std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  int position(int id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    return static_cast<int>(it - ids_.begin());
  }

  std::uint32_t all() const { return ids_.empty() ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << ids_.size()) - 1); }

  // Sum over perfect matchings of the subgraph induced on `mask`. The lowest
  // remaining node is matched first, partners in ascending order.
  Element count(std::uint32_t mask) {
    if (mask == 0) return field_.one();
    if (std::popcount(mask) % 2) return field_.zero();
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int a = std::countr_zero(mask);
    Element total = field_.zero();
    for (const auto& [b, w] : adjacency_[static_cast<std::size_t>(a)]) {
      if (!((mask >> b) & 1u) || w.is_zero()) continue;
      Element rest = count(mask & ~(1u << a) & ~(1u << b));
      if (!rest.is_zero()) total += w * rest;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  Field field_;
  std::vector<int> ids_;
  std::vector<std::vector<std::pair<int, Element>>> adjacency_;
  std::unordered_map<std::uint32_t, Element> memo_;
};

}  // namespace

Matchgate::Matchgate(Field field, std::vector<int> nodes, std::vector<Edge> edges, std::vector<int> io)
    : field_(field), nodes_(std::move(nodes)) {
  std::set<int> unique(nodes_.begin(), nodes_.end());
  if (unique.size() != nodes_.size()) throw std::invalid_argument("duplicate node id");
  for (auto& e : edges) add_edge(e.u, e.v, std::move(e.weight));
  set_io(std::move(io));
}

bool Matchgate::has_node(int id) const { return std::find(nodes_.begin(), nodes_.end(), id) != nodes_.end(); }

int Matchgate::add_node() {
  int id = nodes_.empty() ? 0 : *std::max_element(nodes_.begin(), nodes_.end()) + 1;
  nodes_.push_back(id);
  return id;
}

void Matchgate::add_edge(int u, int v, Element weight) {
  if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
  if (!has_node(u) || !has_node(v)) throw std::invalid_argument("edge endpoint is not a node");
  if (weight.impl() != field_.impl()) throw std::invalid_argument("edge weight does not belong to " + field_.name());
  for (const auto& e : edges_)
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u))
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  edges_.push_back({u, v, std::move(weight)});
}

void Matchgate::set_io(std::vector<int> io) {
  std::set<int> unique(io.begin(), io.end());
  if (unique.size() != io.size()) throw std::invalid_argument("duplicate input/output node");
  for (int id : io)
    if (!has_node(id)) throw std::invalid_argument("input/output node " + std::to_string(id) + " does not exist");
  io_ = std::move(io);
}

Element perfmatch(const Matchgate& g) {
  MatchingCounter counter(g);
  return counter.count(counter.all());
}

Signature matchgate_signature(const Matchgate& g) {
  const int n = g.arity();
  if (n < 1 || n > kMaxMatchgateInputs)
    throw std::invalid_argument("matchgate_signature needs between 1 and " + std::to_string(kMaxMatchgateInputs) +
                                " input/output nodes");
  MatchingCounter counter(g);
  std::vector<std::uint32_t> io_bits;
  for (int id : g.io()) io_bits.push_back(1u << counter.position(id));
  std::vector<Element> table(std::size_t{1} << n);
  for (Bits x = 0; x < table.size(); ++x) {
    std::uint32_t mask = counter.all();
    for (int i = 1; i <= n; ++i)
      if (test_bit(x, i)) mask &= ~io_bits[static_cast<std::size_t>(i - 1)];
    table[x] = counter.count(mask);
  }
  return Signature(n, g.field(), std::move(table));
}

Matchgate apply_gadget(const Matchgate& g, const Gadget& gadget) {
  Matchgate out = g;
  const Field& field = g.field();

  auto flip = [&](Matchgate& m, int i) {
    if (i < 1 || i > m.arity()) throw std::invalid_argument("flip index out of range");
    auto io = m.io();
    int pendant = m.add_node();
    m.add_edge(io[static_cast<std::size_t>(i - 1)], pendant, field.one());
    io[static_cast<std::size_t>(i - 1)] = pendant;
    m.set_io(std::move(io));
  };
  auto add_pair = [&](Matchgate& m, Element w) {
    int a = m.add_node();
    int b = m.add_node();
    m.add_edge(a, b, std::move(w));
  };

  std::visit(
      [&](const auto& gd) {
        using T = std::decay_t<decltype(gd)>;
        if constexpr (std::is_same_v<T, gadget::ZeroPad>) {
          add_pair(out, field.zero());
        } else if constexpr (std::is_same_v<T, gadget::Flip>) {
          flip(out, gd.index);
        } else if constexpr (std::is_same_v<T, gadget::Normalize>) {
          if (gd.scale.is_zero()) throw std::invalid_argument("normalize gadget needs a non-zero scale");
          if (gd.basepoint >> out.arity()) throw std::invalid_argument("normalize basepoint out of range");
          for (int i = 1; i <= out.arity(); ++i)
            if (test_bit(gd.basepoint, i)) flip(out, i);
          add_pair(out, gd.scale.inverse());
        } else if constexpr (std::is_same_v<T, gadget::FixLast>) {
          if (gd.bit != 0 && gd.bit != 1) throw std::invalid_argument("fixed bit must be 0 or 1");
          if (out.arity() < 1) throw std::invalid_argument("no input/output node to fix");
          auto io = out.io();
          int last = io.back();
          io.pop_back();
          if (gd.bit == 1) out.add_edge(last, out.add_node(), field.one());
          out.set_io(std::move(io));
        } else {
          auto io = out.io();
          io.push_back(out.add_node());
          out.set_io(std::move(io));
        }
      },
      gadget);
  return out;
}

}  // namespace matchsig

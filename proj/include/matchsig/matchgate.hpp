#pragma once

// Weighted graphs with ordered input/output nodes, brute-force PerfMatch, and
// the graph gadgets behind the basic closure properties of standard
// signatures. Planarity is not checked.

#include <variant>
#include <vector>

#include "matchsig/field.hpp"
#include "matchsig/signature.hpp"

namespace matchsig {

inline constexpr int kMaxMatchgateNodes = 20;
inline constexpr int kMaxMatchgateInputs = 12;

struct Edge {
  int u;
  int v;
  Element weight;
};

class Matchgate {
 public:
  Matchgate(Field field, std::vector<int> nodes, std::vector<Edge> edges, std::vector<int> io);

  const Field& field() const { return field_; }
  const std::vector<int>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Input/output nodes v_1 ... v_n in order.
  const std::vector<int>& io() const { return io_; }
  int arity() const { return static_cast<int>(io_.size()); }

  /// Adds an isolated node with a fresh id and returns the id.
  int add_node();
  void add_edge(int u, int v, Element weight);
  void set_io(std::vector<int> io);

 private:
  bool has_node(int id) const;

  Field field_;
  std::vector<int> nodes_;
  std::vector<Edge> edges_;
  std::vector<int> io_;
};

/// Sum over perfect matchings of the product of edge weights, over the whole
/// graph (input/output labels are ignored). 1 for the empty graph.
Element perfmatch(const Matchgate& g);

/// f(x) = PerfMatch(G_x), where G_x drops v_i and its edges when x_i = 1.
Signature matchgate_signature(const Matchgate& g);

namespace gadget {

/// Two new nodes joined by a weight-0 edge: the signature becomes zero.
struct ZeroPad {};
/// A pendant node v' attached to v_i by a weight-1 edge takes over label i:
/// the signature becomes f(x + e_i).
struct Flip {
  int index;
};
/// Flips every bit set in `basepoint`, then adds a separate edge of weight
/// scale^{-1}: the signature becomes scale^{-1} f(x + basepoint).
struct Normalize {
  Bits basepoint;
  Element scale;
};
/// Drops the label of v_n. For bit 1 a pendant node is attached to v_n first,
/// forcing it to be matched away. The signature becomes f_bit.
struct FixLast {
  int bit;
};
/// Adds an isolated node as v_{n+1}: the new signature g has g_0 = 0 and
/// g_1 = f.
struct AddFreeNode {};

}  // namespace gadget

using Gadget = std::variant<gadget::ZeroPad, gadget::Flip, gadget::Normalize, gadget::FixLast, gadget::AddFreeNode>;

Matchgate apply_gadget(const Matchgate& g, const Gadget& gadget);

}  // namespace matchsig

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmdc {

// Shape of a finite abelian group Z_n1 x ... x Z_nk given by its moduli.
// A modulus of 1 is allowed; it contributes a trivial factor (the order-1
// group appears as the degenerate single-vertex graph).
struct GroupShape {
  std::vector<int> moduli;

  int rank() const { return static_cast<int>(moduli.size()); }
  int order() const;

  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

// Group element as a coordinate tuple, one entry per modulus.
using GroupElem = std::vector<int>;

// A multidimensional circulant graph description: group shape, connection
// set S, and an optional border vertex adjacent to everything.  Connections
// are kept sorted so specs compare and serialize canonically.
struct MdcSpec {
  GroupShape shape;
  std::vector<GroupElem> connections;
  bool bordered = false;

  void normalize();  // sorts connections
  friend bool operator==(const MdcSpec&, const MdcSpec&) = default;
};

// Returns every rule violation found, one message per entry; empty means the
// spec is valid.  Checked rules: at least one modulus, moduli >= 1, tuple
// arity and coordinate ranges ("OutOfRange"), no duplicate connections
// ("Duplicate"), 0 not in S ("ContainsZero"), S closed under negation
// ("NotSymmetric").
std::vector<std::string> validate_spec(const MdcSpec& spec);

// Mixed-radix index of a group element; the first modulus varies slowest.
int vertex_index(const GroupElem& a, const GroupShape& shape);
GroupElem index_vertex(int idx, const GroupShape& shape);

GroupElem negate_elem(const GroupElem& a, const GroupShape& shape);
GroupElem add_elem(const GroupElem& a, const GroupElem& b, const GroupShape& shape);

// Simple undirected graph on contiguous vertex ids, adjacency kept as packed
// bit rows.  set_arc writes a single directed bit and is meant for
// construction code and for tests that need deliberately broken matrices;
// graphs produced by build_graph are always symmetric with a zero diagonal.
class Graph {
 public:
  explicit Graph(int order);

  int order() const { return order_; }
  bool adjacent(int a, int b) const {
    return (rows_[a][static_cast<size_t>(b) >> 6] >> (b & 63)) & 1;
  }
  void set_arc(int a, int b, bool present);
  void add_edge(int a, int b) {
    set_arc(a, b, true);
    set_arc(b, a, true);
  }
  int degree(int v) const;
  std::vector<int> neighbors(int v) const;

  int words() const { return words_; }
  const std::vector<uint64_t>& row_bits(int v) const { return rows_[v]; }

 private:
  int order_;
  int words_;
  std::vector<std::vector<uint64_t>> rows_;
};

// Builds the graph of a spec: vertices are the group elements in mixed-radix
// order, a ~ b iff a - b lies in S.  A bordered spec appends one extra vertex
// (the last index) adjacent to every group vertex.  Throws
// std::invalid_argument listing the violations if the spec is invalid.
Graph build_graph(const MdcSpec& spec);

// True iff the adjacency matrix is invariant under the simultaneous cyclic
// shift of rows and columns along every coordinate axis, i.e. iff the matrix
// has the nested block circulant structure these graphs are defined by.
bool nested_block_predicate(const Graph& g, const GroupShape& shape);

// Checks that every translation a -> a + c is an automorphism (unbordered
// specs only).
bool translation_automorphisms_check(const Graph& g, const MdcSpec& spec);

// Checks that negation a -> -a is an automorphism (unbordered specs only).
bool negation_automorphism_check(const Graph& g, const MdcSpec& spec);

int diameter(const Graph& g);  // -1 when disconnected
int girth(const Graph& g);     // 0 when acyclic
int max_clique(const Graph& g);

struct GraphStats {
  int valency = 0;       // |S|: common degree of the underlying circulant
  int diameter = 0;      // -1 when disconnected
  int girth = 0;         // 0 when acyclic
  int clique = 0;        // exact maximum clique size
  long long known_aut_order = 0;  // order of the certified automorphism subgroup
  bool bordered = false;
  int border_degree = -1;  // degree of the border vertex, bordered only
  int base_degree = -1;    // degree of group vertices in the bordered graph
};

// Computes stats for a graph built from spec.  valency, diameter, girth and
// clique always describe the base circulant; the border vertex dominates
// everything, so on the bordered graph itself they would degenerate to
// clique+1 and diameter <= 2 regardless of the connection set.  The bordered
// graph's own degrees are reported separately.  The automorphism subgroup is
// the translations plus negation when negation is not itself a translation:
// order 2n in that case, n otherwise (n = group order).  For bordered specs
// the subgroup acts on the base graph and fixes the border vertex, so the
// same count applies.
GraphStats graph_stats(const Graph& g, const MdcSpec& spec);

}  // namespace qmdc

#include "qmdc/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qmdc {

int GroupShape::order() const {
  int n = 1;
  for (int m : moduli) n *= m;
  return n;
}

void MdcSpec::normalize() { std::sort(connections.begin(), connections.end()); }

namespace {

std::string tuple_str(const GroupElem& a) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

std::vector<std::string> validate_spec(const MdcSpec& spec) {
  std::vector<std::string> errs;
  const auto& moduli = spec.shape.moduli;
  if (moduli.empty()) {
    errs.push_back("shape must have at least one modulus");
    return errs;
  }
  for (size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) {
      std::ostringstream os;
      os << "modulus " << i + 1 << " is " << moduli[i] << "; moduli must be >= 1";
      errs.push_back(os.str());
    }
  }
  if (!errs.empty()) return errs;

  const int k = spec.shape.rank();
  std::vector<GroupElem> in_range;
  for (const auto& s : spec.connections) {
    if (static_cast<int>(s.size()) != k) {
      errs.push_back("OutOfRange: connection " + tuple_str(s) + " has arity " +
                     std::to_string(s.size()) + ", expected " + std::to_string(k));
      continue;
    }
    bool ok = true;
    for (int i = 0; i < k; ++i) {
      if (s[i] < 0 || s[i] >= moduli[i]) {
        std::ostringstream os;
        os << "OutOfRange: connection " << tuple_str(s) << " coordinate " << i + 1
           << " not in [0," << moduli[i] << ")";
        errs.push_back(os.str());
        ok = false;
      }
    }
    if (ok) in_range.push_back(s);
  }

  std::vector<GroupElem> sorted = in_range;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1] && (i < 2 || sorted[i] != sorted[i - 2]))
      errs.push_back("Duplicate: connection " + tuple_str(sorted[i]) + " listed more than once");
  }

  const GroupElem zero(k, 0);
  for (const auto& s : sorted) {
    if (s == zero) {
      errs.push_back("ContainsZero: connection set contains the zero element");
      break;
    }
  }
  for (const auto& s : in_range) {
    GroupElem neg = negate_elem(s, spec.shape);
    if (!std::binary_search(sorted.begin(), sorted.end(), neg)) {
      errs.push_back("NotSymmetric: connection " + tuple_str(s) + " lacks its negation " +
                     tuple_str(neg));
    }
  }
  return errs;
}

int vertex_index(const GroupElem& a, const GroupShape& shape) {
  if (static_cast<int>(a.size()) != shape.rank())
    throw std::invalid_argument("vertex_index: arity mismatch");
  int idx = 0;
  for (int i = 0; i < shape.rank(); ++i) {
    if (a[i] < 0 || a[i] >= shape.moduli[i])
      throw std::out_of_range("vertex_index: coordinate out of range");
    idx = idx * shape.moduli[i] + a[i];
  }
  return idx;
}

GroupElem index_vertex(int idx, const GroupShape& shape) {
  if (idx < 0 || idx >= shape.order()) throw std::out_of_range("index_vertex: index out of range");
  GroupElem a(shape.rank());
  for (int i = shape.rank() - 1; i >= 0; --i) {
    a[i] = idx % shape.moduli[i];
    idx /= shape.moduli[i];
  }
  return a;
}

GroupElem negate_elem(const GroupElem& a, const GroupShape& shape) {
  GroupElem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (shape.moduli[i] - a[i]) % shape.moduli[i];
  return r;
}

GroupElem add_elem(const GroupElem& a, const GroupElem& b, const GroupShape& shape) {
  GroupElem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % shape.moduli[i];
  return r;
}

Graph::Graph(int order)
    : order_([order] {
        if (order < 1) throw std::invalid_argument("Graph: order must be positive");
        return order;
      }()),
      words_((order + 63) / 64),
      rows_(order, std::vector<uint64_t>(words_, 0)) {}

void Graph::set_arc(int a, int b, bool present) {
  uint64_t mask = 1ull << (b & 63);
  if (present)
    rows_[a][static_cast<size_t>(b) >> 6] |= mask;
  else
    rows_[a][static_cast<size_t>(b) >> 6] &= ~mask;
}

int Graph::degree(int v) const {
  int d = 0;
  for (uint64_t w : rows_[v]) d += std::popcount(w);
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < words_; ++w) {
    uint64_t bits = rows_[v][w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(w * 64 + b);
      bits &= bits - 1;
    }
  }
  return out;
}

Graph build_graph(const MdcSpec& spec) {
  auto errs = validate_spec(spec);
  if (!errs.empty()) {
    std::string msg = "invalid spec:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }

  const int n = spec.shape.order();
  Graph g(n + (spec.bordered ? 1 : 0));

  std::vector<char> in_s(n, 0);
  for (const auto& s : spec.connections) in_s[vertex_index(s, spec.shape)] = 1;

  std::vector<GroupElem> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = index_vertex(i, spec.shape);

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      GroupElem diff(spec.shape.rank());
      for (int i = 0; i < spec.shape.rank(); ++i) {
        int m = spec.shape.moduli[i];
        diff[i] = (elems[a][i] - elems[b][i] + m) % m;
      }
      if (in_s[vertex_index(diff, spec.shape)]) g.add_edge(a, b);
    }
  }
  if (spec.bordered)
    for (int a = 0; a < n; ++a) g.add_edge(a, n);
  return g;
}

bool nested_block_predicate(const Graph& g, const GroupShape& shape) {
  const int n = shape.order();
  if (g.order() != n)
    throw std::invalid_argument("nested_block_predicate: graph order " +
                                std::to_string(g.order()) +
                                " does not match group order " + std::to_string(n));

  std::vector<GroupElem> elems(n);
  for (int i = 0; i < n; ++i) elems[i] = index_vertex(i, shape);

  // Invariance under the unit shift along each axis generates invariance
  // under all translations, which is exactly the nested block circulant
  // layout under the mixed-radix ordering.
  for (int axis = 0; axis < shape.rank(); ++axis) {
    GroupElem unit(shape.rank(), 0);
    unit[axis] = 1 % shape.moduli[axis];
    std::vector<int> shifted(n);
    for (int i = 0; i < n; ++i)
      shifted[i] = vertex_index(add_elem(elems[i], unit, shape), shape);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.adjacent(a, b) != g.adjacent(shifted[a], shifted[b])) return false;
  }
  return true;
}

namespace {

bool permutation_is_automorphism(const Graph& g, const std::vector<int>& perm) {
  const int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.adjacent(a, b) != g.adjacent(perm[a], perm[b])) return false;
  return true;
}

std::vector<int> translation_perm(const GroupShape& shape, const GroupElem& c) {
  const int n = shape.order();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i)
    perm[i] = vertex_index(add_elem(index_vertex(i, shape), c, shape), shape);
  return perm;
}

std::vector<int> negation_perm(const GroupShape& shape) {
  const int n = shape.order();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i)
    perm[i] = vertex_index(negate_elem(index_vertex(i, shape), shape), shape);
  return perm;
}

}  // namespace

bool translation_automorphisms_check(const Graph& g, const MdcSpec& spec) {
  if (spec.bordered)
    throw std::invalid_argument("translation_automorphisms_check: unbordered specs only");
  const int n = spec.shape.order();
  if (g.order() != n) throw std::invalid_argument("translation_automorphisms_check: order mismatch");
  for (int c = 0; c < n; ++c)
    if (!permutation_is_automorphism(g, translation_perm(spec.shape, index_vertex(c, spec.shape))))
      return false;
  return true;
}

bool negation_automorphism_check(const Graph& g, const MdcSpec& spec) {
  if (spec.bordered)
    throw std::invalid_argument("negation_automorphism_check: unbordered specs only");
  if (g.order() != spec.shape.order())
    throw std::invalid_argument("negation_automorphism_check: order mismatch");
  return permutation_is_automorphism(g, negation_perm(spec.shape));
}

namespace {

// Breadth-first distances from src; unreached vertices stay at -1.
std::vector<int> bfs_dist(const Graph& g, int src) {
  std::vector<int> dist(g.order(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

int diameter(const Graph& g) {
  int best = 0;
  for (int s = 0; s < g.order(); ++s) {
    auto dist = bfs_dist(g, s);
    for (int d : dist) {
      if (d < 0) return -1;
      best = std::max(best, d);
    }
  }
  return best;
}

int girth(const Graph& g) {
  // BFS from every root.  A non-tree edge (u,w) seen while expanding u closes
  // a walk of length dist[u] + dist[w] + 1 through the root; every such walk
  // contains a cycle no longer than itself, and for a root lying on a
  // shortest cycle the true girth is attained, so the minimum over all roots
  // and edges is exact.
  const int n = g.order();
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (v != parent[u]) {
          int len = dist[u] + dist[v] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

namespace {

// Exact maximum clique, branch and bound with a greedy coloring bound.
// Candidate sets are packed bit vectors, so this stays fast for the graph
// orders that occur here (at most a few hundred vertices).
struct CliqueSolver {
  int n, words;
  std::vector<std::vector<uint64_t>> adj;
  int best = 0;

  explicit CliqueSolver(const Graph& g)
      : n(g.order()), words(g.words()), adj(n) {
    for (int v = 0; v < n; ++v) adj[v] = g.row_bits(v);
  }

  static bool empty(const std::vector<uint64_t>& s) {
    for (uint64_t w : s)
      if (w) return false;
    return true;
  }

  void expand(std::vector<uint64_t>& cand, int size) {
    if (empty(cand)) {
      best = std::max(best, size);
      return;
    }

    // Greedy coloring of the candidate subgraph.  A vertex with color c can
    // extend the clique by at most c more vertices, so candidates are tried
    // in decreasing color order and the branch is cut once size + color
    // cannot beat the incumbent.
    std::vector<int> order, color;
    std::vector<uint64_t> uncolored = cand;
    int c = 0;
    while (!empty(uncolored)) {
      ++c;
      std::vector<uint64_t> avail = uncolored;
      while (!empty(avail)) {
        int v = -1;
        for (int w = 0; w < words; ++w) {
          if (avail[w]) {
            v = w * 64 + std::countr_zero(avail[w]);
            break;
          }
        }
        order.push_back(v);
        color.push_back(c);
        for (int w = 0; w < words; ++w) avail[w] &= ~adj[v][w];
        avail[static_cast<size_t>(v) >> 6] &= ~(1ull << (v & 63));
        uncolored[static_cast<size_t>(v) >> 6] &= ~(1ull << (v & 63));
      }
    }

    std::vector<uint64_t> next(words);
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + color[i] <= best) return;
      int v = order[i];
      for (int w = 0; w < words; ++w) next[w] = cand[w] & adj[v][w];
      expand(next, size + 1);
      cand[static_cast<size_t>(v) >> 6] &= ~(1ull << (v & 63));
    }
  }
};

}  // namespace

int max_clique(const Graph& g) {
  CliqueSolver solver(g);
  std::vector<uint64_t> all(solver.words, 0);
  for (int v = 0; v < g.order(); ++v) all[static_cast<size_t>(v) >> 6] |= 1ull << (v & 63);
  solver.expand(all, 0);
  return solver.best;
}

GraphStats graph_stats(const Graph& g, const MdcSpec& spec) {
  const int n = spec.shape.order();
  const int expect = n + (spec.bordered ? 1 : 0);
  if (g.order() != expect) throw std::invalid_argument("graph_stats: graph does not match spec");

  GraphStats st;
  st.bordered = spec.bordered;
  st.valency = static_cast<int>(spec.connections.size());

  if (spec.bordered) {
    st.border_degree = g.degree(n);
    st.base_degree = n > 0 ? g.degree(0) : 0;
  }

  // The border vertex is structureless: it raises every clique by one and
  // caps the diameter at 2 no matter what the circulant looks like, so the
  // reported statistics always describe the base graph.  Automorphisms are
  // certified there too; they extend by fixing the border vertex.
  MdcSpec base = spec;
  base.bordered = false;
  Graph bg = spec.bordered ? build_graph(base) : g;
  const Graph& base_graph = spec.bordered ? bg : g;

  st.diameter = diameter(base_graph);
  st.girth = girth(base_graph);
  st.clique = max_clique(base_graph);

  if (!translation_automorphisms_check(base_graph, base))
    throw std::logic_error("graph_stats: translations failed to be automorphisms");
  bool neg_auto = negation_automorphism_check(base_graph, base);
  if (!neg_auto) throw std::logic_error("graph_stats: negation failed to be an automorphism");

  auto neg = negation_perm(base.shape);
  bool neg_is_translation = false;
  for (int c = 0; c < n && !neg_is_translation; ++c)
    if (neg == translation_perm(base.shape, index_vertex(c, base.shape))) neg_is_translation = true;
  st.known_aut_order = neg_is_translation ? n : 2ll * n;
  return st;
}

}  // namespace qmdc

#pragma once

#include <vector>

#include "qmdc/graph.hpp"
#include "qmdc/rng.hpp"
#include "qmdc/search.hpp"

namespace qmdc_test {

// Random shape with order (plus border) at most max_n, then a random orbit
// subset as the connection set.  Always produces a valid spec.
inline qmdc::MdcSpec random_spec(qmdc::SplitMix64& rng, int max_n, bool allow_bordered = true) {
  qmdc::GroupShape shape;
  for (;;) {
    shape.moduli.clear();
    int rank = 1 + static_cast<int>(rng.below(3));
    long long order = 1;
    for (int i = 0; i < rank; ++i) {
      int m = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_n)));
      shape.moduli.push_back(m);
      order *= m;
    }
    if (order + 1 <= max_n || (order <= max_n && !allow_bordered)) break;
  }

  qmdc::OrbitBasis basis = qmdc::inverse_pair_orbits(shape);
  uint64_t mask = basis.count() == 0 ? 0 : rng.next() & ((1ull << basis.count()) - 1);

  qmdc::MdcSpec spec;
  spec.shape = shape;
  spec.connections = qmdc::orbit_subset(basis, mask);
  spec.bordered = allow_bordered && rng.coin();
  return spec;
}

// Erdos-Renyi style random loop-free graph, edge probability one half.
inline qmdc::Graph random_graph(qmdc::SplitMix64& rng, int order) {
  qmdc::Graph g(order);
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (rng.coin()) g.add_edge(a, b);
  return g;
}

}  // namespace qmdc_test

#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qmdc/code.hpp"
#include "qmdc/fixtures.hpp"
#include "qmdc/rng.hpp"

using namespace qmdc;

namespace {

GeneratorMatrix k2_code() {
  Graph g(2);
  g.add_edge(0, 1);
  return graph_code(g);
}

// Weight histogram by plain re-evaluation of every coefficient vector,
// a deliberately slow second opinion.
std::vector<long long> naive_enumerator(const AdditiveCode& code) {
  const int n = code.length();
  std::vector<long long> hist(n + 1, 0);
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (long long v = 0; v < total; ++v) {
    F3Vec coeffs(n);
    long long x = v;
    for (int i = 0; i < n; ++i) {
      coeffs[i] = F3(static_cast<int>(x % 3));
      x /= 3;
    }
    ++hist[weight(code.codeword(coeffs))];
  }
  long long mult = 1;
  for (int i = 0; i < n - code.k3(); ++i) mult *= 3;
  for (auto& h : hist) h /= mult;
  return hist;
}

}  // namespace

TEST_SUITE("code") {

TEST_CASE("graph code layout: omega diagonal, unit edges") {
  GeneratorMatrix k2 = k2_code();
  CHECK(k2.length() == 2);
  CHECK(k2.at(0, 0) == F9::omega());
  CHECK(k2.at(1, 1) == F9::omega());
  CHECK(k2.at(0, 1) == F9::one());
  CHECK(k2.at(1, 0) == F9::one());

  MdcSpec cube;
  cube.shape = GroupShape{{2, 4}};
  cube.connections = {{0, 1}, {0, 3}, {1, 0}};
  GeneratorMatrix m = graph_code(build_graph(cube));
  for (int i = 0; i < 8; ++i) {
    CHECK(m.at(i, i) == F9::omega());
    int nonzero = 0;
    for (int j = 0; j < 8; ++j)
      if (!m.at(i, j).is_zero()) ++nonzero;
    CHECK(nonzero == 4);  // three edges plus the diagonal
  }

  Graph g(2);
  g.add_edge(0, 1);
  GeneratorMatrix doubled = graph_code(g, F3(2));
  CHECK(doubled.at(0, 1) == F9(F3(2), F3(0)));
  CHECK_THROWS_AS(graph_code(g, F3(0)), std::invalid_argument);

  Graph loop(2);
  loop.set_arc(0, 0, true);
  CHECK_THROWS_AS(graph_code(loop), std::invalid_argument);
}

TEST_CASE("generator matrix shape checks") {
  CHECK_THROWS_AS(GeneratorMatrix({}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorMatrix({{F9::one(), F9::zero()}}), std::invalid_argument);
}

TEST_CASE("rank over the prime field") {
  CHECK(f3_rank(k2_code()) == 2);

  std::vector<F9Vec> diag(3, F9Vec(3));
  for (int i = 0; i < 3; ++i) diag[i][i] = F9::omega();
  CHECK(f3_rank(GeneratorMatrix(diag)) == 3);

  // second row is twice the first, an F3 dependence
  std::vector<F9Vec> dep = {{F9::omega(), F9::one()},
                            {F9::omega() + F9::omega(), F9::one() + F9::one()}};
  CHECK(f3_rank(GeneratorMatrix(dep)) == 1);

  // 1 and w in the same column are F3 independent
  std::vector<F9Vec> ind = {{F9::one(), F9::zero()}, {F9::omega(), F9::zero()}};
  CHECK(f3_rank(GeneratorMatrix(ind)) == 2);

  std::vector<F9Vec> zero = {{F9::zero()}};
  CHECK(f3_rank(GeneratorMatrix(zero)) == 0);
}

TEST_CASE("codewords are F3-linear combinations of rows") {
  AdditiveCode code(k2_code());
  CHECK(code.k3() == 2);
  CHECK(code.codeword({F3(1), F3(0)}) == F9Vec{F9::omega(), F9::one()});
  CHECK(code.codeword({F3(0), F3(0)}) == F9Vec(2));
  CHECK_THROWS_AS(code.codeword({F3(1)}), std::invalid_argument);

  SplitMix64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = qmdc_test::random_graph(rng, 6);
    AdditiveCode c(graph_code(g));
    F3Vec u(6), v(6), sum(6);
    for (int i = 0; i < 6; ++i) {
      u[i] = F3(static_cast<int>(rng.below(3)));
      v[i] = F3(static_cast<int>(rng.below(3)));
      sum[i] = u[i] + v[i];
    }
    F9Vec lhs = c.codeword(sum);
    F9Vec rhs = c.codeword(u);
    F9Vec rv = c.codeword(v);
    for (int i = 0; i < 6; ++i) CHECK(lhs[i] == rhs[i] + rv[i]);
  }
}

TEST_CASE("graph codes are self-dual; corruption is pinpointed") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = qmdc_test::random_graph(rng, 4 + static_cast<int>(rng.below(8)));
    SelfDualReport rep = is_self_dual(AdditiveCode(graph_code(g)));
    CHECK(rep.self_dual);
    CHECK(rep.rank == g.order());
    CHECK(rep.violating_pairs.empty());
  }

  const Fixture& q51 = fixture("Q51");
  SelfDualReport big = is_self_dual(AdditiveCode(graph_code(build_graph(q51.spec))));
  CHECK(big.self_dual);
  CHECK(big.rank == 51);

  // zero out one edge entry: rows 0 and 1 stop being trace orthogonal
  std::vector<F9Vec> rows = {{F9::omega(), F9::zero()}, {F9::one(), F9::omega()}};
  SelfDualReport bad = is_self_dual(AdditiveCode(GeneratorMatrix(rows)));
  CHECK_FALSE(bad.self_dual);
  REQUIRE_FALSE(bad.violating_pairs.empty());
  CHECK(bad.violating_pairs.front() == std::pair<int, int>{0, 1});

  // orthogonal but rank deficient: still not self-dual
  std::vector<F9Vec> dep = {{F9::omega(), F9::one()},
                            {F9::omega() + F9::omega(), F9::one() + F9::one()}};
  SelfDualReport def = is_self_dual(AdditiveCode(GeneratorMatrix(dep)));
  CHECK_FALSE(def.self_dual);
  CHECK(def.violating_pairs.empty());
  CHECK(def.rank == 1);
}

TEST_CASE("qutrit labels") {
  CodeParams p;
  p.n = 51;
  p.k3 = 51;
  CHECK(p.qutrit_label() == "[[51, 0, ?]]_3");
  p.d = 16;
  CHECK(p.qutrit_label() == "[[51, 0, 16]]_3");
  p.n = 5;
  p.k3 = 4;
  p.d.reset();
  CHECK(p.qutrit_label() == "[[5, 1, ?]]_3");
}

TEST_CASE("weight enumerator: known distributions and cap") {
  std::vector<F9Vec> diag2(2, F9Vec(2));
  diag2[0][0] = F9::omega();
  diag2[1][1] = F9::omega();
  CHECK(weight_enumerator(AdditiveCode(GeneratorMatrix(diag2))) ==
        std::vector<long long>{1, 4, 4});

  CHECK(weight_enumerator(AdditiveCode(k2_code())) == std::vector<long long>{1, 0, 8});

  // rank-deficient generator: distinct codewords counted once
  std::vector<F9Vec> dep = {{F9::omega(), F9::one()},
                            {F9::omega() + F9::omega(), F9::one() + F9::one()}};
  CHECK(weight_enumerator(AdditiveCode(GeneratorMatrix(dep))) ==
        std::vector<long long>{1, 0, 2});

  std::vector<F9Vec> wide(15, F9Vec(15));
  for (int i = 0; i < 15; ++i) wide[i][i] = F9::one();
  CHECK_THROWS_AS(weight_enumerator(AdditiveCode(GeneratorMatrix(wide))), std::length_error);
  CHECK_THROWS_AS(weight_enumerator(AdditiveCode(k2_code()), 1), std::length_error);
}

TEST_CASE("weight enumerator equals naive re-evaluation on random codes") {
  SplitMix64 rng(909);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));
    Graph g = qmdc_test::random_graph(rng, n);
    AdditiveCode code(graph_code(g));
    auto fast = weight_enumerator(code);
    auto slow = naive_enumerator(code);
    CHECK(fast == slow);

    long long total = 0;
    for (long long a : fast) total += a;
    long long expect = 1;
    for (int i = 0; i < code.k3(); ++i) expect *= 3;
    CHECK(total == expect);  // sums to the code size
    CHECK(fast[0] == 1);
  }
}

}  // TEST_SUITE

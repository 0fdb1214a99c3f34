#include <climits>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qmdc/code.hpp"
#include "qmdc/distance.hpp"
#include "qmdc/rng.hpp"

using namespace qmdc;

namespace {

AdditiveCode k2() {
  Graph g(2);
  g.add_edge(0, 1);
  return AdditiveCode(graph_code(g));
}

// Minimum nonzero weight by evaluating every coefficient vector from scratch.
int naive_min_weight(const AdditiveCode& code) {
  const int n = code.length();
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  int best = INT_MAX;
  for (long long v = 1; v < total; ++v) {
    F3Vec coeffs(n);
    long long x = v;
    for (int i = 0; i < n; ++i) {
      coeffs[i] = F3(static_cast<int>(x % 3));
      x /= 3;
    }
    int w = weight(code.codeword(coeffs));
    if (w && w < best) best = w;
  }
  return best;
}

long long pow3(int n) {
  long long r = 1;
  while (n--) r *= 3;
  return r;
}

}  // namespace

TEST_SUITE("distance") {

TEST_CASE("exact scan agrees with the naive oracle and counts its work") {
  SplitMix64 rng(5150);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng.below(6));  // up to 7
    Graph g = qmdc_test::random_graph(rng, n);
    AdditiveCode code(graph_code(g));
    DistanceResult res = exact_min_weight(code);
    CHECK(res.value == naive_min_weight(code));
    CHECK(res.work == static_cast<uint64_t>(pow3(n) - 1));
    CHECK(res.certified == Certified::exact_value);
    CHECK(res.mode == DistanceMode::exact);
    CHECK_FALSE(res.seed.has_value());
  }
}

TEST_CASE("parallel exact scan matches serial, including the work count") {
  SplitMix64 rng(31337);
  Graph g = qmdc_test::random_graph(rng, 7);
  AdditiveCode code(graph_code(g));
  DistanceResult serial = exact_min_weight(code);
  for (int workers : {2, 3, 5}) {
    DistanceOptions opts;
    opts.workers = workers;
    DistanceResult par = exact_min_weight(code, opts);
    CHECK(par.value == serial.value);
    CHECK(par.work == serial.work);
    CHECK(par.certified == Certified::exact_value);
  }
}

TEST_CASE("exact scan refuses lengths over the cap") {
  std::vector<F9Vec> big(21, F9Vec(21));
  for (int i = 0; i < 21; ++i) big[i][i] = F9::omega();
  CHECK_THROWS_AS(exact_min_weight(AdditiveCode(GeneratorMatrix(big))), feasibility_error);

  DistanceOptions tight;
  tight.exact_cap = 1;
  CHECK_THROWS_WITH_AS(exact_min_weight(k2(), tight), doctest::Contains("cap"),
                       feasibility_error);
}

TEST_CASE("threshold scan completes exactly when no word beats the threshold") {
  AdditiveCode code = k2();
  DistanceResult done = min_weight_with_abort(code, 2);
  CHECK(done.value == 2);
  CHECK(done.certified == Certified::exact_value);
  CHECK(done.mode == DistanceMode::threshold);
  CHECK(done.work == 8);

  DistanceResult aborted = min_weight_with_abort(code, 3);
  CHECK(aborted.certified == Certified::upper_bound_at_most);
  CHECK(aborted.value == 2);
  CHECK(aborted.work < 8);

  CHECK_THROWS_AS(min_weight_with_abort(code, 0), std::invalid_argument);

  SplitMix64 rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = qmdc_test::random_graph(rng, 5 + static_cast<int>(rng.below(3)));
    AdditiveCode c(graph_code(g));
    int d = exact_min_weight(c).value;
    DistanceResult at = min_weight_with_abort(c, d);
    CHECK(at.certified == Certified::exact_value);
    CHECK(at.value == d);
    DistanceResult above = min_weight_with_abort(c, d + 1);
    CHECK(above.certified == Certified::upper_bound_at_most);
    CHECK(above.value <= d);
    DistanceResult low = min_weight_with_abort(c, 1);
    CHECK(low.certified == Certified::exact_value);
    CHECK(low.value == d);
  }
}

TEST_CASE("prime-field image interleaves coordinate pairs") {
  auto img = f3_image(k2());
  REQUIRE(img.size() == 2);
  CHECK(img[0] == F3Vec{F3(0), F3(1), F3(1), F3(0)});
  CHECK(img[1] == F3Vec{F3(1), F3(0), F3(0), F3(1)});
}

TEST_CASE("information-set search: sound upper bounds, deterministic replay") {
  SplitMix64 rng(888);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + static_cast<int>(rng.below(6));
    Graph g = qmdc_test::random_graph(rng, n);
    AdditiveCode code(graph_code(g));
    int d = exact_min_weight(code).value;

    Budget budget{40, 0};
    DistanceResult res = upper_bound_search(code, rng.next(), budget);
    CHECK(res.value >= d);
    CHECK(res.value <= n);
    CHECK(res.mode == DistanceMode::upper);
    CHECK(res.certified == Certified::upper_bound_at_most);
    REQUIRE(res.seed.has_value());
  }

  // a couple of dozen iterations pin the true distance on tiny codes
  AdditiveCode small = k2();
  DistanceResult found = upper_bound_search(small, 7, Budget{20, 0});
  CHECK(found.value == 2);

  // zero budget: the trivial bound, no work done
  DistanceResult trivial = upper_bound_search(small, 7, Budget{0, 0});
  CHECK(trivial.value == 2);  // length of K2
  CHECK(trivial.work == 0);

  // identical (seed, budget, depth) runs replay exactly, and the result does
  // not depend on the worker count
  SplitMix64 rng2(999);
  Graph g = qmdc_test::random_graph(rng2, 9);
  AdditiveCode code(graph_code(g));
  DistanceResult a = upper_bound_search(code, 42, Budget{60, 0});
  DistanceResult b = upper_bound_search(code, 42, Budget{60, 0});
  CHECK(a.value == b.value);
  CHECK(a.work == b.work);
  for (int workers : {2, 4}) {
    DistanceOptions opts;
    opts.workers = workers;
    DistanceResult c = upper_bound_search(code, 42, Budget{60, 0}, opts);
    CHECK(c.value == a.value);
    CHECK(c.work == a.work);
  }

  // a different depth explores a different set of combinations
  DistanceOptions d1;
  d1.depth = 1;
  DistanceResult shallow = upper_bound_search(code, 42, Budget{60, 0}, d1);
  CHECK(shallow.work < a.work);
  CHECK(shallow.value >= a.value);

  // early stop: the first iteration already meets a target of n
  DistanceOptions stopper;
  stopper.stop_at = code.length();
  DistanceResult stopped = upper_bound_search(code, 42, Budget{60, 0}, stopper);
  CHECK(stopped.value <= code.length());
  CHECK(stopped.work < a.work);
}

TEST_CASE("accumulating floor: sound, monotone in budget, trivial at zero") {
  AdditiveCode code = k2();
  DistanceResult zero = bz_hamming_floor(code, Budget{0, 0});
  CHECK(zero.value == 1);
  CHECK(zero.work == 0);
  CHECK(zero.mode == DistanceMode::floor);
  CHECK(zero.certified == Certified::lower_bound_at_least);

  DistanceResult full = bz_hamming_floor(code, Budget{1000000, 0});
  CHECK(full.value >= 1);
  CHECK(full.value <= 2);

  SplitMix64 rng(246);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(rng.below(6));
    Graph g = qmdc_test::random_graph(rng, n);
    AdditiveCode c(graph_code(g));
    int d = exact_min_weight(c).value;
    DistanceResult fl = bz_hamming_floor(c, Budget{200000, 0});
    CHECK(fl.value >= 1);
    CHECK(fl.value <= d);
    DistanceResult capped = bz_hamming_floor(c, Budget{50, 0});
    CHECK(capped.work <= 50);
    CHECK(capped.value <= d);
  }
}

}  // TEST_SUITE

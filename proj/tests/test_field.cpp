#include <array>
#include <vector>

#include "doctest.h"
#include "qmdc/field.hpp"

using namespace qmdc;

namespace {

// Test-side model of GF(9): coefficient pairs (c0, c1) mod 3, multiplied as
// polynomials in w and reduced by substituting w^2 = w + 1.  Kept separate
// from the library implementation on purpose.
struct Model {
  int c0, c1;
};

Model model_of(F9 x) { return {x.c0().value(), x.c1().value()}; }

Model model_mul(Model a, Model b) {
  int lo = a.c0 * b.c0;              // constant term
  int mid = a.c0 * b.c1 + a.c1 * b.c0;  // w term
  int hi = a.c1 * b.c1;              // w^2 term, folds into both
  return {(lo + hi) % 3, (mid + hi) % 3};
}

bool model_eq(Model a, F9 x) { return a.c0 == x.c0().value() && a.c1 == x.c1().value(); }

std::array<F9, 9> all_elements() {
  std::array<F9, 9> e;
  for (int t = 0; t < 9; ++t) e[t] = F9::from_token(t);
  return e;
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("token encoding round-trips and rejects out-of-range") {
  for (int t = 0; t < 9; ++t) CHECK(F9::from_token(t).token() == t);
  CHECK(F9::from_token(3) == F9::omega());
  CHECK(F9::from_token(1) == F9::one());
  CHECK(F9::from_token(0).is_zero());
  CHECK_THROWS_AS(F9::from_token(9), std::out_of_range);
  CHECK_THROWS_AS(F9::from_token(-1), std::out_of_range);
}

TEST_CASE("field axioms hold for every element tuple") {
  auto e = all_elements();
  const F9 zero = F9::zero(), one = F9::one();

  for (F9 x : e) {
    CHECK(x + zero == x);
    CHECK(x * one == x);
    CHECK(x * zero == zero);
    CHECK(x + (-x) == zero);
    CHECK(x - x == zero);
  }

  for (F9 x : e)
    for (F9 y : e) {
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK(model_eq(model_mul(model_of(x), model_of(y)), x * y));
      if (!(x * y).is_zero()) continue;
      CHECK((x.is_zero() || y.is_zero()));  // no zero divisors
    }

  for (F9 x : e)
    for (F9 y : e)
      for (F9 z : e) {
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
      }

  // every nonzero element has a multiplicative inverse
  for (F9 x : e) {
    if (x.is_zero()) continue;
    bool found = false;
    for (F9 y : e)
      if (x * y == one) found = true;
    CHECK(found);
  }
}

TEST_CASE("omega powers match the arithmetic model") {
  // w generates GF(9)*: successive powers in token form.
  const std::array<int, 8> expected_tokens = {1, 3, 4, 7, 2, 6, 8, 5};
  Model acc{1, 0};
  for (int k = 0; k < 8; ++k) {
    F9 p = F9::from_power(k);
    CHECK(p.token() == expected_tokens[k]);
    CHECK(model_eq(acc, p));
    acc = model_mul(acc, {0, 1});
  }
  CHECK(F9::from_power(1) * F9::from_power(1) == F9::omega() + F9::one());  // w^2 = w + 1
  CHECK(F9::from_power(4) == F9(F3(2), F3(0)));                             // w^4 = 2
  CHECK(F9::from_power(7) * F9::omega() == F9::one());                      // order 8
  CHECK_THROWS_AS(F9::from_power(8), std::out_of_range);
  CHECK_THROWS_AS(F9::from_power(-1), std::out_of_range);
}

TEST_CASE("conjugation is the Frobenius involution fixing GF(3)") {
  auto e = all_elements();
  for (F9 x : e) {
    CHECK(x.conj() == x * x * x);
    CHECK(x.conj().conj() == x);
    bool in_prime_field = x.c1() == F3(0);
    CHECK((x.conj() == x) == in_prime_field);
  }
  for (F9 x : e)
    for (F9 y : e) {
      CHECK((x + y).conj() == x.conj() + y.conj());
      CHECK((x * y).conj() == x.conj() * y.conj());
    }
  CHECK(F9::omega().conj() == F9(F3(1), F3(2)));  // w^3 = 2w + 1
}

TEST_CASE("trace-Hermitian form: range, antisymmetry, bilinearity") {
  auto e = all_elements();
  const F9 w2 = F9::omega() * F9::omega();

  for (F9 x : e)
    for (F9 y : e) {
      // the defining expression lands in the prime subfield
      F9 z = w2 * (x * y.conj() - x.conj() * y);
      CHECK(z.c1() == F3(0));
      CHECK(trace_hermitian(x, y) == z.c0());
      CHECK(trace_hermitian(x, y) == -trace_hermitian(y, x));
    }

  for (F9 x : e) CHECK(trace_hermitian(x, x) == F3(0));

  for (F9 x : e)
    for (F9 y : e)
      for (F9 z : e) {
        CHECK(trace_hermitian(x + z, y) == trace_hermitian(x, y) + trace_hermitian(z, y));
        CHECK(trace_hermitian(x, y + z) == trace_hermitian(x, y) + trace_hermitian(x, z));
      }

  CHECK(trace_hermitian(F9::omega(), F9::one()) == F3(1));
  CHECK(trace_hermitian(F9::one(), F9::omega()) == F3(2));
  CHECK(trace_hermitian(F9::one(), F9::one()) == F3(0));
}

TEST_CASE("vector form and weight") {
  F9Vec u = {F9::omega(), F9::one(), F9::zero()};
  F9Vec v = {F9::one(), F9::omega(), F9::zero()};
  CHECK(trace_hermitian_vec(u, v) == F3(1) + F3(2));
  CHECK(trace_hermitian_vec(u, u) == F3(0));
  CHECK(weight(u) == 2);
  CHECK(weight(F9Vec(4)) == 0);

  F9Vec bad = {F9::one()};
  CHECK_THROWS_AS(trace_hermitian_vec(u, bad), std::invalid_argument);
}

}  // TEST_SUITE

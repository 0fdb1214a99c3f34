#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qmdc {

// GF(3) scalar, value in {0, 1, 2}.
class F3 {
 public:
  constexpr F3() = default;
  constexpr explicit F3(int v) : v_(static_cast<uint8_t>(((v % 3) + 3) % 3)) {}

  constexpr int value() const { return v_; }

  friend constexpr F3 operator+(F3 a, F3 b) { return F3(a.v_ + b.v_); }
  friend constexpr F3 operator-(F3 a, F3 b) { return F3(a.v_ + 3 - b.v_); }
  friend constexpr F3 operator*(F3 a, F3 b) { return F3(a.v_ * b.v_); }
  constexpr F3 operator-() const { return F3(3 - v_); }
  friend constexpr bool operator==(F3 a, F3 b) = default;

 private:
  uint8_t v_ = 0;
};

// GF(9) = GF(3)[w] / (w^2 - w - 1), stored as c0 + c1*w with c0, c1 in GF(3).
// Token encoding for I/O is e = c0 + 3*c1, so tokens run 0..8 and token 3 is w.
class F9 {
 public:
  constexpr F9() = default;
  constexpr F9(F3 c0, F3 c1) : c0_(c0), c1_(c1) {}

  static constexpr F9 zero() { return F9(); }
  static constexpr F9 one() { return F9(F3(1), F3(0)); }
  static constexpr F9 omega() { return F9(F3(0), F3(1)); }

  // w^k for 0 <= k <= 7; w generates the multiplicative group.
  static constexpr F9 from_power(int k) {
    if (k < 0 || k > 7) throw std::out_of_range("F9::from_power: exponent must be in 0..7");
    F9 x = one();
    for (int i = 0; i < k; ++i) x = x * omega();
    return x;
  }

  static constexpr F9 from_token(int e) {
    if (e < 0 || e > 8) throw std::out_of_range("F9::from_token: token must be in 0..8");
    return F9(F3(e % 3), F3(e / 3));
  }

  constexpr int token() const { return c0_.value() + 3 * c1_.value(); }
  constexpr F3 c0() const { return c0_; }
  constexpr F3 c1() const { return c1_; }
  constexpr bool is_zero() const { return c0_ == F3(0) && c1_ == F3(0); }

  friend constexpr F9 operator+(F9 a, F9 b) { return F9(a.c0_ + b.c0_, a.c1_ + b.c1_); }
  friend constexpr F9 operator-(F9 a, F9 b) { return F9(a.c0_ - b.c0_, a.c1_ - b.c1_); }
  constexpr F9 operator-() const { return F9(-c0_, -c1_); }

  // (a0 + a1 w)(b0 + b1 w) reduced by w^2 = w + 1.
  friend constexpr F9 operator*(F9 a, F9 b) {
    F3 lo = a.c0_ * b.c0_ + a.c1_ * b.c1_;
    F3 hi = a.c0_ * b.c1_ + a.c1_ * b.c0_ + a.c1_ * b.c1_;
    return F9(lo, hi);
  }

  // Frobenius conjugate x^3, an involution that fixes exactly GF(3).
  constexpr F9 conj() const { return *this * *this * *this; }

  friend constexpr bool operator==(F9 a, F9 b) = default;

 private:
  F3 c0_, c1_;
};

constexpr F9 operator*(F3 a, F9 x) { return F9(a, F3(0)) * x; }
constexpr F9 operator*(F9 x, F3 a) { return a * x; }

using F3Vec = std::vector<F3>;
using F9Vec = std::vector<F9>;

// Trace-Hermitian form <x,y> = w^2 (x conj(y) - conj(x) y).  The difference is
// killed by conjugation up to sign, so after the w^2 twist the value lies in
// the prime subfield; returned as a GF(3) scalar.
inline F3 trace_hermitian(F9 x, F9 y) {
  const F9 w2 = F9::omega() * F9::omega();
  F9 z = w2 * (x * y.conj() - x.conj() * y);
  assert(z.c1() == F3(0));
  return z.c0();
}

inline F3 trace_hermitian_vec(const F9Vec& u, const F9Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("trace_hermitian_vec: length mismatch");
  F3 acc;
  for (size_t i = 0; i < u.size(); ++i) acc = acc + trace_hermitian(u[i], v[i]);
  return acc;
}

// Number of nonzero coordinates.
inline int weight(const F9Vec& v) {
  int w = 0;
  for (F9 x : v)
    if (!x.is_zero()) ++w;
  return w;
}

}  // namespace qmdc

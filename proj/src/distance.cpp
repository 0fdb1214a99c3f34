#include "qmdc/distance.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <climits>
#include <thread>
#include <vector>

#include "qmdc/rng.hpp"

namespace qmdc {

const char* to_string(DistanceMode m) {
  switch (m) {
    case DistanceMode::exact: return "exact";
    case DistanceMode::threshold: return "threshold";
    case DistanceMode::upper: return "upper";
    case DistanceMode::floor: return "floor";
  }
  return "?";
}

const char* to_string(Certified c) {
  switch (c) {
    case Certified::exact_value: return "exact-value";
    case Certified::lower_bound_at_least: return "lower-bound-at-least";
    case Certified::upper_bound_at_most: return "upper-bound-at-most";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// GF(3) digits held as two bit planes, p = ones and q = twos.  Addition is
// carry-free: writing z for the zero lanes of each side, the ones of the sum
// are 2+2, 1+0 and 0+1, the twos are 1+1, 2+0 and 0+2.
inline void plane_add(uint64_t& p, uint64_t& q, uint64_t s, uint64_t t) {
  const uint64_t zr = ~(p | q), zs = ~(s | t);
  const uint64_t np = (q & t) | (p & zs) | (s & zr);
  const uint64_t nq = (p & s) | (q & zs) | (t & zr);
  p = np;
  q = nq;
}

// GF(9)^n vector as four planes: a = c0 digit, b = c1 digit.
struct PackedVec {
  std::vector<uint64_t> a1, a2, b1, b2;
  explicit PackedVec(int words = 0) : a1(words), a2(words), b1(words), b2(words) {}
};

inline void vec_add(PackedVec& acc, const PackedVec& r, int words) {
  for (int w = 0; w < words; ++w) {
    plane_add(acc.a1[w], acc.a2[w], r.a1[w], r.a2[w]);
    plane_add(acc.b1[w], acc.b2[w], r.b1[w], r.b2[w]);
  }
}

// Subtraction adds the negation; negating a GF(3) digit swaps the planes.
inline void vec_sub(PackedVec& acc, const PackedVec& r, int words) {
  for (int w = 0; w < words; ++w) {
    plane_add(acc.a1[w], acc.a2[w], r.a2[w], r.a1[w]);
    plane_add(acc.b1[w], acc.b2[w], r.b2[w], r.b1[w]);
  }
}

inline int trace_weight(const PackedVec& v, int words) {
  int w = 0;
  for (int i = 0; i < words; ++i)
    w += std::popcount(v.a1[i] | v.a2[i] | v.b1[i] | v.b2[i]);
  return w;
}

std::vector<PackedVec> pack_rows(const AdditiveCode& code, int words) {
  const int n = code.length();
  std::vector<PackedVec> rows(n, PackedVec(words));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      F9 x = code.generator().at(i, j);
      uint64_t bit = 1ull << (j & 63);
      size_t w = static_cast<size_t>(j) >> 6;
      if (x.c0() == F3(1)) rows[i].a1[w] |= bit;
      if (x.c0() == F3(2)) rows[i].a2[w] |= bit;
      if (x.c1() == F3(1)) rows[i].b1[w] |= bit;
      if (x.c1() == F3(2)) rows[i].b2[w] |= bit;
    }
  }
  return rows;
}

struct ScanOutcome {
  int min_w = INT_MAX;
  uint64_t visited = 0;
  bool aborted = false;
};

// Walks all 3^lo coefficient vectors over digits [0, lo) on top of a fixed
// accumulator, in reflected ternary Gray order so each step is a single row
// add or subtract (loopless focus-pointer scheme).  abort_below of 0
// disables the early exit.
ScanOutcome gray_scan(const std::vector<PackedVec>& rows, int lo, int words, PackedVec acc,
                      bool count_base, int abort_below, std::atomic<bool>* stop) {
  ScanOutcome out;
  if (count_base) {
    out.visited = 1;
    out.min_w = trace_weight(acc, words);
    if (abort_below && out.min_w < abort_below) {
      out.aborted = true;
      return out;
    }
  }
  if (lo == 0) return out;

  std::vector<int> digit(lo, 0), dir(lo, 1), focus(lo + 1);
  for (int i = 0; i <= lo; ++i) focus[i] = i;
  for (;;) {
    if (stop && stop->load(std::memory_order_relaxed)) return out;
    int j = focus[0];
    focus[0] = 0;
    if (j == lo) break;
    if (dir[j] > 0) {
      ++digit[j];
      vec_add(acc, rows[j], words);
    } else {
      --digit[j];
      vec_sub(acc, rows[j], words);
    }
    if (digit[j] == 0 || digit[j] == 2) {
      dir[j] = -dir[j];
      focus[j] = focus[j + 1];
      focus[j + 1] = j + 1;
    }
    ++out.visited;
    int w = trace_weight(acc, words);
    if (w < out.min_w) out.min_w = w;
    if (abort_below && w < abort_below) {
      out.aborted = true;
      return out;
    }
  }
  return out;
}

// Shared driver for exact and threshold scans.  The coefficient space is cut
// into 3^t subtrees on the top digits, handed to workers through a shared
// counter; the zero subtree skips the all-zero vector, so a completed scan
// always visits exactly 3^n - 1 nonzero vectors.
DistanceResult scan_all(const AdditiveCode& code, int abort_below, const DistanceOptions& opts,
                        DistanceMode mode) {
  const auto t0 = Clock::now();
  const int n = code.length();
  if (n > opts.exact_cap)
    throw feasibility_error("exact enumeration at length " + std::to_string(n) +
                            " exceeds cap " + std::to_string(opts.exact_cap) +
                            "; use the upper or threshold modes instead");
  const int words = (n + 63) / 64;
  const auto rows = pack_rows(code, words);

  const int workers = std::max(1, opts.workers);
  int t = 0;
  long long subtrees = 1;
  while (subtrees < workers && t < n) {
    subtrees *= 3;
    ++t;
  }
  const int lo = n - t;

  std::atomic<long long> next{0};
  std::atomic<bool> stop{false};
  std::atomic<uint64_t> total_work{0};
  std::atomic<int> best{INT_MAX};
  std::atomic<bool> any_abort{false};

  auto run = [&] {
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) return;
      long long s = next.fetch_add(1);
      if (s >= subtrees) return;
      PackedVec acc(words);
      long long x = s;
      for (int d = 0; d < t; ++d) {
        int dig = static_cast<int>(x % 3);
        x /= 3;
        for (int rep = 0; rep < dig; ++rep) vec_add(acc, rows[lo + d], words);
      }
      auto out = gray_scan(rows, lo, words, std::move(acc), s != 0, abort_below, &stop);
      total_work += out.visited;
      int cur = best.load();
      while (out.min_w < cur && !best.compare_exchange_weak(cur, out.min_w)) {
      }
      if (out.aborted) {
        any_abort = true;
        stop = true;
      }
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  DistanceResult res;
  res.mode = mode;
  res.value = best.load();
  res.certified = any_abort ? Certified::upper_bound_at_most : Certified::exact_value;
  res.work = total_work.load();
  res.elapsed_ms = ms_since(t0);
  return res;
}

}  // namespace

DistanceResult exact_min_weight(const AdditiveCode& code, const DistanceOptions& opts) {
  return scan_all(code, 0, opts, DistanceMode::exact);
}

DistanceResult min_weight_with_abort(const AdditiveCode& code, int threshold,
                                     const DistanceOptions& opts) {
  if (threshold < 1) throw std::invalid_argument("min_weight_with_abort: threshold must be >= 1");
  return scan_all(code, threshold, opts, DistanceMode::threshold);
}

std::vector<F3Vec> f3_image(const AdditiveCode& code) {
  const int n = code.length();
  std::vector<F3Vec> img(n, F3Vec(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      img[i][2 * j] = code.generator().at(i, j).c0();
      img[i][2 * j + 1] = code.generator().at(i, j).c1();
    }
  }
  return img;
}

namespace {

// Flat bit-plane matrix over GF(3) with 2n columns, used by the row
// reduction based searches.
struct F3Matrix {
  int rows = 0, cols = 0, words = 0;
  std::vector<uint64_t> p, q;  // rows * words each

  F3Matrix(int r, int c) : rows(r), cols(c), words((c + 63) / 64), p(r * words), q(r * words) {}

  uint64_t* prow(int r) { return p.data() + static_cast<size_t>(r) * words; }
  uint64_t* qrow(int r) { return q.data() + static_cast<size_t>(r) * words; }
  const uint64_t* prow(int r) const { return p.data() + static_cast<size_t>(r) * words; }
  const uint64_t* qrow(int r) const { return q.data() + static_cast<size_t>(r) * words; }

  int digit(int r, int c) const {
    size_t w = static_cast<size_t>(c) >> 6;
    int b = c & 63;
    return static_cast<int>((prow(r)[w] >> b) & 1) + 2 * static_cast<int>((qrow(r)[w] >> b) & 1);
  }

  void swap_rows(int a, int b) {
    for (int w = 0; w < words; ++w) {
      std::swap(prow(a)[w], prow(b)[w]);
      std::swap(qrow(a)[w], qrow(b)[w]);
    }
  }

  void scale2(int r) {
    for (int w = 0; w < words; ++w) std::swap(prow(r)[w], qrow(r)[w]);
  }

  // row t -= d * row r for d in {1, 2}
  void eliminate(int t, int r, int d) {
    uint64_t* tp = prow(t);
    uint64_t* tq = qrow(t);
    const uint64_t* rp = prow(r);
    const uint64_t* rq = qrow(r);
    if (d == 1) {
      for (int w = 0; w < words; ++w) plane_add(tp[w], tq[w], rq[w], rp[w]);
    } else {
      for (int w = 0; w < words; ++w) plane_add(tp[w], tq[w], rp[w], rq[w]);
    }
  }
};

F3Matrix pack_image(const AdditiveCode& code) {
  const int n = code.length();
  F3Matrix m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      F9 x = code.generator().at(i, j);
      auto set = [&](int col, F3 v) {
        size_t w = static_cast<size_t>(col) >> 6;
        uint64_t bit = 1ull << (col & 63);
        if (v == F3(1)) m.prow(i)[w] |= bit;
        if (v == F3(2)) m.qrow(i)[w] |= bit;
      };
      set(2 * j, x.c0());
      set(2 * j + 1, x.c1());
    }
  }
  return m;
}

// Reduced row echelon form following the given column order; returns the
// pivot columns in the order they were claimed.
std::vector<int> rref(F3Matrix& m, const std::vector<int>& col_order) {
  std::vector<int> pivots;
  int r = 0;
  for (int c : col_order) {
    if (r == m.rows) break;
    int pr = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.digit(i, c)) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    m.swap_rows(pr, r);
    if (m.digit(r, c) == 2) m.scale2(r);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      int d = m.digit(i, c);
      if (d) m.eliminate(i, r, d);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Number of GF(9) coordinates (column pairs) with a nonzero digit.
inline int pair_weight(const uint64_t* p, const uint64_t* q, int words) {
  int w = 0;
  for (int i = 0; i < words; ++i) {
    uint64_t m = p[i] | q[i];
    w += std::popcount((m | (m >> 1)) & 0x5555555555555555ull);
  }
  return w;
}

inline int hamming_weight(const uint64_t* p, const uint64_t* q, int words) {
  int w = 0;
  for (int i = 0; i < words; ++i) w += std::popcount(p[i] | q[i]);
  return w;
}

// acc += c * row, planes given directly
inline void acc_add(std::vector<uint64_t>& ap, std::vector<uint64_t>& aq, const uint64_t* rp,
                    const uint64_t* rq, int c, int words) {
  if (c == 1) {
    for (int w = 0; w < words; ++w) plane_add(ap[w], aq[w], rp[w], rq[w]);
  } else {
    for (int w = 0; w < words; ++w) plane_add(ap[w], aq[w], rq[w], rp[w]);
  }
}

}  // namespace

DistanceResult upper_bound_search(const AdditiveCode& code, uint64_t seed, const Budget& budget,
                                  const DistanceOptions& opts) {
  const auto t0 = Clock::now();
  const int n = code.length();
  const int cols = 2 * n;
  const int depth = std::clamp(opts.depth, 1, 4);
  const F3Matrix image = pack_image(code);
  const int words = image.words;

  const int workers = std::max(1, opts.workers);
  std::atomic<uint64_t> next_iter{0};
  std::atomic<uint64_t> total_work{0};
  std::atomic<int> best{n};  // weight n is always attainable, so a safe start
  std::atomic<bool> stop{false};

  auto deadline_hit = [&] {
    return budget.max_seconds > 0 && ms_since(t0) >= budget.max_seconds * 1000.0;
  };

  auto run = [&] {
    std::vector<int> order(cols);
    std::vector<uint64_t> acc1p(words), acc1q(words), acc2p(words), acc2q(words);
    std::vector<uint64_t> acc3p(words), acc3q(words), acc4p(words), acc4q(words);
    uint64_t local_work = 0;
    int local_best = INT_MAX;

    auto flush = [&] {
      total_work += local_work;
      local_work = 0;
      int cur = best.load();
      while (local_best < cur && !best.compare_exchange_weak(cur, local_best)) {
      }
    };

    for (;;) {
      if (stop.load(std::memory_order_relaxed)) break;
      uint64_t it = next_iter.fetch_add(1);
      if (it >= budget.max_iterations) break;
      if (deadline_hit()) break;

      SplitMix64 rng(derive_seed(seed, it));
      for (int i = 0; i < cols; ++i) order[i] = i;
      for (int i = cols - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(static_cast<uint64_t>(i) + 1)]);

      F3Matrix m = image;
      auto pivots = rref(m, order);
      const int r = static_cast<int>(pivots.size());

      // All row combinations up to the configured depth; the leading
      // coefficient can be fixed to 1 because scaling by 2 preserves weight.
      for (int i = 0; i < r; ++i) {
        std::copy_n(m.prow(i), words, acc1p.begin());
        std::copy_n(m.qrow(i), words, acc1q.begin());
        ++local_work;
        local_best = std::min(local_best, pair_weight(acc1p.data(), acc1q.data(), words));
        if (depth < 2) continue;
        for (int j = i + 1; j < r; ++j) {
          for (int cj = 1; cj <= 2; ++cj) {
            acc2p = acc1p;
            acc2q = acc1q;
            acc_add(acc2p, acc2q, m.prow(j), m.qrow(j), cj, words);
            ++local_work;
            local_best = std::min(local_best, pair_weight(acc2p.data(), acc2q.data(), words));
            if (depth < 3) continue;
            for (int k = j + 1; k < r; ++k) {
              for (int ck = 1; ck <= 2; ++ck) {
                acc3p = acc2p;
                acc3q = acc2q;
                acc_add(acc3p, acc3q, m.prow(k), m.qrow(k), ck, words);
                ++local_work;
                local_best = std::min(local_best, pair_weight(acc3p.data(), acc3q.data(), words));
                if (depth < 4) continue;
                for (int l = k + 1; l < r; ++l) {
                  for (int cl = 1; cl <= 2; ++cl) {
                    acc4p = acc3p;
                    acc4q = acc3q;
                    acc_add(acc4p, acc4q, m.prow(l), m.qrow(l), cl, words);
                    ++local_work;
                    local_best =
                        std::min(local_best, pair_weight(acc4p.data(), acc4q.data(), words));
                  }
                }
              }
            }
          }
        }
      }
      flush();
      if (opts.stop_at > 0 && best.load() <= opts.stop_at) {
        stop = true;
        break;
      }
    }
    flush();
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  DistanceResult res;
  res.mode = DistanceMode::upper;
  res.value = best.load();
  res.certified = Certified::upper_bound_at_most;
  res.work = total_work.load();
  res.elapsed_ms = ms_since(t0);
  res.seed = seed;
  return res;
}

DistanceResult bz_hamming_floor(const AdditiveCode& code, const Budget& budget,
                                const DistanceOptions& opts) {
  (void)opts;
  const auto t0 = Clock::now();
  const int n = code.length();
  const int cols = 2 * n;

  // Two complementary information sets: the second reduction prefers columns
  // the first one did not use, and its rank deficit on those fresh columns
  // is the overlap penalty delta.
  F3Matrix a = pack_image(code);
  std::vector<int> natural(cols);
  for (int i = 0; i < cols; ++i) natural[i] = i;
  auto pivots_a = rref(a, natural);
  const int k = static_cast<int>(pivots_a.size());

  std::vector<char> in_a(cols, 0);
  for (int c : pivots_a) in_a[c] = 1;
  std::vector<int> order_b;
  for (int c = 0; c < cols; ++c)
    if (!in_a[c]) order_b.push_back(c);
  const int fresh = static_cast<int>(order_b.size());
  for (int c = 0; c < cols; ++c)
    if (in_a[c]) order_b.push_back(c);

  F3Matrix b = pack_image(code);
  auto pivots_b = rref(b, order_b);
  int fresh_rank = 0;
  for (int c : pivots_b)
    if (!in_a[c]) ++fresh_rank;
  const int delta_b = k - fresh_rank;

  const int words = a.words;
  uint64_t work = 0;
  int found_min = INT_MAX;
  int completed = 0;

  // Enumerates every combination of exactly `weight` rows with leading
  // coefficient 1 (scaling preserves weight) and the rest in {1, 2}.
  // Returns false when the budget ran out mid-round.
  std::vector<std::vector<uint64_t>> stack_p(k + 2, std::vector<uint64_t>(words));
  std::vector<std::vector<uint64_t>> stack_q(k + 2, std::vector<uint64_t>(words));

  auto enumerate = [&](const F3Matrix& m, int weight) {
    auto rec = [&](auto&& self, int level, int start) -> bool {
      if (work >= budget.max_iterations) return false;
      if ((work & 0xfff) == 0 && budget.max_seconds > 0 &&
          ms_since(t0) >= budget.max_seconds * 1000.0)
        return false;
      for (int i = start; i <= k - (weight - level); ++i) {
        const int cmax = level == 0 ? 1 : 2;
        for (int c = 1; c <= cmax; ++c) {
          stack_p[level + 1] = stack_p[level];
          stack_q[level + 1] = stack_q[level];
          acc_add(stack_p[level + 1], stack_q[level + 1], m.prow(i), m.qrow(i), c, words);
          if (level + 1 == weight) {
            ++work;
            found_min = std::min(
                found_min, hamming_weight(stack_p[level + 1].data(), stack_q[level + 1].data(), words));
            if (work >= budget.max_iterations) return false;
          } else {
            if (!self(self, level + 1, i + 1)) return false;
          }
        }
      }
      return true;
    };
    std::fill(stack_p[0].begin(), stack_p[0].end(), 0);
    std::fill(stack_q[0].begin(), stack_q[0].end(), 0);
    return rec(rec, 0, 0);
  };

  for (int w = 1; w <= k; ++w) {
    if (!enumerate(a, w) || !enumerate(b, w)) break;
    completed = w;
    int floor_h = (completed + 1) + std::max(0, (completed + 1) - delta_b);
    if (floor_h >= found_min) break;  // exact Hamming minimum is pinned down
  }

  int floor_h = (completed + 1) + std::max(0, (completed + 1) - delta_b);
  int lower_h = std::min(found_min, floor_h);
  DistanceResult res;
  res.mode = DistanceMode::floor;
  res.value = std::max(1, (lower_h + 1) / 2);
  res.certified = Certified::lower_bound_at_least;
  res.work = work;
  res.elapsed_ms = ms_since(t0);
  return res;
}

}  // namespace qmdc

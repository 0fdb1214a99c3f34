#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmdc/code.hpp"

namespace qmdc {

// Raised when an operation is structurally valid but outside the configured
// feasibility limits (length caps, orbit caps).
class feasibility_error : public std::runtime_error {
 public:
  explicit feasibility_error(const std::string& what) : std::runtime_error(what) {}
};

enum class DistanceMode { exact, threshold, upper, floor };
enum class Certified { exact_value, lower_bound_at_least, upper_bound_at_most };

const char* to_string(DistanceMode m);
const char* to_string(Certified c);

struct DistanceResult {
  DistanceMode mode = DistanceMode::exact;
  int value = 0;
  Certified certified = Certified::exact_value;
  uint64_t work = 0;       // codewords examined
  double elapsed_ms = 0;   // wall clock; excluded from reproducibility claims
  std::optional<uint64_t> seed;
};

// Iteration/time budget for randomized and accumulating operations.
// max_iterations of 0 means "do nothing beyond the trivial bound";
// max_seconds <= 0 means no time limit.
struct Budget {
  uint64_t max_iterations = 0;
  double max_seconds = 0;
};

struct DistanceOptions {
  int exact_cap = 20;  // refuse full enumeration beyond this length
  int workers = 1;
  int depth = 3;       // row-combination depth for the information-set search
  int stop_at = 0;     // upper mode: stop once a weight <= stop_at is found
};

// Exact minimum nonzero weight by Gray-coded enumeration of all 3^n - 1
// nonzero coefficient vectors.  Deterministic; work is always 3^n - 1.
// Throws feasibility_error when n exceeds opts.exact_cap.
DistanceResult exact_min_weight(const AdditiveCode& code, const DistanceOptions& opts = {});

// Same enumeration but aborts as soon as a nonzero codeword of weight below
// threshold is seen.  On abort the result carries that weight as a certified
// upper bound; on completion the exact minimum, certified exact.
DistanceResult min_weight_with_abort(const AdditiveCode& code, int threshold,
                                     const DistanceOptions& opts = {});

// Randomized information-set search for low-weight codewords.  Each
// iteration row reduces the GF(3) image along a fresh random column order
// and scores all combinations of up to opts.depth reduced rows.  The best
// weight seen is a certified upper bound (trivially n when the budget is
// zero).  Fully determined by (seed, iteration count, depth).
DistanceResult upper_bound_search(const AdditiveCode& code, uint64_t seed, const Budget& budget,
                                  const DistanceOptions& opts = {});

// Accumulating lower bound in the Brouwer-Zimmermann style: enumerates
// low-weight coefficient combinations against complementary information
// sets of the GF(3) image, raising the floor after each completed round.
// The GF(3) Hamming bound is converted to the GF(9) weight via
// ceil(bound / 2).  A zero budget yields the trivial floor 1.
DistanceResult bz_hamming_floor(const AdditiveCode& code, const Budget& budget,
                                const DistanceOptions& opts = {});

// GF(3) image of the generator: n rows, 2n columns, entry pairs
// (c0, c1) per GF(9) coordinate.
std::vector<F3Vec> f3_image(const AdditiveCode& code);

}  // namespace qmdc

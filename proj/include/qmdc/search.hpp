#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qmdc/distance.hpp"
#include "qmdc/graph.hpp"

namespace qmdc {

// The negation-closed building blocks of connection sets: each orbit is
// either a self-inverse singleton {s} or an inverse pair {s, -s}.  Every
// valid connection set is a union of orbits, so subsets of the basis
// enumerate exactly the search space.
struct OrbitBasis {
  GroupShape shape;
  std::vector<std::vector<GroupElem>> orbits;

  int count() const { return static_cast<int>(orbits.size()); }
};

// Orbits of the nonzero group elements in mixed-radix index order, each
// listed at its smallest-index representative.
OrbitBasis inverse_pair_orbits(const GroupShape& shape);

// Connection set for an orbit subset given as a bitmask over the basis.
std::vector<GroupElem> orbit_subset(const OrbitBasis& basis, uint64_t mask);

struct SearchRecord {
  MdcSpec spec;
  int n = 0;
  int d = 0;
  std::string d_mode;  // "exact" or "upper"
  std::optional<uint64_t> seed;
  std::string found_at;  // ISO 8601 UTC
};

// Append-only JSONL sink for search records; one line per record, flushed
// immediately so an interrupted run keeps everything already found.
class ResultStore {
 public:
  explicit ResultStore(const std::string& path);
  explicit ResultStore(std::ostream& sink);
  void append(const SearchRecord& rec);

 private:
  std::unique_ptr<std::ostream> owned_;
  std::ostream* out_;
};

// Source of record timestamps.  Injectable so reruns can be byte-identical;
// the default is the current UTC time.
using ClockFn = std::function<std::string()>;

struct ExhaustiveOptions {
  int max_orbits = 24;
  bool dedup = false;  // skip subsets that are not multiplier-canonical
  int workers = 1;
  DistanceOptions dist;
  ClockFn clock;
};

struct ExhaustiveResult {
  std::vector<SearchRecord> improving;  // strictly improving d sequence
  int best_d = 0;
  uint64_t evaluated = 0;  // subsets whose distance was computed
};

// Evaluates every orbit subset of the shape, keeping candidates only when
// their exact minimum weight strictly beats the best seen so far; the
// enumeration for a candidate is cut off as soon as that is impossible.
// Improving records go to the store (when given) as they are found.
ExhaustiveResult exhaustive_search(const GroupShape& shape, bool bordered, ResultStore* store,
                                   const ExhaustiveOptions& opt = {});

struct RandomSearchOptions {
  int min_valency = 0;
  int max_valency = 1 << 30;
  int workers = 1;
  DistanceOptions dist;
  Budget screen_budget{200, 0};        // information-set budget per candidate
  std::vector<MdcSpec> preload;        // tried before any random sampling
  ClockFn clock;
};

// Samples random orbit subsets and keeps those that survive screening at the
// target distance: exact scan when the length is within the cap, otherwise
// an information-set search that rejects on any word below target.  Records
// are appended to the store in iteration order; results are independent of
// the worker count.
std::vector<SearchRecord> random_search(const GroupShape& shape, bool bordered, int target_d,
                                        uint64_t seed, const Budget& budget, ResultStore* store,
                                        const RandomSearchOptions& opt = {});

// Canonical representative of a spec under the componentwise unit
// multiplications of the group: the lexicographically smallest image of the
// connection set.  Unbordered specs only.
MdcSpec multiplier_canonical_form(const MdcSpec& spec);

}  // namespace qmdc

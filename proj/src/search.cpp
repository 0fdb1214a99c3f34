#include "qmdc/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "qmdc/code.hpp"
#include "qmdc/io.hpp"
#include "qmdc/rng.hpp"

namespace qmdc {

namespace {

using Clock = std::chrono::steady_clock;

std::string default_clock() { return iso8601_utc_now(); }

}  // namespace

OrbitBasis inverse_pair_orbits(const GroupShape& shape) {
  const int n = shape.order();
  OrbitBasis basis;
  basis.shape = shape;
  std::vector<char> seen(n, 0);
  for (int idx = 1; idx < n; ++idx) {
    if (seen[idx]) continue;
    GroupElem e = index_vertex(idx, shape);
    GroupElem ne = negate_elem(e, shape);
    int nidx = vertex_index(ne, shape);
    seen[idx] = 1;
    seen[nidx] = 1;
    if (nidx == idx)
      basis.orbits.push_back({e});
    else
      basis.orbits.push_back({e, ne});
  }
  return basis;
}

std::vector<GroupElem> orbit_subset(const OrbitBasis& basis, uint64_t mask) {
  std::vector<GroupElem> s;
  for (int i = 0; i < basis.count(); ++i)
    if ((mask >> i) & 1)
      for (const auto& e : basis.orbits[i]) s.push_back(e);
  std::sort(s.begin(), s.end());
  return s;
}

ResultStore::ResultStore(const std::string& path) {
  auto f = std::make_unique<std::ofstream>(path, std::ios::app);
  if (!*f) throw std::runtime_error("ResultStore: cannot open " + path);
  owned_ = std::move(f);
  out_ = owned_.get();
}

ResultStore::ResultStore(std::ostream& sink) : out_(&sink) {}

void ResultStore::append(const SearchRecord& rec) {
  (*out_) << record_to_json(rec) << '\n';
  out_->flush();
}

ExhaustiveResult exhaustive_search(const GroupShape& shape, bool bordered, ResultStore* store,
                                   const ExhaustiveOptions& opt) {
  OrbitBasis basis = inverse_pair_orbits(shape);
  const int p = basis.count();
  if (p > opt.max_orbits)
    throw feasibility_error("exhaustive search over 2^" + std::to_string(p) +
                            " subsets exceeds the orbit cap " + std::to_string(opt.max_orbits));
  const uint64_t total = 1ull << p;
  ClockFn clock = opt.clock ? opt.clock : default_clock;

  std::atomic<uint64_t> next{0};
  std::atomic<uint64_t> evaluated{0};
  std::atomic<int> best{0};
  std::mutex mu;
  ExhaustiveResult result;
  std::exception_ptr fail;

  auto run = [&] {
    try {
      for (;;) {
        uint64_t mask = next.fetch_add(1);
        if (mask >= total) return;
        MdcSpec spec{shape, orbit_subset(basis, mask), bordered};
        if (opt.dedup) {
          MdcSpec base = spec;
          base.bordered = false;
          if (multiplier_canonical_form(base).connections != spec.connections) continue;
        }
        AdditiveCode code(graph_code(build_graph(spec)));
        evaluated.fetch_add(1);
        DistanceOptions dopt = opt.dist;
        dopt.workers = 1;
        auto r = min_weight_with_abort(code, best.load() + 1, dopt);
        if (r.certified != Certified::exact_value) continue;
        std::lock_guard<std::mutex> lk(mu);
        if (r.value > best.load()) {
          best.store(r.value);
          SearchRecord rec;
          rec.spec = spec;
          rec.n = code.length();
          rec.d = r.value;
          rec.d_mode = "exact";
          rec.found_at = clock();
          if (store) store->append(rec);
          result.improving.push_back(std::move(rec));
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!fail) fail = std::current_exception();
      next.store(total);  // drain remaining work
    }
  };

  const int workers = std::max(1, opt.workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (fail) std::rethrow_exception(fail);

  result.best_d = best.load();
  result.evaluated = evaluated.load();
  return result;
}

std::vector<SearchRecord> random_search(const GroupShape& shape, bool bordered, int target_d,
                                        uint64_t seed, const Budget& budget, ResultStore* store,
                                        const RandomSearchOptions& opt) {
  if (target_d < 1) throw std::invalid_argument("random_search: target distance must be >= 1");
  for (const auto& pre : opt.preload) {
    if (!(pre.shape == shape) || pre.bordered != bordered)
      throw std::invalid_argument("random_search: preloaded spec does not match the search shape");
    auto errs = validate_spec(pre);
    if (!errs.empty())
      throw std::invalid_argument("random_search: invalid preloaded spec: " + errs.front());
  }

  OrbitBasis basis = inverse_pair_orbits(shape);
  const int p = basis.count();
  const int n_code = shape.order() + (bordered ? 1 : 0);
  ClockFn clock = opt.clock ? opt.clock : default_clock;
  const auto t0 = Clock::now();

  auto deadline_hit = [&] {
    if (budget.max_seconds <= 0) return false;
    return std::chrono::duration<double>(Clock::now() - t0).count() >= budget.max_seconds;
  };

  std::atomic<uint64_t> next{0};
  std::mutex mu;
  std::map<uint64_t, SearchRecord> found;
  std::exception_ptr fail;

  auto run = [&] {
    try {
      for (;;) {
        uint64_t it = next.fetch_add(1);
        if (it >= budget.max_iterations || deadline_hit()) return;

        MdcSpec spec;
        if (it < opt.preload.size()) {
          spec = opt.preload[it];
          spec.normalize();
        } else {
          SplitMix64 rng(derive_seed(seed, it));
          std::vector<GroupElem> s;
          int valency = 0;
          for (int i = 0; i < p; ++i) {
            if (rng.coin()) {
              valency += static_cast<int>(basis.orbits[i].size());
              for (const auto& e : basis.orbits[i]) s.push_back(e);
            }
          }
          if (s.empty()) continue;  // the connection-free code is never a candidate
          if (valency < opt.min_valency || valency > opt.max_valency) continue;
          std::sort(s.begin(), s.end());
          spec = MdcSpec{shape, std::move(s), bordered};
        }

        AdditiveCode code(graph_code(build_graph(spec)));
        SearchRecord rec;
        rec.spec = spec;
        rec.n = n_code;
        rec.seed = seed;

        DistanceOptions dopt = opt.dist;
        dopt.workers = 1;
        if (n_code <= dopt.exact_cap) {
          auto r = min_weight_with_abort(code, target_d, dopt);
          if (r.certified != Certified::exact_value) continue;  // a word below target exists
          rec.d = r.value;
          rec.d_mode = "exact";
        } else {
          dopt.stop_at = target_d - 1;
          auto r = upper_bound_search(code, derive_seed(derive_seed(seed, it), 1),
                                      opt.screen_budget, dopt);
          if (r.value < target_d) continue;
          rec.d = r.value;
          rec.d_mode = "upper";
        }
        rec.found_at = clock();
        std::lock_guard<std::mutex> lk(mu);
        found.emplace(it, std::move(rec));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(mu);
      if (!fail) fail = std::current_exception();
      next.store(budget.max_iterations);
    }
  };

  const int workers = std::max(1, opt.workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (fail) std::rethrow_exception(fail);

  // Records leave in iteration order regardless of which worker produced
  // them, so a fixed (seed, budget) run writes an identical store.
  std::vector<SearchRecord> out;
  out.reserve(found.size());
  for (auto& [it, rec] : found) {
    if (store) store->append(rec);
    out.push_back(std::move(rec));
  }
  return out;
}

MdcSpec multiplier_canonical_form(const MdcSpec& spec) {
  if (spec.bordered)
    throw std::invalid_argument("multiplier_canonical_form: unbordered specs only");
  auto errs = validate_spec(spec);
  if (!errs.empty())
    throw std::invalid_argument("multiplier_canonical_form: invalid spec: " + errs.front());

  const int k = spec.shape.rank();
  std::vector<std::vector<int>> units(k);
  for (int i = 0; i < k; ++i) {
    const int m = spec.shape.moduli[i];
    if (m == 1) {
      units[i] = {0};  // the only residue; multiplication is the identity map
      continue;
    }
    for (int u = 1; u < m; ++u)
      if (std::gcd(u, m) == 1) units[i].push_back(u);
  }

  std::vector<GroupElem> best = spec.connections;
  std::sort(best.begin(), best.end());

  std::vector<size_t> pick(k, 0);
  for (;;) {
    std::vector<GroupElem> image;
    image.reserve(spec.connections.size());
    for (const auto& s : spec.connections) {
      GroupElem e(k);
      for (int i = 0; i < k; ++i)
        e[i] = spec.shape.moduli[i] == 1 ? 0 : (s[i] * units[i][pick[i]]) % spec.shape.moduli[i];
      image.push_back(std::move(e));
    }
    std::sort(image.begin(), image.end());
    if (image < best) best = image;

    int axis = 0;
    while (axis < k && ++pick[axis] == units[axis].size()) {
      pick[axis] = 0;
      ++axis;
    }
    if (axis == k) break;
  }

  MdcSpec out = spec;
  out.connections = std::move(best);
  return out;
}

}  // namespace qmdc

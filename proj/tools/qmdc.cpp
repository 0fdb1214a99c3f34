// qmdc: additive self-dual codes over GF(9) from multidimensional circulant
// graphs.  Subcommands build generator matrices, verify self-duality, compute
// or bound minimum distances, report graph statistics, search the
// connection-set space, and re-check the published code table end to end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmdc/code.hpp"
#include "qmdc/distance.hpp"
#include "qmdc/field.hpp"
#include "qmdc/fixtures.hpp"
#include "qmdc/graph.hpp"
#include "qmdc/io.hpp"
#include "qmdc/report.hpp"
#include "qmdc/rng.hpp"
#include "qmdc/search.hpp"

using namespace qmdc;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr uint64_t kUnlimited = ~0ull;

struct GlobalOpts {
  bool json = false;
  int workers = 1;
  uint64_t seed = 0;
};

// A positional spec argument is a file path when such a file exists,
// otherwise one of the embedded fixture names (Q51..Q57).
MdcSpec resolve_spec(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::exists(arg, ec)) return load_spec_file(arg);
  try {
    return fixture(arg).spec;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("'" + arg +
                                "' is neither an existing spec file nor a fixture name");
  }
}

GroupShape parse_shape(const std::string& text) {
  GroupShape shape;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t pos = 0;
      int m = std::stoi(part, &pos);
      if (pos != part.size() || m < 1) throw std::invalid_argument("");
      shape.moduli.push_back(m);
    } catch (...) {
      throw std::invalid_argument("bad shape '" + text + "'; expected e.g. 3,17");
    }
  }
  if (shape.moduli.empty()) throw std::invalid_argument("shape must list at least one modulus");
  return shape;
}

std::string shape_str(const GroupShape& shape) {
  std::string s = "(";
  for (size_t i = 0; i < shape.moduli.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape.moduli[i]);
  }
  return s + ")";
}

void print_distance_result(const DistanceResult& res, bool json) {
  if (json) {
    std::cout << distance_result_to_json(res) << "\n";
    return;
  }
  std::cout << "value " << res.value << " (" << to_string(res.certified) << ")"
            << ", mode " << to_string(res.mode) << ", work " << res.work << ", "
            << res.elapsed_ms << " ms";
  if (res.seed) std::cout << ", seed " << *res.seed;
  std::cout << "\n";
}

ordered_json report_json(const Report& rep) {
  ordered_json checks = ordered_json::array();
  for (const auto& l : rep.lines)
    checks.push_back({{"name", l.name}, {"claimed", l.claimed}, {"computed", l.computed},
                      {"pass", l.pass}});
  return ordered_json{{"checks", checks}, {"all_pass", rep.all_pass()}};
}

int cmd_build(const MdcSpec& spec, const std::string& out_path, const GlobalOpts& g) {
  GeneratorMatrix gen = graph_code(build_graph(spec));
  if (g.json) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < gen.length(); ++i) {
      ordered_json row = ordered_json::array();
      for (int j = 0; j < gen.length(); ++j) row.push_back(gen.at(i, j).token());
      rows.push_back(std::move(row));
    }
    ordered_json j{{"n", gen.length()}, {"rows", rows}};
    if (out_path.empty()) {
      std::cout << j.dump() << "\n";
    } else {
      std::ofstream f(out_path);
      if (!f) throw std::runtime_error("cannot open output file: " + out_path);
      f << j.dump() << "\n";
    }
    return 0;
  }
  if (out_path.empty()) {
    write_generator_file(std::cout, gen);
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    write_generator_file(f, gen);
  }
  return 0;
}

int cmd_check(const GeneratorMatrix& gen, bool from_spec, const GlobalOpts& g) {
  AdditiveCode code(gen);
  SelfDualReport sd = is_self_dual(code);
  const int n = code.length();

  CodeParams params;
  params.n = n;
  params.k3 = code.k3();
  params.self_dual = sd.self_dual;

  Report rep;
  if (from_spec) rep.add_flag("spec valid", true);
  rep.add("f3-rank", n, sd.rank);
  if (sd.violating_pairs.empty()) {
    rep.add_flag("trace-orthogonal rows", true);
  } else {
    auto [i, j] = sd.violating_pairs.front();
    rep.lines.push_back({"trace-orthogonal rows", "true",
                         "false (first violation rows " + std::to_string(i) + "," +
                             std::to_string(j) + ")",
                         false});
  }
  rep.add_flag("self-dual", sd.self_dual);

  if (g.json) {
    ordered_json j = report_json(rep);
    j["label"] = params.qutrit_label();
    j["n"] = n;
    j["k3"] = code.k3();
    j["codewords"] = "3^" + std::to_string(code.k3());
    std::cout << j.dump() << "\n";
  } else {
    std::cout << params.qutrit_label() << " additive code over GF(9), |C| = 3^" << code.k3()
              << "\n"
              << rep.render_text();
  }
  return sd.self_dual ? 0 : 4;
}

int cmd_graph_stats(const MdcSpec& spec, const GlobalOpts& g) {
  Graph graph = build_graph(spec);
  GraphStats st = graph_stats(graph, spec);
  if (g.json) {
    ordered_json j{{"n", graph.order()},       {"bordered", st.bordered},
                   {"valency", st.valency},    {"diameter", st.diameter},
                   {"girth", st.girth},        {"clique", st.clique},
                   {"known_aut_order", st.known_aut_order}};
    if (st.bordered) {
      j["border_degree"] = st.border_degree;
      j["base_degree"] = st.base_degree;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "n: " << graph.order() << (st.bordered ? " (bordered)" : "") << "\n"
            << "valency: " << st.valency << "\n"
            << "diameter: " << st.diameter << (st.diameter < 0 ? " (disconnected)" : "") << "\n"
            << "girth: " << st.girth << (st.girth == 0 ? " (acyclic)" : "") << "\n"
            << "clique: " << st.clique << "\n"
            << "automorphisms: >= " << st.known_aut_order << " (translations and negation)\n";
  if (st.bordered)
    std::cout << "border degree: " << st.border_degree << ", base degree: " << st.base_degree
              << "\n";
  return 0;
}

struct DistanceFlags {
  std::string mode = "exact";
  int threshold = 0;
  uint64_t iters = 0;
  bool iters_set = false;
  double seconds = 0;
  bool seconds_set = false;
  int depth = 3;
  int stop_at = 0;
  int exact_cap = 20;
};

int cmd_distance(const MdcSpec& spec, const DistanceFlags& f, const GlobalOpts& g) {
  AdditiveCode code(graph_code(build_graph(spec)));
  DistanceOptions opts;
  opts.exact_cap = f.exact_cap;
  opts.workers = g.workers;
  opts.depth = f.depth;
  opts.stop_at = f.stop_at;

  // Iteration-bounded modes fall back to a round number of iterations when
  // neither budget flag is given; a bare --seconds means "until the clock".
  auto budget_or = [&](uint64_t dflt) {
    Budget b;
    b.max_iterations = f.iters_set ? f.iters : (f.seconds_set ? kUnlimited : dflt);
    b.max_seconds = f.seconds_set ? f.seconds : 0;
    return b;
  };

  DistanceResult res;
  if (f.mode == "exact") {
    res = exact_min_weight(code, opts);
  } else if (f.mode == "threshold") {
    if (f.threshold < 1)
      throw std::invalid_argument("threshold mode needs --threshold >= 1");
    res = min_weight_with_abort(code, f.threshold, opts);
  } else if (f.mode == "upper") {
    res = upper_bound_search(code, g.seed, budget_or(1000), opts);
  } else {  // floor
    res = bz_hamming_floor(code, budget_or(200000), opts);
  }
  print_distance_result(res, g.json);
  return 0;
}

struct ExhaustiveFlags {
  std::string shape;
  bool bordered = false;
  bool dedup = false;
  std::string store_path;
  int max_orbits = 24;
  int exact_cap = 20;
};

int cmd_search_exhaustive(const ExhaustiveFlags& f, const GlobalOpts& g) {
  GroupShape shape = parse_shape(f.shape);
  ExhaustiveOptions opt;
  opt.max_orbits = f.max_orbits;
  opt.dedup = f.dedup;
  opt.workers = g.workers;
  opt.dist.exact_cap = f.exact_cap;
  opt.dist.workers = 1;

  std::optional<ResultStore> file_store;
  std::optional<ResultStore> cout_store;
  ResultStore* store = nullptr;
  if (!f.store_path.empty()) {
    file_store.emplace(f.store_path);
    store = &*file_store;
  } else if (!g.json) {
    cout_store.emplace(std::cout);  // stream improving records as JSONL
    store = &*cout_store;
  }

  ExhaustiveResult res = exhaustive_search(shape, f.bordered, store, opt);
  if (g.json) {
    ordered_json recs = ordered_json::array();
    for (const auto& r : res.improving) recs.push_back(ordered_json::parse(record_to_json(r)));
    ordered_json j{{"shape", shape.moduli},   {"bordered", f.bordered},
                   {"best_d", res.best_d},    {"evaluated", res.evaluated},
                   {"improving", recs}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "best d = " << res.best_d << " over " << res.evaluated << " evaluated subsets\n";
  }
  return 0;
}

struct RandomFlags {
  std::string shape;
  bool bordered = false;
  int target = 0;
  uint64_t iters = 100;
  double seconds = 0;
  std::string store_path;
  int min_valency = 0;
  int max_valency = 1 << 30;
  uint64_t screen_iters = 200;
  int exact_cap = 20;
  std::vector<std::string> preload;
  std::string timestamp;
};

int cmd_search_random(const RandomFlags& f, const GlobalOpts& g) {
  GroupShape shape = parse_shape(f.shape);
  RandomSearchOptions opt;
  opt.min_valency = f.min_valency;
  opt.max_valency = f.max_valency;
  opt.workers = g.workers;
  opt.dist.exact_cap = f.exact_cap;
  opt.screen_budget = Budget{f.screen_iters, 0};
  for (const auto& p : f.preload) opt.preload.push_back(resolve_spec(p));
  if (!f.timestamp.empty()) {
    std::string ts = f.timestamp;
    opt.clock = [ts] { return ts; };
  }
  Budget budget{f.iters, f.seconds};

  std::optional<ResultStore> file_store;
  std::optional<ResultStore> cout_store;
  ResultStore* store = nullptr;
  if (!f.store_path.empty()) {
    file_store.emplace(f.store_path);
    store = &*file_store;
  } else if (!g.json) {
    cout_store.emplace(std::cout);
    store = &*cout_store;
  }

  auto records = random_search(shape, f.bordered, f.target, g.seed, budget, store, opt);
  if (g.json) {
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) recs.push_back(ordered_json::parse(record_to_json(r)));
    ordered_json j{{"shape", shape.moduli}, {"bordered", f.bordered}, {"target", f.target},
                   {"seed", g.seed},        {"records", recs}};
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "kept " << records.size() << " candidate(s) at target " << f.target << "\n";
  }
  return 0;
}

struct VerifyFlags {
  bool skip_distance = false;
  double witness_seconds = 1800;
  uint64_t witness_iters = 0;  // 0 = no iteration cap
  int depth = 3;
  std::vector<std::string> only;
};

// Rows of the published distance table reproduced by the exhaustive stage:
// every shape of order up to 10, plus 12, with the expected best distance.
struct TableRow {
  std::vector<int> moduli;
  int d;
};
const std::vector<TableRow> kDistanceTable = {
    {{1}, 1},  {{2}, 2},      {{3}, 2},    {{4}, 2},    {{2, 2}, 2},    {{5}, 3},
    {{2, 3}, 4}, {{7}, 4},    {{8}, 4},    {{4, 2}, 4}, {{2, 2, 2}, 4}, {{9}, 4},
    {{3, 3}, 4}, {{2, 5}, 5}, {{3, 4}, 6}, {{6, 2}, 4},
};

int cmd_verify_paper(const VerifyFlags& f, const GlobalOpts& g) {
  std::vector<const Fixture*> picked;
  if (f.only.empty()) {
    for (const auto& fx : fixtures()) picked.push_back(&fx);
  } else {
    for (const auto& name : f.only) picked.push_back(&fixture(name));
  }

  Report rep;

  // (a) construction: specs validate, codes are self-dual with full rank
  for (const Fixture* fx : picked) {
    auto errs = validate_spec(fx->spec);
    rep.add_flag(fx->name + " spec valid", errs.empty());
    Graph graph = build_graph(fx->spec);
    AdditiveCode code(graph_code(graph));
    SelfDualReport sd = is_self_dual(code);
    rep.add(fx->name + " n", fx->n, code.length());
    rep.add(fx->name + " f3-rank", fx->n, sd.rank);
    rep.add_flag(fx->name + " self-dual", sd.self_dual);
    std::cerr << "checked " << fx->name << " construction\n";
  }

  // (b) graph statistics against the published table
  for (const Fixture* fx : picked) {
    Graph graph = build_graph(fx->spec);
    GraphStats st = graph_stats(graph, fx->spec);
    rep.add(fx->name + " valency", fx->claimed_valency, st.valency);
    rep.add(fx->name + " diameter", fx->claimed_diameter, st.diameter);
    rep.add(fx->name + " girth", fx->claimed_girth, st.girth);
    rep.add(fx->name + " clique", fx->claimed_clique, st.clique);
    rep.add(fx->name + " aut order", fx->claimed_aut, st.known_aut_order);
    std::cerr << "checked " << fx->name << " graph statistics\n";
  }

  // (c) distance witnesses: hunt for a codeword at the claimed weight; a
  // better one would refute the claim, a miss within budget is only a miss
  if (!f.skip_distance) {
    int idx = 0;
    for (const Fixture* fx : picked) {
      AdditiveCode code(graph_code(build_graph(fx->spec)));
      DistanceOptions opts;
      opts.workers = g.workers;
      opts.depth = f.depth;
      opts.stop_at = fx->claimed_d;
      Budget budget{f.witness_iters == 0 ? kUnlimited : f.witness_iters, f.witness_seconds};
      std::cerr << "searching for a weight-" << fx->claimed_d << " witness in " << fx->name
                << "...\n";
      DistanceResult res = upper_bound_search(code, derive_seed(g.seed, idx++), budget, opts);
      std::string name = fx->name + " weight-" + std::to_string(fx->claimed_d) + " witness";
      std::string claimed = "d <= " + std::to_string(fx->claimed_d);
      if (res.value < fx->claimed_d) {
        rep.lines.push_back({name, claimed,
                             "found weight " + std::to_string(res.value) +
                                 " below the claimed distance",
                             false});
      } else if (res.value == fx->claimed_d) {
        rep.lines.push_back({name, claimed,
                             "witnessed " + std::to_string(res.value) + " after " +
                                 std::to_string(res.work) + " iterations",
                             true});
      } else {
        rep.lines.push_back({name, claimed,
                             "not yet witnessed (best " + std::to_string(res.value) + " after " +
                                 std::to_string(res.work) + " iterations)",
                             true});
      }
      std::cerr << "  " << rep.lines.back().computed << "\n";
    }
  }

  // (d) exhaustive reproduction of the small-length distance table
  if (f.only.empty()) {
    for (const auto& row : kDistanceTable) {
      GroupShape shape{row.moduli};
      ExhaustiveOptions opt;
      opt.workers = g.workers;
      ExhaustiveResult res = exhaustive_search(shape, false, nullptr, opt);
      rep.add("table " + shape_str(shape) + " best d", row.d, res.best_d);
      std::cerr << "exhausted shape " << shape_str(shape) << "\n";
    }
  }

  if (g.json)
    std::cout << report_json(rep).dump() << "\n";
  else
    std::cout << rep.render_text();
  return rep.all_pass() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive self-dual GF(9) codes from multidimensional circulant graphs"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--workers", g.workers, "worker thread count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized operations (default 0)");

  std::string build_spec, build_out;
  auto* build = app.add_subcommand("build", "write the generator matrix of a spec");
  build->fallthrough();
  build->add_option("spec", build_spec, "spec file or fixture name")->required();
  build->add_option("-o,--out", build_out, "output file (default stdout)");

  std::string check_input;
  bool check_matrix = false;
  auto* check = app.add_subcommand("check", "verify self-duality and report parameters");
  check->fallthrough();
  check->add_option("spec", check_input, "spec file, fixture name, or matrix file")->required();
  check->add_flag("--matrix", check_matrix, "treat the input as a generator matrix file");

  std::string dist_spec;
  DistanceFlags df;
  auto* dist = app.add_subcommand("distance", "compute or bound the minimum distance");
  dist->fallthrough();
  dist->add_option("spec", dist_spec, "spec file or fixture name")->required();
  dist->add_option("--mode", df.mode, "exact | threshold | upper | floor")
      ->capture_default_str()
      ->check(CLI::IsMember({"exact", "threshold", "upper", "floor"}));
  dist->add_option("--threshold", df.threshold, "abort threshold for threshold mode");
  auto* d_iters = dist->add_option("--iters", df.iters, "iteration budget (upper/floor)");
  auto* d_secs = dist->add_option("--seconds", df.seconds, "time budget in seconds");
  dist->add_option("--depth", df.depth, "row-combination depth for upper mode")
      ->capture_default_str()
      ->check(CLI::Range(1, 4));
  dist->add_option("--stop-at", df.stop_at, "upper mode: stop once weight <= this is found");
  dist->add_option("--exact-cap", df.exact_cap, "length cap for full enumeration")
      ->capture_default_str();

  std::string stats_spec;
  auto* stats = app.add_subcommand("graph-stats", "diameter, girth, clique and friends");
  stats->fallthrough();
  stats->add_option("spec", stats_spec, "spec file or fixture name")->required();

  auto* search = app.add_subcommand("search", "explore the connection-set space");
  search->require_subcommand(1);
  search->fallthrough();

  ExhaustiveFlags xf;
  auto* sx = search->add_subcommand("exhaustive", "evaluate every orbit subset of a shape");
  sx->fallthrough();
  sx->add_option("--shape,--n-shape", xf.shape, "group moduli, e.g. 3,4")->required();
  sx->add_flag("--bordered", xf.bordered, "append a border vertex");
  sx->add_flag("--dedup", xf.dedup, "skip non-canonical subsets (multiplier equivalence)");
  sx->add_option("--store", xf.store_path, "append improving records to this JSONL file");
  sx->add_option("--max-orbits", xf.max_orbits, "refuse searches beyond 2^this subsets")
      ->capture_default_str();
  sx->add_option("--exact-cap", xf.exact_cap, "length cap for the per-candidate scan")
      ->capture_default_str();

  RandomFlags rf;
  auto* sr = search->add_subcommand("random", "sample orbit subsets, keep survivors at a target");
  sr->fallthrough();
  sr->add_option("--shape,--n-shape", rf.shape, "group moduli, e.g. 3,17")->required();
  sr->add_flag("--bordered", rf.bordered, "append a border vertex");
  sr->add_option("--target", rf.target, "keep candidates with no word below this weight")
      ->required()
      ->check(CLI::PositiveNumber);
  sr->add_option("--iters", rf.iters, "sampling iterations")->capture_default_str();
  sr->add_option("--seconds", rf.seconds, "time budget in seconds");
  sr->add_option("--store", rf.store_path, "append surviving records to this JSONL file");
  sr->add_option("--min-valency", rf.min_valency, "skip samples below this valency");
  sr->add_option("--max-valency", rf.max_valency, "skip samples above this valency");
  sr->add_option("--screen-iters", rf.screen_iters, "information-set iterations per candidate")
      ->capture_default_str();
  sr->add_option("--exact-cap", rf.exact_cap, "lengths up to this are screened exactly")
      ->capture_default_str();
  sr->add_option("--preload", rf.preload, "spec files or fixture names to try first");
  sr->add_option("--timestamp", rf.timestamp, "fixed found_at value (reproducible stores)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify-paper", "re-check the published constructions");
  verify->fallthrough();
  verify->add_flag("--skip-distance", vf.skip_distance, "skip the distance-witness stage");
  verify->add_option("--witness-seconds", vf.witness_seconds,
                     "time budget per fixture for the witness stage")
      ->capture_default_str();
  verify->add_option("--witness-iters", vf.witness_iters,
                     "iteration cap per fixture for the witness stage (0 = none)");
  verify->add_option("--depth", vf.depth, "row-combination depth for the witness stage")
      ->capture_default_str()
      ->check(CLI::Range(1, 4));
  verify->add_option("--fixture", vf.only,
                     "restrict to these fixtures (skips the distance-table stage)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  df.iters_set = d_iters->count() > 0;
  df.seconds_set = d_secs->count() > 0;

  try {
    if (*build) return cmd_build(resolve_spec(build_spec), build_out, g);
    if (*check) {
      if (check_matrix) {
        std::ifstream f(check_input);
        if (!f) throw std::runtime_error("cannot open matrix file: " + check_input);
        return cmd_check(read_generator_file(f), false, g);
      }
      return cmd_check(graph_code(build_graph(resolve_spec(check_input))), true, g);
    }
    if (*dist) return cmd_distance(resolve_spec(dist_spec), df, g);
    if (*stats) return cmd_graph_stats(resolve_spec(stats_spec), g);
    if (*sx) return cmd_search_exhaustive(xf, g);
    if (*sr) return cmd_search_random(rf, g);
    if (*verify) return cmd_verify_paper(vf, g);
  } catch (const feasibility_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

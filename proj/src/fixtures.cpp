#include "qmdc/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "qmdc/io.hpp"

#include "fixtures_data.inc"

namespace qmdc {

namespace {

Fixture parse_fixture(const char* text) {
  const std::string src(text);
  nlohmann::json j = nlohmann::json::parse(src);

  Fixture f;
  f.name = j.at("name").get<std::string>();
  f.spec = parse_spec_json(src);  // reads N, S, bordered; ignores the rest
  const auto& c = j.at("claimed");
  f.n = c.at("n").get<int>();
  f.claimed_d = c.at("d").get<int>();
  f.claimed_valency = c.at("valency").get<int>();
  f.claimed_clique = c.at("clique").get<int>();
  f.claimed_diameter = c.at("diameter").get<int>();
  f.claimed_girth = c.at("girth").get<int>();
  f.claimed_aut = c.at("aut_order").get<long long>();

  auto errs = validate_spec(f.spec);
  if (!errs.empty())
    throw std::logic_error("fixture " + f.name + " has an invalid spec: " + errs.front());
  if (static_cast<int>(f.spec.connections.size()) != f.claimed_valency)
    throw std::logic_error("fixture " + f.name + " connection count does not match its valency");
  const int order = f.spec.shape.order() + (f.spec.bordered ? 1 : 0);
  if (order != f.n) throw std::logic_error("fixture " + f.name + " group order does not match n");
  return f;
}

std::vector<Fixture> load_all() {
  std::vector<Fixture> all;
  for (const char* text : kFixtureJson) all.push_back(parse_fixture(text));
  std::sort(all.begin(), all.end(), [](const Fixture& a, const Fixture& b) { return a.n < b.n; });
  return all;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = load_all();
  return all;
}

const Fixture& fixture(const std::string& name) {
  std::string want = name;
  std::transform(want.begin(), want.end(), want.begin(), ::toupper);
  for (const auto& f : fixtures())
    if (f.name == want) return f;
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace qmdc

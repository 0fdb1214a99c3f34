#include "qmdc/io.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qmdc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

GroupElem to_elem(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("spec JSON: connection must be an array");
  GroupElem e;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("spec JSON: coordinates must be integers");
    e.push_back(v.get<int>());
  }
  return e;
}

std::string elem_str(const GroupElem& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace

MdcSpec parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("spec JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("spec JSON: top level must be an object");
  if (!j.contains("N") || !j["N"].is_array())
    throw std::invalid_argument("spec JSON: missing \"N\" array");
  if (!j.contains("S") || !j["S"].is_array())
    throw std::invalid_argument("spec JSON: missing \"S\" array");

  MdcSpec spec;
  for (const auto& v : j["N"]) {
    if (!v.is_number_integer()) throw std::invalid_argument("spec JSON: moduli must be integers");
    spec.shape.moduli.push_back(v.get<int>());
  }
  for (const auto& v : j["S"]) spec.connections.push_back(to_elem(v));
  if (j.contains("bordered")) {
    if (!j["bordered"].is_boolean())
      throw std::invalid_argument("spec JSON: \"bordered\" must be a boolean");
    spec.bordered = j["bordered"].get<bool>();
  }

  auto sorted = spec.connections;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::invalid_argument("spec JSON: Duplicate connection " + elem_str(sorted[i]));

  spec.normalize();
  return spec;
}

std::string spec_to_json(const MdcSpec& spec) {
  MdcSpec s = spec;
  s.normalize();
  ordered_json j;
  j["N"] = s.shape.moduli;
  j["S"] = s.connections;
  j["bordered"] = s.bordered;
  return j.dump();
}

MdcSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

void write_generator_file(std::ostream& os, const GeneratorMatrix& gen) {
  const int n = gen.length();
  os << "n=" << n << " field=GF9 basis=1,w modulus=w2=w+1\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ' ';
      os << gen.at(i, j).token();
    }
    os << '\n';
  }
}

std::string generator_to_string(const GeneratorMatrix& gen) {
  std::ostringstream os;
  write_generator_file(os, gen);
  return os.str();
}

GeneratorMatrix read_generator_file(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("matrix file: missing header");
  int n = 0;
  {
    std::istringstream hs(header);
    std::string tok;
    bool saw_n = false, saw_field = false, saw_basis = false, saw_mod = false;
    while (hs >> tok) {
      if (tok.rfind("n=", 0) == 0) {
        try {
          n = std::stoi(tok.substr(2));
        } catch (...) {
          throw std::invalid_argument("matrix file: bad length in header");
        }
        saw_n = true;
      } else if (tok == "field=GF9") {
        saw_field = true;
      } else if (tok == "basis=1,w") {
        saw_basis = true;
      } else if (tok == "modulus=w2=w+1") {
        saw_mod = true;
      } else {
        throw std::invalid_argument("matrix file: unrecognized header token '" + tok + "'");
      }
    }
    if (!saw_n || !saw_field || !saw_basis || !saw_mod)
      throw std::invalid_argument("matrix file: incomplete header");
    if (n < 1) throw std::invalid_argument("matrix file: length must be positive");
  }

  std::vector<F9Vec> rows;
  std::string line;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::invalid_argument("matrix file: missing row");
    std::istringstream ls(line);
    F9Vec row;
    long long t;
    while (ls >> t) {
      if (t < 0 || t > 8) throw std::invalid_argument("matrix file: token out of range 0..8");
      row.push_back(F9::from_token(static_cast<int>(t)));
    }
    std::string trailing;
    if (ls.clear(), ls >> trailing)
      throw std::invalid_argument("matrix file: non-numeric token in row");
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix file: row has wrong entry count");
    rows.push_back(std::move(row));
  }
  std::string rest;
  while (std::getline(is, rest))
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      throw std::invalid_argument("matrix file: trailing content after matrix");
  return GeneratorMatrix(std::move(rows));
}

std::string record_to_json(const SearchRecord& rec) {
  ordered_json j;
  j["N"] = rec.spec.shape.moduli;
  j["S"] = rec.spec.connections;
  j["bordered"] = rec.spec.bordered;
  j["n"] = rec.n;
  j["d"] = rec.d;
  j["d_mode"] = rec.d_mode;
  if (rec.seed)
    j["seed"] = *rec.seed;
  else
    j["seed"] = nullptr;
  j["found_at"] = rec.found_at;
  return j.dump();
}

SearchRecord record_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("record JSON: ") + e.what());
  }
  SearchRecord rec;
  ordered_json spec_j;
  spec_j["N"] = j.at("N");
  spec_j["S"] = j.at("S");
  spec_j["bordered"] = j.at("bordered");
  rec.spec = parse_spec_json(spec_j.dump());
  rec.n = j.at("n").get<int>();
  rec.d = j.at("d").get<int>();
  rec.d_mode = j.at("d_mode").get<std::string>();
  if (j.contains("seed") && !j["seed"].is_null()) rec.seed = j["seed"].get<uint64_t>();
  rec.found_at = j.at("found_at").get<std::string>();
  if (rec.d_mode != "exact" && rec.d_mode != "upper")
    throw std::invalid_argument("record JSON: d_mode must be \"exact\" or \"upper\"");
  return rec;
}

std::string distance_result_to_json(const DistanceResult& res) {
  ordered_json j;
  j["mode"] = to_string(res.mode);
  j["value"] = res.value;
  j["certified"] = to_string(res.certified);
  j["work"] = res.work;
  j["elapsed_ms"] = res.elapsed_ms;
  if (res.seed)
    j["seed"] = *res.seed;
  else
    j["seed"] = nullptr;
  return j.dump();
}

std::string iso8601_utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qmdc

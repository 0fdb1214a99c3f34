#include "qmdc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace qmdc {

std::string Report::render_text() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    os << (l.pass ? "[ ok ] " : "[FAIL] ") << l.name << ": claimed " << l.claimed
       << ", computed " << l.computed << '\n';
  }
  os << (all_pass() ? "all checks passed" : "CHECKS FAILED") << '\n';
  return os.str();
}

std::string Report::render_json() const {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& l : lines) {
    nlohmann::ordered_json c;
    c["name"] = l.name;
    c["claimed"] = l.claimed;
    c["computed"] = l.computed;
    c["pass"] = l.pass;
    j["checks"].push_back(c);
  }
  j["all_pass"] = all_pass();
  return j.dump();
}

}  // namespace qmdc

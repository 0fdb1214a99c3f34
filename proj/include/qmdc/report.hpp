#pragma once

#include <string>
#include <vector>

namespace qmdc {

// Claimed-versus-computed comparison table used by the CLI verification
// commands.  Both renderings carry the same values.
struct CheckLine {
  std::string name;
  std::string claimed;
  std::string computed;
  bool pass = false;
};

struct Report {
  std::vector<CheckLine> lines;

  void add(const std::string& name, const std::string& claimed, const std::string& computed) {
    lines.push_back({name, claimed, computed, claimed == computed});
  }
  void add(const std::string& name, long long claimed, long long computed) {
    add(name, std::to_string(claimed), std::to_string(computed));
  }
  void add_flag(const std::string& name, bool ok) {
    lines.push_back({name, "true", ok ? "true" : "false", ok});
  }

  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }

  std::string render_text() const;
  std::string render_json() const;
};

}  // namespace qmdc

#pragma once

#include <iosfwd>
#include <string>

#include "qmdc/code.hpp"
#include "qmdc/distance.hpp"
#include "qmdc/search.hpp"

namespace qmdc {

// Spec JSON: {"N": [3,17], "S": [[1,1], ...], "bordered": false}.
// Structural problems and duplicate connections throw std::invalid_argument;
// rule-level validation stays with validate_spec.  Unknown keys are ignored.
MdcSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const MdcSpec& spec);
MdcSpec load_spec_file(const std::string& path);

// Generator matrix text format: a header line
//   n=<n> field=GF9 basis=1,w modulus=w2=w+1
// followed by n rows of n space-separated tokens (token = c0 + 3*c1).
void write_generator_file(std::ostream& os, const GeneratorMatrix& gen);
std::string generator_to_string(const GeneratorMatrix& gen);
GeneratorMatrix read_generator_file(std::istream& is);

// One JSONL line per search record (no trailing newline).
std::string record_to_json(const SearchRecord& rec);
SearchRecord record_from_json(const std::string& line);

std::string distance_result_to_json(const DistanceResult& res);

std::string iso8601_utc_now();

}  // namespace qmdc

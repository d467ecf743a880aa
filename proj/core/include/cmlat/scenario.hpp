#ifndef CMLAT_SCENARIO_HPP
#define CMLAT_SCENARIO_HPP

#include <string>

#include "cmlat/verdict.hpp"

namespace cmlat {

/* Sectioned key-value scenario files; grammar in docs/scenario-format.md.
 * Parse errors carry the line number; unknown sections and keys are
 * rejected.  The parsed scenario is cross-validated (validate_scenario). */
Scenario parse_scenario_text(const std::string& text, const std::string& name);
Scenario parse_scenario_file(const std::string& path);

/* Built-in fixtures, usable with `example <name>` and as scenario files. */
std::vector<std::string> fixture_names();
Scenario make_fixture(const std::string& name);

}  // namespace cmlat

#endif

#ifndef CMLAT_REPORT_HPP
#define CMLAT_REPORT_HPP

#include <string>
#include <vector>

#include "cmlat/verdict.hpp"

namespace cmlat {

/* Reports carry a human-readable part and a machine-readable section of
 * line-oriented `key = integer-list` records between `== machine ==` and
 * `== end ==` markers; the exact format is frozen in docs/report-format.md.
 * Rendering is deterministic: identical inputs give identical bytes. */
struct MachineLine {
    std::string key;
    ZVec values;
    bool operator==(const MachineLine& o) const = default;
};

struct ScenarioReport {
    std::vector<std::string> human;
    std::vector<MachineLine> machine;
    std::string render() const;
};

std::vector<MachineLine> parse_machine_section(const std::string& reportText);
std::string render_machine_section(const std::vector<MachineLine>& lines);

/* Linear combination over labelled generators, in bracket notation:
 * [3 pi0 - rho0 - 2 irho0]. */
std::string format_class(const std::vector<std::string>& labels, const ZVec& v);

/* Run the scenario's requested checks and build the report. */
ScenarioReport build_check_report(const Scenario& sc);

/* Census of the simple isogeny classes over (G, D) with their invariants. */
ScenarioReport build_atlas_report(const FiniteGaloisGroup& g, const SubgroupHandle& d,
                                  const std::string& groupName,
                                  const std::string& dName);

/* True if some verdict in the report failed (exit code 1 for the CLI). */
bool report_has_failure(const ScenarioReport& r);

}  // namespace cmlat

#endif

#ifndef CMLAT_SELFTEST_HPP
#define CMLAT_SELFTEST_HPP

#include <string>
#include <utility>
#include <vector>

namespace cmlat {

/* The invariant suite behind `cmlat selftest`: structural identities checked
 * across all presets, all their subgroups, and the built-in fixtures. */
std::vector<std::pair<std::string, bool>> run_selftest();

}  // namespace cmlat

#endif

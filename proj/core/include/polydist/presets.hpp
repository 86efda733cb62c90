/* Built-in fields and polygon presets used by the CLI and the test suites. */
#ifndef POLYDIST_PRESETS_HPP
#define POLYDIST_PRESETS_HPP

#include <string>
#include <vector>

#include "polydist/polynorm.hpp"

namespace polydist::presets {

// fields: "rational" (degree 1), "sqrt2" (x^2-2), "cubic" (x^3-x-1)
exactnum::ring_ptr field_by_name(const std::string& name);
std::vector<std::string> field_names();

// norms: "linf", "l1", "hex1" over Q; "oct2" over Q(sqrt2);
// "hexpi" over Q[pi]
polynorm::polygonal_norm norm_by_name(const std::string& name);
std::vector<std::string> norm_names();

}  // namespace polydist::presets

#endif

#ifndef POLYDIST_PI_HPP
#define POLYDIST_PI_HPP

#include "polydist/interval.hpp"

namespace polydist {

// Enclosure of pi of width <= 2^-bits (Machin's formula with exact
// alternating-series tail bounds).
rint pi_enclosure(unsigned bits);

}  // namespace polydist

#endif

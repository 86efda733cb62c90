/* Certified isolation and refinement of the complex roots of a monic
 * squarefree integer polynomial. Real roots are isolated by Sturm bisection;
 * complex conjugate pairs get floating-point approximations first (Aberth)
 * and are then certified with an exact rational Krawczyk test, so every
 * returned rectangle provably contains exactly one root. */
#ifndef POLYDIST_ROOTS_HPP
#define POLYDIST_ROOTS_HPP

#include <vector>

#include "polydist/interval.hpp"
#include "polydist/polynomial.hpp"

namespace polydist {

struct root_enclosure {
  cbox box;
  bool real = false;
};

// All roots, certified pairwise disjoint. Requires: monic, squarefree,
// degree >= 1, and (for degree >= 2) no rational roots.
std::vector<root_enclosure> isolate_roots(const Poly& p);

// Shrink a certified enclosure until max_width <= eps. The result is nested
// inside the input box.
cbox refine_enclosure(const Poly& p, const Poly& dp, const root_enclosure& r,
                      const Rat& eps);

// Dyadic outward rounding: nearest multiples of 2^-bits bracketing q.
Rat dyadic_floor(const Rat& q, unsigned bits);
Rat dyadic_ceil(const Rat& q, unsigned bits);

}  // namespace polydist

#endif

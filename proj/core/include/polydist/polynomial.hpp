/* Dense univariate polynomials over the rationals: just enough algebra for
 * minimal-polynomial reduction, inversion mod the minimal polynomial, and
 * Sturm-based real root counting. Coefficients are stored low degree first;
 * the zero polynomial is the empty vector. */
#ifndef POLYDIST_POLYNOMIAL_HPP
#define POLYDIST_POLYNOMIAL_HPP

#include <utility>
#include <vector>

#include "polydist/interval.hpp"
#include "polydist/rational.hpp"

namespace polydist {

using Poly = std::vector<Rat>;

void poly_trim(Poly& p);
int poly_deg(const Poly& p);  // -1 for the zero polynomial
bool poly_is_zero(const Poly& p);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Rat& c, const Poly& a);
Poly poly_neg(const Poly& a);

Rat poly_eval(const Poly& p, const Rat& x);
rint poly_eval(const Poly& p, const rint& x);
cbox poly_eval(const Poly& p, const cbox& x);

Poly poly_derivative(const Poly& p);

// quotient/remainder; divisor must be nonzero
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);

// monic gcd
Poly poly_gcd(Poly a, Poly b);

// returns (g, u) with u*a = g mod m and g = gcd(a, m), g monic.
// Used to invert elements modulo the minimal polynomial.
std::pair<Poly, Poly> poly_half_ext_gcd(const Poly& a, const Poly& m);

// Integer-root test for a monic integer polynomial (candidate roots divide
// the constant term). Returns true and the root if one exists.
bool monic_integer_root(const std::vector<Int>& coeffs, Int& root_out);

// Cauchy bound: all complex roots have |z| <= bound.
Rat cauchy_root_bound(const Poly& p);

struct sturm_chain {
  std::vector<Poly> seq;

  static sturm_chain build(const Poly& squarefree);
  // number of real roots in (a, b]
  int count_roots(const Rat& a, const Rat& b) const;
  int variations_at(const Rat& x) const;
};

}  // namespace polydist

#endif

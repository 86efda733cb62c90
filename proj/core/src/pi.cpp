#include "polydist/pi.hpp"

namespace polydist {

// enclosure of atan(1/x) for integer x >= 2, with tail bound = first
// dropped term of the alternating series
static rint atan_inv(unsigned long x, const Rat& tol) {
  Rat sum(0);
  Rat xq(static_cast<long>(x));
  Rat x2 = xq * xq;
  Rat power = Rat(1) / xq;  // x^-(2k+1)
  unsigned long k = 0;
  for (;;) {
    Rat term = power / Rat(2 * static_cast<long>(k) + 1);
    if (term <= tol) {
      // alternating: the true value lies between sum and sum +/- term
      if (k % 2 == 0) return rint(sum, sum + term);
      return rint(sum - term, sum);
    }
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
    power /= x2;
    ++k;
  }
}

rint pi_enclosure(unsigned bits) {
  Rat tol = Rat(1, Int(1) << (bits + 8));
  rint a5 = atan_inv(5, tol);
  rint a239 = atan_inv(239, tol);
  return Rat(16) * a5 - Rat(4) * a239;
}

}  // namespace polydist

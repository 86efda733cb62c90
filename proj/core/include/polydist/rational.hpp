/* Exact rational scalars on top of GMP, plus the parsing/formatting and
 * hashing helpers the rest of the library leans on. */
#ifndef POLYDIST_RATIONAL_HPP
#define POLYDIST_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydist {

using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ring_mismatch_error : error {
  using error::error;
};
struct precision_error : error {
  using error::error;
};
struct budget_error : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};

// Accepts "-7", "3/4" and decimal forms like "1.25" or "-0.5e2".
Rat parse_rational(const std::string& s);

// Canonical "p/q" (or "p" when q = 1) in lowest terms.
std::string to_fraction_string(const Rat& q);

// Decimal string with `digits` significant digits, rounded toward the
// requested direction (-1 down, +1 up, 0 nearest). Used for CSV output.
std::string to_decimal_string(const Rat& q, int digits, int direction);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
Rat pow_rat(const Rat& q, unsigned long e);
Rat abs_rat(const Rat& q);

double to_double(const Rat& q);

// smallest/largest multiple of 1/64 whose square brackets x (x >= 0);
// certified by exact comparison
Rat sqrt_upper_rat(const Rat& x);
Rat sqrt_lower_rat(const Rat& x);

std::size_t hash_mpz(const mpz_class& z, std::size_t seed);
std::size_t hash_rat(const Rat& q, std::size_t seed);
std::size_t hash_rat_vec(const std::vector<Rat>& v);

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
  // splitmix-style combiner
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (v ^ (v >> 31));
}

}  // namespace polydist

#endif

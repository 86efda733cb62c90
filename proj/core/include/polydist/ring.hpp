/* Exact scalar arithmetic for the whole library.
 *
 * A ring is either
 *   - a real algebraic number field Q(alpha0), described by a monic integer
 *     minimal polynomial together with certified enclosures of all its
 *     complex roots and a distinguished real root (embedding 0), or
 *   - the polynomial ring Q[x] with x read as a fixed transcendental real
 *     (pi), where equality is coefficient equality and the sign of a nonzero
 *     element at x is decidable by refining the enclosure of pi.
 *
 * Elements are rational coordinate vectors over the power basis. All values
 * are immutable; the only mutable state is the enclosure cache inside the
 * ring, which refines monotonically under a mutex, so everything here can be
 * used from many threads at once. */
#ifndef POLYDIST_RING_HPP
#define POLYDIST_RING_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "polydist/polynomial.hpp"
#include "polydist/roots.hpp"

namespace polydist::exactnum {

using polydist::cbox;
using polydist::Int;
using polydist::Poly;
using polydist::Rat;
using polydist::rint;

class ring_element;
class ring;
using ring_ptr = std::shared_ptr<const ring>;

inline constexpr unsigned kSignStartBits = 64;
inline constexpr unsigned kSignCapBits = 16384;

class ring : public std::enable_shared_from_this<ring> {
 public:
  // Number field from a monic integer minimal polynomial. The hint must
  // isolate exactly one real root; that root becomes embedding 0.
  static ring_ptr number_field(const std::vector<Int>& minpoly, const rint& real_root_hint);

  // Q[x] with the symbol pinned to pi.
  static ring_ptr symbolic(const std::string& symbol = "pi");

  bool is_symbolic() const { return symbolic_; }
  const std::string& symbol_name() const { return symbol_; }

  // number-field accessors
  unsigned degree() const { return degree_; }
  const std::vector<Int>& minpoly_coeffs() const { return minpoly_z_; }
  const Poly& minpoly() const { return minpoly_; }
  size_t real_index() const { return real_index_; }

  // enclosure of the k-th embedding of the generator, width <= eps.
  // k = 0 is the distinguished real root. For the symbolic ring only k = 0
  // is valid and returns the symbol enclosure.
  cbox embedding(size_t k, const Rat& eps) const;

  // current cached enclosure without forced refinement
  cbox embedding_now(size_t k) const;

  bool same_ring(const ring& other) const;

  // element factories
  ring_element element(std::vector<Rat> coords) const;
  ring_element from_rational(const Rat& q) const;
  ring_element zero() const;
  ring_element one() const;
  ring_element generator() const;

  std::string describe() const;

 private:
  ring() = default;

  bool symbolic_ = false;
  std::string symbol_;

  unsigned degree_ = 0;
  std::vector<Int> minpoly_z_;
  Poly minpoly_;
  Poly minpoly_deriv_;
  std::vector<Poly> power_table_;  // coords of alpha^(d..2d-2) reduced mod minpoly
  size_t real_index_ = 0;

  mutable std::mutex cache_mutex_;
  mutable std::vector<root_enclosure> roots_;  // natural order; embeddings remap
  mutable std::vector<size_t> embedding_order_;
  mutable rint symbol_enc_;
  mutable unsigned symbol_bits_ = 0;

  friend class ring_element;
};

class ring_element {
 public:
  ring_element() = default;
  ring_element(ring_ptr r, std::vector<Rat> coords);

  const ring_ptr& owner() const { return ring_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const;  // degree-0 coordinate vector
  Rat rational_value() const;
  bool has_integer_coords() const;

  ring_element operator+(const ring_element& o) const;
  ring_element operator-(const ring_element& o) const;
  ring_element operator*(const ring_element& o) const;
  ring_element operator-() const;
  ring_element& operator+=(const ring_element& o);
  ring_element& operator-=(const ring_element& o);

  ring_element scale(const Rat& c) const;  // multiply by a rational
  ring_element inverse() const;            // number fields; rational symbolics
  ring_element pow(unsigned e) const;

  bool operator==(const ring_element& o) const;
  bool operator!=(const ring_element& o) const { return !(*this == o); }
  // lexicographic coordinate order; a deterministic total order, not the
  // numeric one
  bool lex_less(const ring_element& o) const;

  // enclosure of the value at embedding k, width <= 2^-precision_bits
  cbox embed(size_t k, unsigned precision_bits) const;

  // exact sign at embedding 0; 0 only for the zero element. Escalates
  // precision up to the cap and then reports a diagnostic error.
  int sign_at_zero() const;

  // exact sign of the value at a *real* embedding k
  int sign_at(size_t k) const;

  // sign of |value at embedding k|^2 - c^2 (modulus test against a rational
  // bound). Works at complex embeddings; rational elements short-circuit
  // exactly, everything else escalates precision. A genuine irrational tie
  // |value| = c is reported as a precision error at the cap.
  int compare_modulus_sq(size_t k, const Rat& c) const;

  // sign_at_zero(*this - o)
  int compare_at_zero(const ring_element& o) const;

  // |a| at embedding 0, i.e. a or -a depending on the sign
  ring_element abs_at_zero() const;

  double approx() const;  // double estimate of the embedding-0 value

  std::size_t hash() const;
  std::string str() const;

 private:
  void check_same_ring(const ring_element& o) const;

  ring_ptr ring_;
  std::vector<Rat> coords_;
};

struct ring_element_hash {
  std::size_t operator()(const ring_element& e) const { return e.hash(); }
};

// exact numeric comparison at embedding 0 as a strict-weak-order helper
struct embed_zero_less {
  bool operator()(const ring_element& a, const ring_element& b) const {
    return a.compare_at_zero(b) < 0;
  }
};

}  // namespace polydist::exactnum

#endif

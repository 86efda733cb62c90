/* Cut-and-project sets on the real line: all integer combinations of powers
 * of the field generator whose conjugate embeddings stay inside a band
 * |.| <= C, enumerated exactly inside a window |.| <= R, together with the
 * net-gap and local-count verifications. */
#ifndef POLYDIST_MODELSET_HPP
#define POLYDIST_MODELSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polydist/ring.hpp"

namespace polydist::modelset {

using exactnum::ring_element;
using exactnum::ring_ptr;

struct model_set_spec {
  ring_ptr field;
  Rat C;                  // conjugate band half-width
  ring_element K1_exact;  // (1/2) * sum_j |alpha0^j|, exact
  Rat K1;                 // tight rational upper bound of K1_exact
  long K2 = 0;            // lattice bound for any window of width 2C

  // C must satisfy the sufficiency bound max_{k>=1} (1/2) sum_j |alpha_k^j|
  // <= C; when C is omitted the smallest integer satisfying it is taken.
  static model_set_spec create(ring_ptr field, std::optional<Rat> C = std::nullopt);
};

struct windowed_set {
  ring_ptr field;
  Rat R;
  Rat C;
  std::vector<ring_element> points;  // ascending at embedding 0, duplicate free
  bool exact = true;

  size_t size() const { return points.size(); }
};

// Every integer vector a with |sum a_j alpha0^j| <= R and all conjugate
// bands satisfied, boundaries included, decided exactly.
windowed_set enumerate_T(const model_set_spec& spec, const Rat& R,
                         size_t max_points = 4'000'000);

// S = X x Y as a lazily-enumerated product (both factors usually T(C))
struct planar_window {
  windowed_set x, y;

  size_t size() const { return x.size() * y.size(); }
};

planar_window product_set(const windowed_set& T, size_t max_points = 25'000'000'000ULL);

// exact difference set {t - t' : t, t' in T}
windowed_set difference_set(const windowed_set& T);

struct net_report {
  bool pass = false;
  size_t core_points = 0;
  ring_element max_gap;       // exact
  Rat max_gap_lo, max_gap_hi;  // decimal-friendly enclosure
  Rat bound_hi;                // enclosure of 2*K1
};

// max gap between consecutive points inside [-R + K1, R - K1];
// PASS iff gap <= 2*K1, decided exactly
net_report verify_net(const windowed_set& T, const model_set_spec& spec);

struct local_count_report {
  bool pass = false;
  long max_count = 0;
  long K2 = 0;
};

// max number of points in any closed window of width 2C; PASS iff <= K2
local_count_report verify_local_count(const windowed_set& T, const model_set_spec& spec);

}  // namespace polydist::modelset

#endif

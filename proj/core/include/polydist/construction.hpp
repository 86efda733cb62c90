/* Finite stages of the infinite-sided ball: start from the rotated unit
 * square, then repeatedly cut corners inside protected boundary regions with
 * lines of dyadic slope, choosing rational offsets whose new vertices and
 * neighborhoods provably avoid every rational ratio with small denominator.
 * The resulting polygons nest, stay symmetric in x1 -> -x1 and under the two
 * diagonal reflections, and assemble into exact polygonal norms over Q. */
#ifndef POLYDIST_CONSTRUCTION_HPP
#define POLYDIST_CONSTRUCTION_HPP

#include <utility>
#include <vector>

#include "polydist/distset.hpp"
#include "polydist/polynorm.hpp"

namespace polydist::construction {

using polydist::Rat;

struct qpoint {
  Rat x, y;

  bool operator==(const qpoint& o) const { return x == o.x && y == o.y; }
};

struct cut_record {
  int stage = 0;
  Rat slope;        // a / 2^(stage-1)
  Rat offset;       // cut line x2 = slope*x1 + offset (right-half instance)
  long prime = 0;   // denominator of the offset
  qpoint v_new_a, v_new_b;  // the two new vertices of the right-half cut
};

// a corner of the quadrant chain where future cuts are allowed, together
// with the certified reach along its two sides
struct protected_corner {
  size_t index;  // into the chain
  qpoint limit_prev, limit_next;
};

class stage_polygon {
 public:
  // Builds D_J for the given schedule N_1 < N_2 < ... (stage j avoids all
  // rational ratios with denominator <= N_j, checked exactly). Fails rather
  // than relax when no admissible offset exists.
  static stage_polygon build(const std::vector<long>& schedule, int stages,
                             int max_stage = 4);

  int stage() const { return stage_; }
  const std::vector<long>& schedule() const { return schedule_; }
  // upper boundary of D_j inside the quadrant {x2 >= |x1|}, from (1/2,1/2)
  // to (-1/2,1/2)
  const std::vector<qpoint>& chain() const { return chain_; }
  const std::vector<cut_record>& cuts() const { return cuts_; }
  const std::vector<protected_corner>& corners() const { return corners_; }

  // the full centrally symmetric ball as an exact polygon over Q
  polynorm::polygonal_norm ball() const;

 private:
  int stage_ = 0;
  std::vector<long> schedule_;
  std::vector<qpoint> chain_;
  std::vector<protected_corner> corners_;
  std::vector<cut_record> cuts_;
};

struct containment_report {
  bool pass = false;
  size_t count = 0;                 // |distance set of Z^2 at threshold N|
  unsigned long long bound = 0;     // 2^(2j+3) * N
  bool coord_floor_ok = false;      // ball inside [-1,1]^2 plus lattice spot checks
};

// Exact check of the stage-j counting bound at threshold N, which must lie in
// (N_j, N_{j+1}] (the last built stage accepts any larger N).
containment_report verify_containment_bound(const stage_polygon& D, long N,
                                            const distset::budget& b = distset::budget{});

// Coordinate change fixing slopes 0 and infinity, sending slope alpha to 1
// and any finite slope beta to beta/alpha.
polynorm::polygonal_norm affine_slope_change(const polynorm::polygonal_norm& P,
                                             const exactnum::ring_element& alpha);

}  // namespace polydist::construction

#endif

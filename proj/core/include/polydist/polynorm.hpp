/* Norms whose unit ball is a centrally symmetric convex polygon with exact
 * coordinates: validation, gauge evaluation, facet/slope extraction. */
#ifndef POLYDIST_POLYNORM_HPP
#define POLYDIST_POLYNORM_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polydist/ring.hpp"

namespace polydist::polynorm {

using exactnum::ring_element;
using exactnum::ring_ptr;
using polydist::Rat;

struct point {
  ring_element x, y;

  point operator-(const point& o) const { return {x - o.x, y - o.y}; }
  point operator+(const point& o) const { return {x + o.x, y + o.y}; }
  point operator-() const { return {-x, -y}; }
  bool operator==(const point& o) const { return x == o.x && y == o.y; }
};

// l(p) = u1*x + u2*y, normalized so l == 1 on the facet
struct facet {
  ring_element u1, u2;

  ring_element eval(const point& p) const { return u1 * p.x + u2 * p.y; }
};

struct slope {
  bool infinite = false;
  ring_element value;  // meaningful when finite

  bool operator==(const slope& o) const {
    if (infinite != o.infinite) return false;
    return infinite || value == o.value;
  }
};

class polygonal_norm {
 public:
  // Validates: even vertex count >= 4, central symmetry v[i+m] = -v[i],
  // strictly convex cycle (no repeated or collinear consecutive vertices),
  // origin strictly interior. A uniformly clockwise cycle is reversed.
  static polygonal_norm create(std::vector<point> vertices);

  const ring_ptr& owner() const { return ring_; }
  const std::vector<point>& vertices() const { return vertices_; }
  const std::vector<facet>& facets() const { return facets_; }
  size_t side_count() const { return vertices_.size(); }

  // the gauge (Minkowski functional): max_i l_i(p), exact
  ring_element eval(const point& p) const;
  ring_element eval(const ring_element& x, const ring_element& y) const;

  // one slope per facet direction, antipodal facets collapsed, deduplicated;
  // finite slopes sorted ascending, the vertical slope (if any) last
  std::vector<slope> side_slopes() const;

  // certified rationals (delta, rho) with delta*Bl2 inside BX inside rho*Bl2
  std::pair<Rat, Rat> euclidean_sandwich() const;

  // certified rational bound: |x1|,|x2| <= coord_bound() on the unit ball
  Rat coord_bound() const;

 private:
  ring_ptr ring_;
  std::vector<point> vertices_;
  std::vector<facet> facets_;
};

struct axiom_report {
  bool pass = true;
  size_t samples = 0;
  std::string first_violation;
};

// Exact spot checks of symmetry, rational homogeneity and the triangle
// inequality on pseudo-random rational points (fixed seed => reproducible).
axiom_report norm_axioms_check(const polygonal_norm& P, size_t samples, uint64_t seed);

}  // namespace polydist::polynorm

#endif

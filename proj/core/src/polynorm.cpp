#include "polydist/polynorm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace polydist::polynorm {

using exactnum::ring;

static ring_element cross(const point& a, const point& b) { return a.x * b.y - a.y * b.x; }

polygonal_norm polygonal_norm::create(std::vector<point> vertices) {
  size_t n = vertices.size();
  if (n < 4 || n % 2 != 0)
    throw error("polygon needs an even number of vertices, at least 4");
  ring_ptr rg = vertices[0].x.owner();
  for (const auto& v : vertices) {
    if (!rg->same_ring(*v.x.owner()) || !rg->same_ring(*v.y.owner()))
      throw ring_mismatch_error("polygon vertices from different rings");
  }
  size_t m = n / 2;
  for (size_t i = 0; i < m; ++i) {
    if (!(vertices[i + m] == -vertices[i]))
      throw error("polygon is not centrally symmetric (vertex " + std::to_string(i + m) +
                  " is not the antipode of vertex " + std::to_string(i) + ")");
  }

  // strict convexity; reverse a uniformly clockwise cycle
  auto turn = [&](const std::vector<point>& vs, size_t i) {
    const point& a = vs[i];
    const point& b = vs[(i + 1) % n];
    const point& c = vs[(i + 2) % n];
    return cross(b - a, c - b).sign_at_zero();
  };
  int first = turn(vertices, 0);
  if (first == 0) throw error("three consecutive vertices are collinear");
  if (first < 0) std::reverse(vertices.begin(), vertices.end());
  for (size_t i = 0; i < n; ++i) {
    int s = turn(vertices, i);
    if (s == 0) throw error("three consecutive vertices are collinear");
    if (s < 0) throw error("vertex cycle is not convex");
  }

  polygonal_norm P;
  P.ring_ = rg;
  P.vertices_ = std::move(vertices);
  P.facets_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const point& v = P.vertices_[i];
    const point& w = P.vertices_[(i + 1) % n];
    ring_element det = cross(v, w);
    if (det.is_zero()) throw error("a facet line passes through the origin");
    ring_element u1 = w.y - v.y, u2 = v.x - w.x;
    if (rg->is_symbolic()) {
      if (!det.is_rational())
        throw error("symbolic polygon: facet determinant must be rational "
                    "(choose vertices accordingly)");
      Rat inv = Rat(1) / det.rational_value();
      P.facets_.push_back({u1.scale(inv), u2.scale(inv)});
    } else {
      ring_element inv = det.inverse();
      P.facets_.push_back({u1 * inv, u2 * inv});
    }
  }
  return P;
}

ring_element polygonal_norm::eval(const point& p) const {
  if (!ring_->same_ring(*p.x.owner()) || !ring_->same_ring(*p.y.owner()))
    throw ring_mismatch_error("point ring differs from the polygon ring");
  // antipodal facets come in +/- pairs, so the max over all facets equals the
  // max of |l_i| over one representative per pair
  size_t m = facets_.size() / 2;
  ring_element best;
  bool have = false;
  for (size_t i = 0; i < m; ++i) {
    ring_element v = facets_[i].eval(p).abs_at_zero();
    if (!have || v.compare_at_zero(best) > 0) {
      best = std::move(v);
      have = true;
    }
  }
  return best;
}

ring_element polygonal_norm::eval(const ring_element& x, const ring_element& y) const {
  return eval(point{x, y});
}

std::vector<slope> polygonal_norm::side_slopes() const {
  std::vector<slope> out;
  size_t m = facets_.size() / 2;
  for (size_t i = 0; i < m; ++i) {
    const facet& f = facets_[i];
    slope s;
    if (f.u2.is_zero()) {
      s.infinite = true;
      s.value = ring_->zero();
    } else {
      s.value = -(f.u1 * f.u2.inverse());
    }
    bool dup = false;
    for (const auto& t : out)
      if (t == s) dup = true;
    if (!dup) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const slope& a, const slope& b) {
    if (a.infinite != b.infinite) return !a.infinite;  // vertical slope last
    if (a.infinite) return false;
    return a.value.compare_at_zero(b.value) < 0;
  });
  return out;
}

// smallest k/64 >= sqrt(ub), verified exactly against the squared bound
static Rat certified_sqrt_upper(const Rat& square_ub) {
  double guess = std::sqrt(std::max(0.0, to_double(square_ub)));
  Rat r(static_cast<long>(std::floor(guess * 64.0)), 64);
  while (r * r < square_ub) r += Rat(1, 64);
  return r;
}

static Rat certified_sqrt_lower(const Rat& square_lb) {
  double guess = std::sqrt(std::max(0.0, to_double(square_lb)));
  Rat r(static_cast<long>(std::ceil(guess * 64.0)), 64);
  while (sgn(r) > 0 && r * r > square_lb) r -= Rat(1, 64);
  if (sgn(r) <= 0) throw error("degenerate polygon in sandwich computation");
  return r;
}

std::pair<Rat, Rat> polygonal_norm::euclidean_sandwich() const {
  // rho: max vertex Euclidean norm. |v|^2 is a ring element; bound it above.
  Rat rho2(0);
  for (const auto& v : vertices_) {
    ring_element s = v.x * v.x + v.y * v.y;
    Rat ub = s.embed(0, 32).re.hi;
    rho2 = std::max(rho2, ub);
  }
  Rat rho = certified_sqrt_upper(rho2);

  // delta: min distance from the origin to a facet line, dist^2 = 1/|u|^2
  bool have = false;
  Rat inv_delta2(1);
  for (const auto& f : facets_) {
    ring_element s = f.u1 * f.u1 + f.u2 * f.u2;
    Rat ub = s.embed(0, 32).re.hi;
    if (!have || ub > inv_delta2) {
      inv_delta2 = ub;
      have = true;
    }
  }
  Rat delta = Rat(1) / certified_sqrt_upper(inv_delta2);
  // exact certification: delta^2 * |u|^2 <= 1 for every facet
  for (const auto& f : facets_) {
    ring_element s = f.u1 * f.u1 + f.u2 * f.u2;
    while (s.scale(delta * delta).compare_at_zero(ring_->one()) > 0) delta /= 2;
  }
  return {delta, rho};
}

Rat polygonal_norm::coord_bound() const {
  Rat xi(0);
  for (const auto& v : vertices_)
    for (const ring_element* c : {&v.x, &v.y}) {
      Rat ub = abs(c->embed(0, 32).re).hi;
      xi = std::max(xi, ub);
    }
  // round up to a 64th and certify
  Rat r = Rat(ceil_rat(xi * 64), 64);
  for (const auto& v : vertices_)
    for (const ring_element* c : {&v.x, &v.y}) {
      ring_element rc = ring_->from_rational(r);
      while (c->abs_at_zero().compare_at_zero(rc) > 0) {
        r += Rat(1, 64);
        rc = ring_->from_rational(r);
      }
    }
  return r;
}

axiom_report norm_axioms_check(const polygonal_norm& P, size_t samples, uint64_t seed) {
  if (samples < 1) throw error("norm_axioms_check requires samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 64);
  const ring_ptr& rg = P.owner();
  auto rand_point = [&] {
    Rat a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    return point{rg->from_rational(a), rg->from_rational(b)};
  };

  axiom_report rep;
  rep.samples = samples;
  for (size_t i = 0; i < samples; ++i) {
    point x = rand_point(), y = rand_point();
    ring_element nx = P.eval(x);
    if (!(P.eval(point{-x.x, -x.y}) == nx)) {
      rep.pass = false;
      rep.first_violation = "symmetry failed at sample " + std::to_string(i);
      return rep;
    }
    Rat lam(num(rng), den(rng));
    lam.canonicalize();
    Rat alam = abs_rat(lam);
    point lx{x.x.scale(lam), x.y.scale(lam)};
    if (!(P.eval(lx) == nx.scale(alam))) {
      rep.pass = false;
      rep.first_violation = "homogeneity failed at sample " + std::to_string(i);
      return rep;
    }
    ring_element ny = P.eval(y);
    ring_element nxy = P.eval(x + y);
    if (nxy.compare_at_zero(nx + ny) > 0) {
      rep.pass = false;
      rep.first_violation = "triangle inequality failed at sample " + std::to_string(i);
      return rep;
    }
  }
  return rep;
}

}  // namespace polydist::polynorm

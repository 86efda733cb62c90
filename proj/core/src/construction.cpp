#include "polydist/construction.hpp"

#include <algorithm>

#include "polydist/presets.hpp"

namespace polydist::construction {

using exactnum::ring_element;
using exactnum::ring_ptr;
using polynorm::point;
using polynorm::polygonal_norm;

namespace {

// does [lo, hi] contain a rational with denominator <= qmax?
bool hits_small_denominator(const Rat& lo, const Rat& hi, long qmax) {
  for (long q = 1; q <= qmax; ++q) {
    if (ceil_rat(lo * q) <= floor_rat(hi * q)) return true;
  }
  return false;
}

// both ratio directions of a single point must be in lowest terms with
// numerator and denominator beyond qmax
bool vertex_ratio_admissible(const qpoint& p, long qmax) {
  if (sgn(p.x) == 0 || sgn(p.y) == 0) return false;
  Rat r = p.y / p.x;
  r.canonicalize();
  Int num = abs(Int(r.get_num()));
  Int den = r.get_den();
  return num > qmax && den > qmax;
}

// ratio range y/x over the segment [a, b]; fails (returns false) when the
// segment meets x = 0. The ratio is monotone along a segment, so the range
// is spanned by the endpoint ratios.
bool segment_ratio_range(const qpoint& a, const qpoint& b, Rat& lo, Rat& hi) {
  if (sgn(a.x) == 0 || sgn(b.x) == 0) return false;
  if (sgn(a.x) != sgn(b.x)) return false;
  Rat ra = a.y / a.x, rb = b.y / b.x;
  lo = std::min(ra, rb);
  hi = std::max(ra, rb);
  return true;
}

// the whole closed arc [reach, corner] must avoid ratios in Lambda, in both
// directions y/x and x/y
bool arc_admissible(const qpoint& corner, const qpoint& reach, long qmax) {
  Rat lo, hi;
  if (!segment_ratio_range(corner, reach, lo, hi)) return false;
  if (hits_small_denominator(lo, hi, qmax)) return false;
  if (sgn(lo) == 0 || sgn(hi) == 0 || sgn(lo) != sgn(hi)) return false;
  // invert the interval for the x/y direction
  Rat ilo = Rat(1) / hi, ihi = Rat(1) / lo;
  if (ilo > ihi) std::swap(ilo, ihi);
  return !hits_small_denominator(ilo, ihi, qmax);
}

qpoint lerp(const qpoint& a, const qpoint& b, const Rat& t) {
  return qpoint{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

// shrink the reach from `corner` toward `limit` until the closed arc avoids
// Lambda_{qmax}; returns false when even a 2^-64 reach fails
bool shrink_reach(const qpoint& corner, const qpoint& limit, long qmax, qpoint& reach_out) {
  Rat t(1, 4);
  for (int k = 0; k < 64; ++k) {
    qpoint r = lerp(corner, limit, t);
    if (arc_admissible(corner, r, qmax)) {
      reach_out = r;
      return true;
    }
    t /= 2;
  }
  return false;
}

Rat segment_slope(const qpoint& a, const qpoint& b) {
  // chain segments are never vertical
  return (b.y - a.y) / (b.x - a.x);
}

qpoint mirror(const qpoint& p) { return qpoint{-p.x, p.y}; }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct pending_cut {
  size_t index;  // corner index in the current chain
  Rat slope, offset;
  long prime = 0;
  qpoint v_a, v_b;             // new vertices, in chain order
  qpoint limit_aa, limit_ab;   // protected reaches around v_a
  qpoint limit_ba, limit_bb;   // protected reaches around v_b
};

// line x2 = s*x1 + b intersected with the segment through p, q
qpoint intersect_cut(const Rat& s, const Rat& b, const qpoint& p, const qpoint& q) {
  Rat m = segment_slope(p, q);
  Rat x = (b - (p.y - m * p.x)) / (m - s);
  return qpoint{x, s * x + b};
}

}  // namespace

stage_polygon stage_polygon::build(const std::vector<long>& schedule, int stages,
                                   int max_stage) {
  if (stages < 0) throw config_error("stage count must be >= 0");
  if (stages > max_stage)
    throw config_error("stage " + std::to_string(stages) + " exceeds the cap " +
                       std::to_string(max_stage));
  if (stages > static_cast<int>(schedule.size()))
    throw config_error("schedule too short for the requested stage");
  for (size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1 || (i > 0 && schedule[i] <= schedule[i - 1]))
      throw config_error("schedule must be strictly increasing and positive");
  }

  stage_polygon D;
  D.schedule_ = schedule;
  D.chain_ = {qpoint{Rat(1, 2), Rat(1, 2)}, qpoint{Rat(0), Rat(1)},
              qpoint{Rat(-1, 2), Rat(1, 2)}};
  D.corners_ = {protected_corner{1, D.chain_.front(), D.chain_.back()}};

  for (int j = 1; j <= stages; ++j) {
    long qmax = schedule[static_cast<size_t>(j - 1)];
    std::vector<pending_cut> plan;

    // search a cut for every corner in the right half plus the axis; mirror
    // corners reuse the mirrored offsets
    for (const auto& corner : D.corners_) {
      const qpoint& X = D.chain_[corner.index];
      if (sgn(X.x) < 0) continue;
      const qpoint& P = D.chain_[corner.index - 1];
      const qpoint& Nx = D.chain_[corner.index + 1];
      Rat s_in = segment_slope(P, X), s_out = segment_slope(X, Nx);
      Rat s = (s_in + s_out) / 2;

      Rat b_hi = X.y - s * X.x;
      Rat b_lo = std::max(Rat(corner.limit_prev.y - s * corner.limit_prev.x),
                          Rat(corner.limit_next.y - s * corner.limit_next.x));
      if (!(b_lo < b_hi)) throw error("empty offset window at stage " + std::to_string(j));

      bool found = false;
      pending_cut cut;
      for (long p = qmax + 1; p < qmax + 4000 && !found; ++p) {
        if (!is_prime(p)) continue;
        Int mlo = floor_rat(b_lo * p) + 1, mhi = ceil_rat(b_hi * p) - 1;
        for (Int m = mlo; m <= mhi && !found; ++m) {
          Rat b(m, p);
          b.canonicalize();
          if (!(b_lo < b && b < b_hi)) continue;
          qpoint va = intersect_cut(s, b, P, X);
          qpoint vb = intersect_cut(s, b, X, Nx);
          if (!vertex_ratio_admissible(va, qmax)) continue;
          if (!vertex_ratio_admissible(vb, qmax)) continue;
          // self-mirrored axis cut: vb must be the mirror of va
          if (sgn(X.x) == 0 && !(vb == mirror(va))) continue;
          pending_cut c;
          c.index = corner.index;
          c.slope = s;
          c.offset = b;
          c.prime = p;
          c.v_a = va;
          c.v_b = vb;
          if (!shrink_reach(va, corner.limit_prev, qmax, c.limit_aa)) continue;
          if (!shrink_reach(va, vb, qmax, c.limit_ab)) continue;
          if (!shrink_reach(vb, va, qmax, c.limit_ba)) continue;
          if (!shrink_reach(vb, corner.limit_next, qmax, c.limit_bb)) continue;
          cut = std::move(c);
          found = true;
        }
      }
      if (!found)
        throw error("offset search exhausted at stage " + std::to_string(j) +
                    " (schedule too dense for the stage cap)");
      plan.push_back(std::move(cut));

      if (sgn(X.x) > 0) {
        // mirrored instance for the symmetric corner
        pending_cut m;
        m.index = 0;  // resolved when applying
        m.slope = -cut.slope;
        m.offset = cut.offset;
        m.prime = cut.prime;
        m.v_a = mirror(cut.v_b);
        m.v_b = mirror(cut.v_a);
        m.limit_aa = mirror(cut.limit_bb);
        m.limit_ab = mirror(cut.limit_ba);
        m.limit_ba = mirror(cut.limit_ab);
        m.limit_bb = mirror(cut.limit_aa);
        // locate the mirrored corner in the chain
        qpoint MX = mirror(X);
        bool located = false;
        for (const auto& c2 : D.corners_)
          if (D.chain_[c2.index] == MX) {
            m.index = c2.index;
            located = true;
          }
        if (!located) throw error("mirror corner not found");
        plan.push_back(std::move(m));
      }
    }

    // apply the cuts back-to-front so chain indices stay valid
    std::sort(plan.begin(), plan.end(),
              [](const pending_cut& a, const pending_cut& b) { return a.index > b.index; });
    std::vector<protected_corner> new_corners;
    for (const auto& c : plan) {
      D.chain_[c.index] = c.v_a;
      D.chain_.insert(D.chain_.begin() + static_cast<long>(c.index) + 1, c.v_b);
      cut_record rec;
      rec.stage = j;
      rec.slope = c.slope;
      rec.offset = c.offset;
      rec.prime = c.prime;
      rec.v_new_a = c.v_a;
      rec.v_new_b = c.v_b;
      D.cuts_.push_back(rec);
    }
    // rebuild the corner list: every new vertex is a corner for the next stage
    for (const auto& c : plan) {
      for (size_t i = 0; i < D.chain_.size(); ++i) {
        if (D.chain_[i] == c.v_a)
          new_corners.push_back(protected_corner{i, c.limit_aa, c.limit_ab});
        if (D.chain_[i] == c.v_b)
          new_corners.push_back(protected_corner{i, c.limit_ba, c.limit_bb});
      }
    }
    std::sort(new_corners.begin(), new_corners.end(),
              [](const protected_corner& a, const protected_corner& b) {
                return a.index < b.index;
              });
    D.corners_ = std::move(new_corners);
    D.stage_ = j;
  }
  return D;
}

polygonal_norm stage_polygon::ball() const {
  // assemble chain + reflections counterclockwise, then merge collinear runs
  auto swap_xy = [](const qpoint& p) { return qpoint{p.y, p.x}; };
  auto negate = [](const qpoint& p) { return qpoint{-p.x, -p.y}; };

  std::vector<qpoint> loop;
  for (const auto& p : chain_) loop.push_back(p);                      // top
  for (size_t i = 1; i < chain_.size(); ++i)                          // left
    loop.push_back(negate(swap_xy(chain_[chain_.size() - 1 - i])));
  for (size_t i = 1; i < chain_.size(); ++i) loop.push_back(negate(chain_[i]));  // bottom
  for (size_t i = 1; i + 1 < chain_.size(); ++i)                      // right
    loop.push_back(swap_xy(chain_[chain_.size() - 1 - i]));

  // drop vertices that are collinear with their neighbours
  std::vector<qpoint> kept;
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const qpoint& a = loop[(i + n - 1) % n];
    const qpoint& b = loop[i];
    const qpoint& c = loop[(i + 1) % n];
    Rat cr = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    if (sgn(cr) != 0) kept.push_back(b);
  }

  ring_ptr rg = presets::field_by_name("rational");
  std::vector<point> verts;
  verts.reserve(kept.size());
  for (const auto& p : kept)
    verts.push_back(point{rg->from_rational(p.x), rg->from_rational(p.y)});
  return polygonal_norm::create(std::move(verts));
}

containment_report verify_containment_bound(const stage_polygon& D, long N,
                                            const distset::budget& b) {
  int j = D.stage();
  const auto& sched = D.schedule();
  long lo = (j == 0) ? 0 : sched[static_cast<size_t>(j - 1)];
  if (N <= lo) throw config_error("threshold below the stage's validity range");
  if (j < static_cast<int>(sched.size()) && N > sched[static_cast<size_t>(j)])
    throw config_error("threshold beyond the stage's validity range");

  polygonal_norm ball = D.ball();
  containment_report rep;

  // (1.7): the ball sits inside [-1,1]^2, so the norm dominates the sup norm
  bool floor_ok = true;
  Rat one(1);
  for (const auto& v : ball.vertices()) {
    if (abs_rat(v.x.rational_value()) > one || abs_rat(v.y.rational_value()) > one)
      floor_ok = false;
  }
  const ring_ptr& rg = ball.owner();
  const long spots[][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 3}, {-5, 2}, {7, -11}, {N, N}};
  for (const auto& sp : spots) {
    point p{rg->from_rational(Rat(sp[0])), rg->from_rational(Rat(sp[1]))};
    Rat sup = std::max(abs_rat(Rat(sp[0])), abs_rat(Rat(sp[1])));
    if (ball.eval(p).compare_at_zero(rg->from_rational(sup)) < 0) floor_ok = false;
  }
  rep.coord_floor_ok = floor_ok;

  auto dist = distset::distance_set(distset::planar_set::z2(), ball, Rat(N),
                                    distset::distance_mode::threshold, b);
  rep.count = dist.count();
  rep.bound = (1ULL << (2 * j + 3)) * static_cast<unsigned long long>(N);
  rep.pass = floor_ok && rep.count <= rep.bound;
  return rep;
}

polygonal_norm affine_slope_change(const polygonal_norm& P, const ring_element& alpha) {
  if (alpha.is_zero()) throw error("affine slope change needs alpha != 0");
  ring_element inv = alpha.inverse();
  std::vector<point> verts;
  verts.reserve(P.vertices().size());
  for (const auto& v : P.vertices()) verts.push_back(point{v.x, v.y * inv});
  return polygonal_norm::create(std::move(verts));
}

}  // namespace polydist::construction

#include "polydist/distset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "polydist/parallel.hpp"

namespace polydist::distset {

using exactnum::ring_element_hash;

planar_set planar_set::z2() {
  planar_set s;
  s.k = kind::z2;
  return s;
}

planar_set planar_set::product(modelset::planar_window w) {
  planar_set s;
  s.k = kind::product;
  s.ring = w.x.field;
  s.window = std::move(w);
  return s;
}

planar_set planar_set::explicit_points(std::vector<point> p) {
  planar_set s;
  s.k = kind::points;
  if (!p.empty()) s.ring = p.front().x.owner();
  s.pts = std::move(p);
  return s;
}

bool planar_set::empty() const {
  switch (k) {
    case kind::z2:
      return false;
    case kind::product:
      return window->size() == 0;
    case kind::points:
      return pts.empty();
  }
  return true;
}

ring_element canonical_distance(const polygonal_norm& P, const point& z) {
  return P.eval(z);
}

namespace {

// ---- shared helpers ----------------------------------------------------------

void sort_values(std::vector<ring_element>& vals) {
  std::vector<double> key(vals.size());
  double mag = 1.0;
  for (size_t i = 0; i < vals.size(); ++i) {
    key[i] = vals[i].approx();
    mag = std::max(mag, std::fabs(key[i]));
  }
  double margin = 1e-9 * mag + 1e-12;
  std::vector<size_t> order(vals.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (key[a] < key[b] - margin) return true;
    if (key[b] < key[a] - margin) return false;
    return vals[a].compare_at_zero(vals[b]) < 0;
  });
  std::vector<ring_element> out;
  out.reserve(vals.size());
  for (size_t i : order) out.push_back(std::move(vals[i]));
  vals = std::move(out);
}

// one element per value of a 1-D list, plus doubles and (when all
// coordinates are small integers over a field of degree <= 2) packed integer
// coordinates for the fast kernel
struct axis_list {
  std::vector<ring_element> els;
  std::vector<double> approx;
  bool integral = false;
  std::vector<std::array<long, 2>> icoords;
};

axis_list make_axis(std::vector<ring_element> els, const ring_ptr& rg) {
  axis_list ax;
  ax.els = std::move(els);
  ax.approx.reserve(ax.els.size());
  for (const auto& e : ax.els) ax.approx.push_back(e.approx());
  if (!rg->is_symbolic() && rg->degree() <= 2) {
    ax.integral = true;
    ax.icoords.reserve(ax.els.size());
    const long limit = 1L << 25;
    for (const auto& e : ax.els) {
      std::array<long, 2> row{0, 0};
      const auto& c = e.coords();
      for (size_t j = 0; j < c.size() && ax.integral; ++j) {
        if (c[j].get_den() != 1 || !c[j].get_num().fits_slong_p()) {
          ax.integral = false;
          break;
        }
        long v = c[j].get_num().get_si();
        if (v <= -limit || v >= limit) {
          ax.integral = false;
          break;
        }
        row[j] = v;
      }
      ax.icoords.push_back(row);
    }
    if (!ax.integral) ax.icoords.clear();
  }
  return ax;
}

// keep only entries with |value| provably possibly <= bound
void filter_axis(axis_list& ax, double bound) {
  double cut = bound * (1.0 + 1e-9) + 1e-6 * (1.0 + bound);
  axis_list out;
  out.integral = ax.integral;
  for (size_t i = 0; i < ax.els.size(); ++i) {
    if (std::fabs(ax.approx[i]) > cut) continue;
    out.els.push_back(std::move(ax.els[i]));
    out.approx.push_back(ax.approx[i]);
    if (ax.integral) out.icoords.push_back(ax.icoords[i]);
  }
  ax = std::move(out);
}

struct prepped_facets {
  struct entry {
    ring_element u1, u2;
    double d1, d2;
  };
  std::vector<entry> ent;  // antipodal representatives
  double coeff_mag = 0;
};

prepped_facets prep_facets(const polygonal_norm& P) {
  prepped_facets pf;
  size_t m = P.facets().size() / 2;
  for (size_t i = 0; i < m; ++i) {
    const auto& f = P.facets()[i];
    prepped_facets::entry e{f.u1, f.u2, f.u1.approx(), f.u2.approx()};
    pf.coeff_mag = std::max({pf.coeff_mag, std::fabs(e.d1), std::fabs(e.d2)});
    pf.ent.push_back(std::move(e));
  }
  return pf;
}

ring_element mul_maybe_rational(const ring_element& u, const ring_element& z) {
  if (z.is_rational()) return u.scale(z.rational_value());
  return u * z;
}

// ---- generic kernel ------------------------------------------------------------

struct generic_acc {
  std::unordered_set<ring_element, ring_element_hash> vals;
};

// evaluate ||(zx, zy)|| exactly and record it if within the threshold
void eval_generic(const prepped_facets& pf, const ring_element& zx, const ring_element& zy,
                  double zxd, double zyd, bool threshold, const ring_element& Nel, double Nd,
                  double margin, generic_acc& acc, size_t max_values) {
  double best_d = 0;
  for (const auto& e : pf.ent)
    best_d = std::max(best_d, std::fabs(e.d1 * zxd + e.d2 * zyd));
  if (threshold && best_d > Nd + margin) return;

  ring_element best;
  bool have = false;
  for (const auto& e : pf.ent) {
    double vd = std::fabs(e.d1 * zxd + e.d2 * zyd);
    if (have && vd < best_d - margin) continue;  // provably below the max
    ring_element v = (mul_maybe_rational(e.u1, zx) + mul_maybe_rational(e.u2, zy)).abs_at_zero();
    if (!have || v.compare_at_zero(best) > 0) {
      best = std::move(v);
      have = true;
    }
  }
  if (threshold && best.compare_at_zero(Nel) > 0) return;
  if (acc.vals.size() >= max_values) throw budget_error("distance value budget exceeded");
  acc.vals.insert(std::move(best));
}

// ---- fast kernel for integer coordinates over degree <= 2 fields ----------------

struct triple {
  long a = 0, b = 0, c = 1;  // value = (a + b*alpha)/c, canonical

  bool operator==(const triple& o) const { return a == o.a && b == o.b && c == o.c; }
};

struct triple_hash {
  std::size_t operator()(const triple& t) const {
    std::size_t h = hash_mix(0x7d15fb3u, static_cast<std::size_t>(t.a));
    h = hash_mix(h, static_cast<std::size_t>(t.b));
    return hash_mix(h, static_cast<std::size_t>(t.c));
  }
};

struct fast_ctx {
  bool ok = false;
  unsigned degree = 1;
  long c0 = 0, c1 = 0;  // minpoly x^2 + c1 x + c0
  struct fentry {
    long a10, a11, a20, a21;  // L*u1 = a10 + a11*alpha, L*u2 = a20 + a21*alpha
  };
  std::vector<fentry> f;
  long L = 1;
  __int128 alpha_lo = 0, alpha_hi = 0;  // bracket of alpha0 * 2^64
  bool threshold = true;
  long Nint = 0;
};

// sign of V0 + V1*alpha0; 2 when the fixed-point bracket cannot decide
int sign_fast(__int128 V0, __int128 V1, const fast_ctx& c) {
  if (V1 == 0) return V0 > 0 ? 1 : (V0 < 0 ? -1 : 0);
  __int128 base = V0 << 64;
  __int128 lo = base + V1 * (V1 > 0 ? c.alpha_lo : c.alpha_hi);
  __int128 hi = base + V1 * (V1 > 0 ? c.alpha_hi : c.alpha_lo);
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 2;
}

fast_ctx make_fast_ctx(const polygonal_norm& P, const Rat& N, bool threshold,
                       const axis_list& Dx, const axis_list& Dy) {
  fast_ctx c;
  const ring_ptr& rg = P.owner();
  if (rg->is_symbolic() || rg->degree() > 2) return c;
  if (!Dx.integral || !Dy.integral) return c;
  const long coef_limit = 1L << 20;

  c.degree = rg->degree();
  if (c.degree == 2) {
    const auto& mz = rg->minpoly_coeffs();
    if (!mz[0].fits_slong_p() || !mz[1].fits_slong_p()) return c;
    c.c0 = mz[0].get_si();
    c.c1 = mz[1].get_si();
    if (std::llabs(c.c0) > 64 || std::llabs(c.c1) > 64) return c;
  }

  // common denominator over every facet coordinate
  Int L(1);
  size_t m = P.facets().size() / 2;
  for (size_t i = 0; i < m; ++i)
    for (const ring_element* u : {&P.facets()[i].u1, &P.facets()[i].u2})
      for (const auto& q : u->coords()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
  if (!L.fits_slong_p() || L.get_si() > coef_limit) return c;
  c.L = L.get_si();

  for (size_t i = 0; i < m; ++i) {
    auto scaled = [&](const ring_element& u, int idx) -> std::optional<long> {
      const auto& q = u.coords()[static_cast<size_t>(idx)];
      Rat s = q * Rat(c.L);
      s.canonicalize();
      if (s.get_den() != 1 || !s.get_num().fits_slong_p()) return std::nullopt;
      long v = s.get_num().get_si();
      if (std::llabs(v) > coef_limit) return std::nullopt;
      return v;
    };
    const auto& ft = P.facets()[i];
    auto a10 = scaled(ft.u1, 0), a20 = scaled(ft.u2, 0);
    std::optional<long> a11(0L), a21(0L);
    if (c.degree == 2) {
      a11 = scaled(ft.u1, 1);
      a21 = scaled(ft.u2, 1);
    }
    if (!a10 || !a11 || !a20 || !a21) return c;
    c.f.push_back({*a10, *a11, *a20, *a21});
  }

  c.threshold = threshold;
  if (threshold) {
    if (N.get_den() != 1 || !N.get_num().fits_slong_p()) return c;
    c.Nint = N.get_num().get_si();
    if (c.Nint < 0 || c.Nint > (1L << 30)) return c;
  }

  if (c.degree == 2) {
    rint a = rg->embedding(0, Rat(Int(1), Int(1) << 80)).re;
    Rat lo = a.lo * pow_rat(Rat(2), 64), hi = a.hi * pow_rat(Rat(2), 64);
    Int flo = floor_rat(lo), fhi = ceil_rat(hi);
    if (mpz_sizeinbase(flo.get_mpz_t(), 2) > 70 || mpz_sizeinbase(fhi.get_mpz_t(), 2) > 70)
      return c;
    auto to128 = [](const Int& z) {
      bool neg = sgn(z) < 0;
      Int az = abs(z);
      __int128 v = 0;
      for (int i = static_cast<int>(mpz_size(az.get_mpz_t())) - 1; i >= 0; --i)
        v = (v << (8 * static_cast<int>(sizeof(mp_limb_t)))) +
            static_cast<__int128>(mpz_getlimbn(az.get_mpz_t(), static_cast<mp_size_t>(i)));
      return neg ? -v : v;
    };
    c.alpha_lo = to128(flo);
    c.alpha_hi = to128(fhi);
  }
  c.ok = true;
  return c;
}

struct fast_acc {
  std::unordered_set<triple, triple_hash> vals;
  std::vector<std::array<long, 4>> fallback;  // rare undecided vectors
};

void eval_fast(const fast_ctx& c, const std::array<long, 2>& zx, const std::array<long, 2>& zy,
               fast_acc& acc, size_t max_values) {
  long bx0 = 0, bx1 = 0;
  bool have = false;
  for (const auto& e : c.f) {
    long blow1 = e.a11 * zx[1] + e.a21 * zy[1];  // alpha^2 overflow coefficient
    long V0 = e.a10 * zx[0] + e.a20 * zy[0] - c.c0 * blow1;
    long V1 = e.a10 * zx[1] + e.a11 * zx[0] + e.a20 * zy[1] + e.a21 * zy[0] - c.c1 * blow1;
    int s = sign_fast(V0, V1, c);
    if (s == 2) {
      acc.fallback.push_back({zx[0], zx[1], zy[0], zy[1]});
      return;
    }
    if (s < 0) {
      V0 = -V0;
      V1 = -V1;
    }
    if (!have) {
      bx0 = V0;
      bx1 = V1;
      have = true;
      continue;
    }
    int cmp = sign_fast(static_cast<__int128>(V0) - bx0, static_cast<__int128>(V1) - bx1, c);
    if (cmp == 2) {
      acc.fallback.push_back({zx[0], zx[1], zy[0], zy[1]});
      return;
    }
    if (cmp > 0) {
      bx0 = V0;
      bx1 = V1;
    }
  }
  if (c.threshold) {
    int s = sign_fast(static_cast<__int128>(bx0) - static_cast<__int128>(c.Nint) * c.L,
                      bx1, c);
    if (s == 2) {
      acc.fallback.push_back({zx[0], zx[1], zy[0], zy[1]});
      return;
    }
    if (s > 0) return;
  }
  long g = std::gcd(std::gcd(std::labs(bx0), std::labs(bx1)), c.L);
  if (g == 0) g = 1;
  if (acc.vals.size() >= max_values) throw budget_error("distance value budget exceeded");
  acc.vals.insert(triple{bx0 / g, bx1 / g, c.L / g});
}

// ---- difference streams ----------------------------------------------------------

std::vector<ring_element> integer_range_elements(const ring_ptr& rg, long lo, long hi) {
  std::vector<ring_element> out;
  out.reserve(static_cast<size_t>(hi - lo + 1));
  for (long v = lo; v <= hi; ++v) out.push_back(rg->from_rational(Rat(v)));
  return out;
}

bool is_axis_box(const polygonal_norm& P) {
  for (const auto& f : P.facets())
    if (!f.u1.is_zero() && !f.u2.is_zero()) return false;
  return true;
}

// half-width of the integer box N*BX for an axis-box norm, per coordinate
std::pair<long, long> axis_box_halfwidths(const polygonal_norm& P, const Rat& N) {
  std::optional<Rat> b1, b2;
  for (const auto& f : P.facets()) {
    if (!f.u1.is_zero()) {
      Rat w = N / abs_rat(f.u1.rational_value());
      b1 = b1 ? std::min(*b1, w) : w;
    } else {
      Rat w = N / abs_rat(f.u2.rational_value());
      b2 = b2 ? std::min(*b2, w) : w;
    }
  }
  return {floor_rat(*b1).get_si(), floor_rat(*b2).get_si()};
}

// lattice points of N*BX for a general norm (exact per-column ranges)
std::vector<point> z2_ball_points(const polygonal_norm& P, const Rat& N, size_t cap) {
  const ring_ptr& rg = P.owner();
  Rat xi = P.coord_bound();
  long B = floor_rat(N * xi).get_si();
  std::vector<point> out;
  for (long x1 = -B; x1 <= B; ++x1) {
    // x2 range: for every facet, u1*x1 + u2*x2 <= N
    Rat lo = -(N * xi), hi = N * xi;
    bool empty = false;
    for (const auto& f : P.facets()) {
      // facet coefficients are rational for every shipped lattice norm; the
      // symbolic hexagon is handled by the generic sign tests below instead
      if (f.u2.is_rational() && f.u1.is_rational()) {
        Rat u1 = f.u1.rational_value(), u2 = f.u2.rational_value();
        Rat rhs = N - u1 * Rat(x1);
        if (sgn(u2) == 0) {
          if (Rat(0) > rhs) empty = true;
          continue;
        }
        Rat b = rhs / u2;
        if (sgn(u2) > 0)
          hi = std::min(hi, b);
        else
          lo = std::max(lo, b);
      }
    }
    if (empty || lo > hi) continue;
    for (Int x2 = ceil_rat(lo); x2 <= floor_rat(hi); ++x2) {
      point p{rg->from_rational(Rat(x1)), rg->from_rational(Rat(x2))};
      if (P.eval(p).compare_at_zero(rg->from_rational(N)) > 0) continue;  // exact gate
      if (out.size() >= cap) throw budget_error("ball window exceeds the point budget");
      out.push_back(std::move(p));
    }
  }
  return out;
}

struct dpoint_hash {
  std::size_t operator()(const point& p) const {
    return hash_mix(p.x.hash(), p.y.hash());
  }
};
struct dpoint_eq {
  bool operator()(const point& a, const point& b) const { return a == b; }
};

std::vector<point> pairwise_differences(const std::vector<point>& pts,
                                        unsigned long long max_pairs) {
  unsigned long long n = pts.size();
  if (n * n > max_pairs) throw budget_error("pair count exceeds the budget");
  std::unordered_set<point, dpoint_hash, dpoint_eq> seen;
  for (const auto& a : pts)
    for (const auto& b : pts) seen.insert(a - b);
  return {seen.begin(), seen.end()};
}

}  // namespace

// ---- distance_set -----------------------------------------------------------------

distance_set_result distance_set(const planar_set& S, const polygonal_norm& P, const Rat& N,
                                 distance_mode mode, const budget& b) {
  if (sgn(N) <= 0) throw error("distance threshold must be positive");
  const ring_ptr& rg = P.owner();
  if (S.ring && !rg->same_ring(*S.ring))
    throw ring_mismatch_error("point set ring differs from the norm ring");

  distance_set_result res;
  res.threshold_el = rg->from_rational(N);
  if (S.empty()) return res;

  bool threshold = (mode == distance_mode::threshold);
  Rat xi = P.coord_bound();

  // Build the two axis lists whose product is the difference-vector stream,
  // or an explicit difference list for irregular sets.
  std::optional<axis_list> Dx, Dy;
  std::vector<point> explicit_diffs;

  switch (S.k) {
    case planar_set::kind::z2: {
      if (threshold) {
        long B = floor_rat(N * xi).get_si();
        auto els = integer_range_elements(rg, -B, B);
        Dx = make_axis(els, rg);
        Dy = *Dx;
      } else if (is_axis_box(P)) {
        auto [b1, b2] = axis_box_halfwidths(P, N);
        Dx = make_axis(integer_range_elements(rg, -2 * b1, 2 * b1), rg);
        Dy = make_axis(integer_range_elements(rg, -2 * b2, 2 * b2), rg);
      } else {
        explicit_diffs =
            pairwise_differences(z2_ball_points(P, N, b.max_window_points), b.max_vector_pairs);
      }
      break;
    }
    case planar_set::kind::product: {
      if (threshold) {
        modelset::windowed_set D = modelset::difference_set(S.window->x);
        Dx = make_axis(D.points, rg);
        if (&S.window->y == &S.window->x || S.window->y.points == S.window->x.points) {
          Dy = *Dx;
        } else {
          modelset::windowed_set Dy_set = modelset::difference_set(S.window->y);
          Dy = make_axis(Dy_set.points, rg);
        }
      } else {
        std::vector<point> pts;
        for (const auto& a : S.window->x.points)
          for (const auto& c : S.window->y.points) {
            point p{a, c};
            if (P.eval(p).compare_at_zero(res.threshold_el) > 0) continue;
            if (pts.size() >= b.max_window_points)
              throw budget_error("ball window exceeds the point budget");
            pts.push_back(std::move(p));
          }
        explicit_diffs = pairwise_differences(pts, b.max_vector_pairs);
      }
      break;
    }
    case planar_set::kind::points: {
      std::vector<point> pts = S.pts;
      if (!threshold) {
        std::vector<point> kept;
        for (auto& p : pts)
          if (P.eval(p).compare_at_zero(res.threshold_el) <= 0) kept.push_back(std::move(p));
        pts = std::move(kept);
      }
      explicit_diffs = pairwise_differences(pts, b.max_vector_pairs);
      break;
    }
  }

  prepped_facets pf = prep_facets(P);
  double Nd = to_double(N);
  ring_element Nel = res.threshold_el;

  std::vector<ring_element> merged;

  if (Dx) {
    if (threshold) {
      filter_axis(*Dx, Nd * to_double(xi));
      filter_axis(*Dy, Nd * to_double(xi));
    }
    unsigned long long pairs =
        static_cast<unsigned long long>(Dx->els.size()) * Dy->els.size();
    if (pairs > b.max_vector_pairs)
      throw budget_error("difference-vector pair count " + std::to_string(pairs) +
                         " exceeds the budget");

    double zmag = 0;
    for (double v : Dx->approx) zmag = std::max(zmag, std::fabs(v));
    for (double v : Dy->approx) zmag = std::max(zmag, std::fabs(v));
    double margin = 1e-6 * (1.0 + Nd) + 1e-9 * (1.0 + pf.coeff_mag) * (1.0 + zmag);

    fast_ctx fc = make_fast_ctx(P, N, threshold, *Dx, *Dy);
    if (const char* env = std::getenv("POLYDIST_NO_FASTPATH"); env && env[0] == '1')
      fc.ok = false;

    unsigned workers = worker_count();
    if (fc.ok) {
      std::vector<fast_acc> accs(workers);
      parallel_chunks(Dx->els.size(), [&](unsigned w, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
          for (size_t j = 0; j < Dy->els.size(); ++j)
            eval_fast(fc, Dx->icoords[i], Dy->icoords[j], accs[w], b.max_values);
      });
      std::unordered_set<triple, triple_hash> all;
      generic_acc extra;
      for (auto& a : accs) {
        for (const auto& t : a.vals) all.insert(t);
        for (const auto& fb : a.fallback) {
          ring_element zx = rg->element({Rat(fb[0]), Rat(fb[1])});
          ring_element zy = rg->element({Rat(fb[2]), Rat(fb[3])});
          eval_generic(pf, zx, zy, zx.approx(), zy.approx(), threshold, Nel, Nd, margin,
                       extra, b.max_values);
        }
      }
      merged.reserve(all.size() + extra.vals.size());
      for (const auto& t : all) {
        Rat ca(t.a, t.c), cb(t.b, t.c);
        ca.canonicalize();
        cb.canonicalize();
        if (rg->degree() == 1)
          merged.push_back(rg->element({ca}));
        else
          merged.push_back(rg->element({ca, cb}));
      }
      for (const auto& v : extra.vals)
        if (std::find(merged.begin(), merged.end(), v) == merged.end()) merged.push_back(v);
    } else {
      std::vector<generic_acc> accs(workers);
      parallel_chunks(Dx->els.size(), [&](unsigned w, size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i)
          for (size_t j = 0; j < Dy->els.size(); ++j)
            eval_generic(pf, Dx->els[i], Dy->els[j], Dx->approx[i], Dy->approx[j], threshold,
                         Nel, Nd, margin, accs[w], b.max_values);
      });
      std::unordered_set<ring_element, ring_element_hash> all;
      for (auto& a : accs)
        for (auto& v : a.vals) all.insert(std::move(v));
      merged.assign(all.begin(), all.end());
    }
  } else {
    double zmag = 0;
    std::vector<double> zxd(explicit_diffs.size()), zyd(explicit_diffs.size());
    for (size_t i = 0; i < explicit_diffs.size(); ++i) {
      zxd[i] = explicit_diffs[i].x.approx();
      zyd[i] = explicit_diffs[i].y.approx();
      zmag = std::max({zmag, std::fabs(zxd[i]), std::fabs(zyd[i])});
    }
    double margin = 1e-6 * (1.0 + Nd) + 1e-9 * (1.0 + pf.coeff_mag) * (1.0 + zmag);
    unsigned workers = worker_count();
    std::vector<generic_acc> accs(workers);
    parallel_chunks(explicit_diffs.size(), [&](unsigned w, size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i)
        eval_generic(pf, explicit_diffs[i].x, explicit_diffs[i].y, zxd[i], zyd[i], threshold,
                     Nel, Nd, margin, accs[w], b.max_values);
    });
    std::unordered_set<ring_element, ring_element_hash> all;
    for (auto& a : accs)
      for (auto& v : a.vals) all.insert(std::move(v));
    merged.assign(all.begin(), all.end());
  }

  sort_values(merged);
  res.values = std::move(merged);
  return res;
}

// ---- growth scans -------------------------------------------------------------------

set_generator set_generator::z2() {
  set_generator g;
  g.k = kind::z2;
  return g;
}

set_generator set_generator::model(modelset::model_set_spec spec, std::optional<Rat> wf) {
  set_generator g;
  g.k = kind::modelset;
  g.spec = std::move(spec);
  g.window_factor = std::move(wf);
  return g;
}

void fit_loglog(growth_report& rep) {
  size_t n = rep.schedule.size();
  if (n < 2) {
    rep.exponent = 0;
    rep.intercept = n ? std::log(static_cast<double>(rep.counts[0])) : 0;
    rep.residual = 0;
    return;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs(n), ys(n);
  for (size_t i = 0; i < n; ++i) {
    xs[i] = std::log(to_double(rep.schedule[i]));
    ys[i] = std::log(static_cast<double>(rep.counts[i]));
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double dn = static_cast<double>(n);
  double denom = dn * sxx - sx * sx;
  rep.exponent = (dn * sxy - sx * sy) / denom;
  rep.intercept = (sy - rep.exponent * sx) / dn;
  double rss = 0;
  for (size_t i = 0; i < n; ++i) {
    double e = ys[i] - (rep.intercept + rep.exponent * xs[i]);
    rss += e * e;
  }
  rep.residual = std::sqrt(rss / dn);
}

growth_report growth_scan(const set_generator& gen, const polygonal_norm& P,
                          const std::vector<Rat>& schedule, distance_mode mode,
                          const budget& b) {
  if (schedule.empty()) throw config_error("empty schedule");
  for (size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] < schedule[i + 1]))
      throw config_error("schedule must be strictly increasing");
  if (sgn(schedule.front()) <= 0) throw config_error("schedule entries must be positive");

  growth_report rep;
  rep.schedule = schedule;

  if (gen.k == set_generator::kind::z2) {
    for (const Rat& N : schedule)
      rep.counts.push_back(distance_set(planar_set::z2(), P, N, mode, b).count());
  } else {
    Rat xi = P.coord_bound();
    Rat wf = gen.window_factor.value_or(xi);
    if (wf < xi)
      throw config_error("window factor " + to_fraction_string(wf) +
                         " is below the norm coordinate bound " + to_fraction_string(xi) +
                         "; the window cannot contain all relevant pairs");
    Rat Rmax = wf * schedule.back();
    modelset::windowed_set T = modelset::enumerate_T(*gen.spec, Rmax, b.max_window_points);
    for (const Rat& N : schedule) {
      Rat RN = wf * N;
      ring_element lo = T.field->from_rational(-RN), hi = T.field->from_rational(RN);
      auto first = std::partition_point(T.points.begin(), T.points.end(),
                                        [&](const ring_element& e) {
                                          return e.compare_at_zero(lo) < 0;
                                        });
      auto last = std::partition_point(first, T.points.end(), [&](const ring_element& e) {
        return e.compare_at_zero(hi) <= 0;
      });
      modelset::windowed_set TN;
      TN.field = T.field;
      TN.R = RN;
      TN.C = T.C;
      TN.points.assign(first, last);
      rep.counts.push_back(
          distance_set(planar_set::product(modelset::planar_window{TN, TN}), P, N, mode, b)
              .count());
    }
  }

  for (size_t i = 0; i + 1 < rep.counts.size(); ++i)
    if (rep.counts[i + 1] < rep.counts[i])
      throw error("distance counts decreased along the schedule");
  fit_loglog(rep);
  return rep;
}

// ---- closure of distances over the model-set band -------------------------------------

closure_report distance_closure_check(const distance_set_result& D, const polygonal_norm& P,
                                      const Rat& band) {
  const ring_ptr& rg = P.owner();
  if (rg->is_symbolic()) throw error("closure check needs a number field");
  unsigned d = rg->degree();
  size_t m = P.facets().size() / 2;

  // facet denominators and the derived band bound
  std::vector<Rat> dens;
  Rat c_prime(0);
  for (size_t i = 0; i < m; ++i) {
    const auto& ft = P.facets()[i];
    Int den(1);
    for (const ring_element* u : {&ft.u1, &ft.u2})
      for (const auto& q : u->coords())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    Rat denq(den);
    dens.push_back(denq);
    ring_element g1 = ft.u1.scale(denq), g2 = ft.u2.scale(denq);
    for (size_t k = 1; k < d; ++k) {
      Rat b1 = sqrt_upper_rat(abs_square(g1.embed(k, 48)).hi);
      Rat b2 = sqrt_upper_rat(abs_square(g2.embed(k, 48)).hi);
      c_prime = std::max(c_prime, Rat(band * (b1 + b2)));
    }
  }
  if (d == 1) c_prime = band;

  closure_report rep;
  rep.c_prime = c_prime;
  for (const auto& v : D.values) {
    ++rep.checked;
    bool pass_v = false;
    for (size_t i = 0; i < m && !pass_v; ++i) {
      ring_element w = v.scale(dens[i]);
      if (!w.has_integer_coords()) continue;
      bool ok = true;
      for (size_t k = 1; k < d && ok; ++k) {
        cbox emb = rg->embedding(k, Rat(Int(1), Int(1) << 48));
        if (emb.is_real()) {
          ring_element ce = rg->from_rational(c_prime);
          if ((w - ce).sign_at(k) > 0 || (w + ce).sign_at(k) < 0) ok = false;
        } else {
          if (w.compare_modulus_sq(k, c_prime) > 0) ok = false;
        }
      }
      pass_v = ok;
    }
    if (!pass_v) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

}  // namespace polydist::distset

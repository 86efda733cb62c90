#include "polydist/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace polydist {

Rat dyadic_floor(const Rat& q, unsigned bits) {
  Int scaled;
  Int num = q.get_num() << bits;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(scaled, Int(1) << bits);
  r.canonicalize();
  return r;
}

Rat dyadic_ceil(const Rat& q, unsigned bits) {
  Int scaled;
  Int num = q.get_num() << bits;
  mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  Rat r(scaled, Int(1) << bits);
  r.canonicalize();
  return r;
}

static rint dyadic_round_out(const rint& x, unsigned bits) {
  return rint(dyadic_floor(x.lo, bits), dyadic_ceil(x.hi, bits));
}

static cbox dyadic_round_out(const cbox& x, unsigned bits) {
  return cbox(dyadic_round_out(x.re, bits), dyadic_round_out(x.im, bits));
}

// ---- real roots: Sturm bisection ------------------------------------------

static std::vector<rint> isolate_real_roots(const Poly& p) {
  sturm_chain chain = sturm_chain::build(p);
  Rat bound = cauchy_root_bound(p);
  Rat b = Rat(ceil_rat(bound)) + 1;
  std::vector<rint> out;
  std::vector<rint> work{rint(-b, b)};
  while (!work.empty()) {
    rint iv = work.back();
    work.pop_back();
    int n = chain.count_roots(iv.lo, iv.hi);
    if (n == 0) continue;
    if (sgn(poly_eval(p, iv.lo)) == 0 || sgn(poly_eval(p, iv.hi)) == 0)
      throw error("rational root hit during isolation");
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    Rat mid = iv.mid();
    work.emplace_back(iv.lo, mid);
    work.emplace_back(mid, iv.hi);
  }
  std::sort(out.begin(), out.end(), [](const rint& a, const rint& b2) { return a.lo < b2.lo; });
  return out;
}

static rint bisect_real(const Poly& p, rint iv, const Rat& eps) {
  int slo = sgn(poly_eval(p, iv.lo));
  while (iv.width() > eps) {
    Rat mid = iv.mid();
    int sm = sgn(poly_eval(p, mid));
    if (sm == 0) throw error("rational root hit during refinement");
    if (sm == slo)
      iv = rint(mid, iv.hi);
    else
      iv = rint(iv.lo, mid);
  }
  return iv;
}

// ---- complex pairs: Aberth + Krawczyk --------------------------------------

static std::vector<std::complex<double>> aberth(const Poly& p, unsigned seed_shift) {
  size_t d = static_cast<size_t>(poly_deg(p));
  std::vector<double> c(d + 1);
  for (size_t i = 0; i <= d; ++i) c[i] = to_double(p[i]);
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 0, dv = 0;
    for (size_t i = d + 1; i-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[i];
    }
    return std::pair(v, dv);
  };
  double radius = 1.0 + to_double(cauchy_root_bound(p));
  std::vector<std::complex<double>> z(d);
  for (size_t i = 0; i < d; ++i) {
    double ang = 2.0 * 3.14159265358979 * (static_cast<double>(i) + 0.25 + 0.13 * seed_shift) /
                 static_cast<double>(d);
    z[i] = std::polar(radius * (0.4 + 0.08 * seed_shift), ang);
  }
  for (int iter = 0; iter < 300; ++iter) {
    double worst = 0;
    for (size_t i = 0; i < d; ++i) {
      auto [v, dv] = eval(z[i]);
      std::complex<double> ratio = (dv == 0.0) ? std::complex<double>(0) : v / dv;
      std::complex<double> sum = 0;
      for (size_t j = 0; j < d; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      std::complex<double> denom = 1.0 - ratio * sum;
      std::complex<double> step = (denom == 0.0) ? ratio : ratio / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

static Rat rat_from_double(double x, unsigned bits) {
  Rat q;
  mpq_set_d(q.get_mpq_t(), x);
  return dyadic_floor(q, bits);
}

// Krawczyk operator over a rectangle. Returns the operator image.
static cbox krawczyk(const Poly& p, const Poly& dp, const cbox& X) {
  cbox y(rint(X.re.mid()), rint(X.im.mid()));
  cbox dpy = poly_eval(dp, y);
  cbox Y = inv(dpy);  // throws if derivative box straddles zero
  cbox py = poly_eval(p, y);
  cbox dpX = poly_eval(dp, X);
  cbox one(rint(Rat(1)), rint(Rat(0)));
  cbox residual = one - Y * dpX;
  return y - Y * py + residual * (X - y);
}

static bool certify_unique(const Poly& p, const Poly& dp, const cbox& X) {
  try {
    cbox K = krawczyk(p, dp, X);
    return X.strictly_contains(K);
  } catch (const error&) {
    return false;
  }
}

static bool certify_pair(const Poly& p, const Poly& dp, std::complex<double> z,
                         cbox& out) {
  // one rational Newton polish at 96 bits, then try widths around the
  // floating residual
  const unsigned bits = 96;
  Rat re = rat_from_double(z.real(), bits), im = rat_from_double(z.imag(), bits);
  for (int polish = 0; polish < 2; ++polish) {
    cbox y{rint(re), rint(im)};
    cbox py = poly_eval(p, y), dpy = poly_eval(dp, y);
    rint d2 = abs_square(dpy);
    if (d2.contains_zero()) break;
    cbox step = py * inv(dpy);
    re = dyadic_floor(re - step.re.mid(), bits);
    im = dyadic_floor(im - step.im.mid(), bits);
  }
  double w0 = std::max(1e-12, 1e-10 * std::max(1.0, std::abs(z)));
  for (int k = 0; k < 40; ++k) {
    Rat w = rat_from_double(w0 * std::pow(1.8, k), bits + 16);
    if (sgn(w) <= 0) continue;
    cbox X(rint(re - w, re + w), rint(im - w, im + w));
    if (sgn(X.im.lo) <= 0) continue;  // must stay strictly above the real axis
    if (certify_unique(p, dp, X)) {
      out = X;
      return true;
    }
  }
  return false;
}

std::vector<root_enclosure> isolate_roots(const Poly& p) {
  int d = poly_deg(p);
  if (d < 1) throw error("cannot isolate roots of a constant");
  if (p.back() != 1) throw error("root isolation requires a monic polynomial");
  if (d == 1) {
    return {root_enclosure{cbox(-p[0]), true}};
  }
  Poly dp = poly_derivative(p);
  if (poly_deg(poly_gcd(p, dp)) > 0) throw error("polynomial is not squarefree");

  std::vector<root_enclosure> out;
  std::vector<rint> reals = isolate_real_roots(p);
  for (auto& iv : reals) {
    rint t = bisect_real(p, iv, Rat(1, 1024));
    out.push_back({cbox(t, rint(Rat(0))), true});
  }
  size_t pairs = static_cast<size_t>(d - static_cast<int>(reals.size())) / 2;
  if (reals.size() + 2 * pairs != static_cast<size_t>(d))
    throw error("real root count does not match degree parity");

  if (pairs > 0) {
    std::vector<cbox> upper;
    for (unsigned attempt = 0; attempt < 5 && upper.size() < pairs; ++attempt) {
      upper.clear();
      auto approx = aberth(p, attempt);
      std::sort(approx.begin(), approx.end(), [](auto a, auto b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
      });
      for (auto z : approx) {
        if (z.imag() < 1e-9) continue;
        cbox enc;
        if (!certify_pair(p, dp, z, enc)) continue;
        bool dup = false;
        for (auto& u : upper)
          if (!u.disjoint(enc)) dup = true;
        if (!dup) upper.push_back(enc);
      }
    }
    if (upper.size() != pairs) throw error("complex root certification failed");
    for (auto& u : upper) {
      out.push_back({u, false});
      out.push_back({u.conj(), false});
    }
  }

  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (!out[i].box.disjoint(out[j].box)) throw error("root enclosures overlap");
  return out;
}

cbox refine_enclosure(const Poly& p, const Poly& dp, const root_enclosure& r,
                      const Rat& eps) {
  if (r.box.max_width() <= eps) return r.box;
  if (r.real) {
    if (r.box.re.is_point()) return r.box;
    rint t = bisect_real(p, r.box.re, eps);
    return cbox(t, rint(Rat(0)));
  }
  cbox X = r.box;
  // Krawczyk contraction, endpoints rounded outward so denominators stay small
  unsigned bits = 64;
  for (int guard = 0; guard < 256 && X.max_width() > eps; ++guard) {
    while (Rat(Int(1), Int(1) << bits) > eps / 16) bits += 64;
    cbox K = dyadic_round_out(krawczyk(p, dp, X), bits);
    auto next = intersect(K, X);
    if (!next) throw error("refinement emptied a certified enclosure");
    if (!(next->max_width() < X.max_width())) {
      // stalled: fall back to quadrisection via the Krawczyk test
      bits += 64;
      cbox center(rint(X.re.mid() - X.re.width() / 4, X.re.mid() + X.re.width() / 4),
                  rint(X.im.mid() - X.im.width() / 4, X.im.mid() + X.im.width() / 4));
      if (certify_unique(p, dp, center)) {
        X = center;
        continue;
      }
      X = *next;
      continue;
    }
    X = *next;
  }
  if (X.max_width() > eps) throw precision_error("enclosure refinement stalled");
  return X;
}

}  // namespace polydist

/* Interval arithmetic with exact rational endpoints. No rounding happens
 * anywhere, so every enclosure is certified by construction; width control
 * is the caller's job (refine inputs, re-evaluate). Complex enclosures are
 * axis-aligned rectangles. */
#ifndef POLYDIST_INTERVAL_HPP
#define POLYDIST_INTERVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "polydist/rational.hpp"

namespace polydist {

struct rint {
  Rat lo, hi;

  rint() : lo(0), hi(0) {}
  explicit rint(const Rat& p) : lo(p), hi(p) {}
  rint(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw error("interval endpoints out of order");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const rint& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool disjoint(const rint& o) const { return hi < o.lo || o.hi < lo; }

  // sign of every point in the interval; nullopt if the interval straddles 0
  std::optional<int> sign() const {
    if (sgn(lo) > 0) return 1;
    if (sgn(hi) < 0) return -1;
    if (sgn(lo) == 0 && sgn(hi) == 0) return 0;
    return std::nullopt;
  }

  std::string str() const;
};

rint operator+(const rint& a, const rint& b);
rint operator-(const rint& a, const rint& b);
rint operator-(const rint& a);
rint operator*(const rint& a, const rint& b);
rint operator*(const Rat& c, const rint& a);
rint operator+(const rint& a, const Rat& c);
rint operator-(const rint& a, const Rat& c);

// 1/a; requires 0 not in a
rint inv(const rint& a);
rint abs(const rint& a);
rint square(const rint& a);
rint hull(const rint& a, const rint& b);
std::optional<rint> intersect(const rint& a, const rint& b);

struct cbox {
  rint re, im;

  cbox() = default;
  cbox(rint r, rint i) : re(std::move(r)), im(std::move(i)) {}
  explicit cbox(const Rat& x) : re(x), im(Rat(0)) {}

  bool is_real() const { return im.is_point() && sgn(im.lo) == 0; }
  Rat max_width() const {
    Rat wr = re.width(), wi = im.width();
    return wr > wi ? wr : wi;
  }
  bool disjoint(const cbox& o) const {
    return re.disjoint(o.re) || im.disjoint(o.im);
  }
  bool contains(const cbox& o) const {
    return re.contains(o.re) && im.contains(o.im);
  }
  bool strictly_contains(const cbox& o) const {
    return re.lo < o.re.lo && o.re.hi < re.hi && im.lo < o.im.lo && o.im.hi < im.hi;
  }
  cbox conj() const { return cbox(re, -im); }
  std::string str() const;
};

cbox operator+(const cbox& a, const cbox& b);
cbox operator-(const cbox& a, const cbox& b);
cbox operator*(const cbox& a, const cbox& b);
cbox operator*(const Rat& c, const cbox& a);
cbox inv(const cbox& a);  // requires 0 outside |a|
rint abs_square(const cbox& a);
std::optional<cbox> intersect(const cbox& a, const cbox& b);

// Horner evaluation of sum c[j] x^j over interval/box arguments.
rint eval_interval(const std::vector<Rat>& coeffs, const rint& x);
cbox eval_box(const std::vector<Rat>& coeffs, const cbox& x);

}  // namespace polydist

#endif

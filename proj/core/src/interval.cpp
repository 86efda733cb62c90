#include "polydist/interval.hpp"

#include <algorithm>

namespace polydist {

std::string rint::str() const {
  return "[" + to_fraction_string(lo) + ", " + to_fraction_string(hi) + "]";
}

rint operator+(const rint& a, const rint& b) { return rint(a.lo + b.lo, a.hi + b.hi); }
rint operator-(const rint& a, const rint& b) { return rint(a.lo - b.hi, a.hi - b.lo); }
rint operator-(const rint& a) { return rint(-a.hi, -a.lo); }

rint operator*(const rint& a, const rint& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return rint(std::min(std::min(p1, p2), std::min(p3, p4)),
              std::max(std::max(p1, p2), std::max(p3, p4)));
}

rint operator*(const Rat& c, const rint& a) {
  if (sgn(c) >= 0) return rint(c * a.lo, c * a.hi);
  return rint(c * a.hi, c * a.lo);
}

rint operator+(const rint& a, const Rat& c) { return rint(a.lo + c, a.hi + c); }
rint operator-(const rint& a, const Rat& c) { return rint(a.lo - c, a.hi - c); }

rint inv(const rint& a) {
  if (a.contains_zero()) throw error("interval inverse across zero");
  return rint(Rat(1) / a.hi, Rat(1) / a.lo);
}

rint abs(const rint& a) {
  if (sgn(a.lo) >= 0) return a;
  if (sgn(a.hi) <= 0) return -a;
  return rint(Rat(0), std::max<Rat>(-a.lo, a.hi));
}

rint square(const rint& a) {
  rint m = abs(a);
  return rint(m.lo * m.lo, m.hi * m.hi);
}

rint hull(const rint& a, const rint& b) {
  return rint(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

std::optional<rint> intersect(const rint& a, const rint& b) {
  Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return rint(lo, hi);
}

std::string cbox::str() const { return re.str() + " + i*" + im.str(); }

cbox operator+(const cbox& a, const cbox& b) { return cbox(a.re + b.re, a.im + b.im); }
cbox operator-(const cbox& a, const cbox& b) { return cbox(a.re - b.re, a.im - b.im); }

cbox operator*(const cbox& a, const cbox& b) {
  return cbox(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

cbox operator*(const Rat& c, const cbox& a) { return cbox(c * a.re, c * a.im); }

rint abs_square(const cbox& a) { return square(a.re) + square(a.im); }

cbox inv(const cbox& a) {
  rint d = abs_square(a);
  if (d.contains_zero()) throw error("complex interval inverse across zero");
  rint id = inv(d);
  return cbox(a.re * id, (-a.im) * id);
}

std::optional<cbox> intersect(const cbox& a, const cbox& b) {
  auto r = intersect(a.re, b.re);
  auto i = intersect(a.im, b.im);
  if (!r || !i) return std::nullopt;
  return cbox(*r, *i);
}

rint eval_interval(const std::vector<Rat>& coeffs, const rint& x) {
  rint acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cbox eval_box(const std::vector<Rat>& coeffs, const cbox& x) {
  cbox acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x;
    acc.re = acc.re + *it;
  }
  return acc;
}

}  // namespace polydist

#include "polydist/polynomial.hpp"

#include <algorithm>

namespace polydist {

void poly_trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

bool poly_is_zero(const Poly& p) { return p.empty(); }

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

Poly poly_scale(const Rat& c, const Poly& a) {
  if (sgn(c) == 0) return {};
  Poly r = a;
  for (auto& x : r) x *= c;
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& x : r) x = -x;
  return r;
}

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

rint poly_eval(const Poly& p, const rint& x) { return eval_interval(p, x); }

cbox poly_eval(const Poly& p, const cbox& x) { return eval_box(p, x); }

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * p[i];
  poly_trim(r);
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (poly_is_zero(b)) throw error("polynomial division by zero");
  Poly rem = a, quot;
  int db = poly_deg(b);
  const Rat& lead = b.back();
  while (poly_deg(rem) >= db) {
    int k = poly_deg(rem) - db;
    Rat c = rem.back() / lead;
    if (static_cast<int>(quot.size()) < k + 1) quot.resize(static_cast<size_t>(k) + 1, Rat(0));
    quot[static_cast<size_t>(k)] += c;
    for (int i = 0; i <= db; ++i)
      rem[static_cast<size_t>(i + k)] -= c * b[static_cast<size_t>(i)];
    poly_trim(rem);
  }
  poly_trim(quot);
  return {quot, rem};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

static Poly poly_monic(Poly p) {
  if (p.empty()) return p;
  Rat inv = Rat(1) / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!poly_is_zero(b)) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

std::pair<Poly, Poly> poly_half_ext_gcd(const Poly& a, const Poly& m) {
  // invariant: r0 = u0*a mod m, r1 = u1*a mod m
  Poly r0 = poly_mod(a, m), r1 = m;
  Poly u0 = {Rat(1)}, u1 = {};
  while (!poly_is_zero(r1)) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly u = poly_sub(u0, poly_mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u);
  }
  if (r0.empty()) return {r0, u0};
  Rat inv = Rat(1) / r0.back();
  return {poly_scale(inv, r0), poly_scale(inv, u0)};
}

bool monic_integer_root(const std::vector<Int>& coeffs, Int& root_out) {
  if (coeffs.size() < 2) return false;
  Int a0 = coeffs.front();
  auto eval_at = [&](const Int& r) {
    Int acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
    return acc;
  };
  if (sgn(a0) == 0) {
    root_out = 0;
    return true;
  }
  Int bound = abs(a0);
  for (Int d(1); d * d <= bound; ++d) {
    if (!mpz_divisible_p(a0.get_mpz_t(), d.get_mpz_t())) continue;
    Int e = bound / d;
    for (const Int& cand : std::vector<Int>{d, Int(-d), e, Int(-e)}) {
      if (sgn(eval_at(cand)) == 0) {
        root_out = cand;
        return true;
      }
    }
  }
  return false;
}

Rat cauchy_root_bound(const Poly& p) {
  if (poly_deg(p) < 1) return Rat(1);
  Rat m(0);
  for (size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, abs_rat(p[i]));
  return Rat(1) + m / abs_rat(p.back());
}

sturm_chain sturm_chain::build(const Poly& squarefree) {
  sturm_chain ch;
  ch.seq.push_back(squarefree);
  ch.seq.push_back(poly_derivative(squarefree));
  while (!poly_is_zero(ch.seq.back())) {
    Poly r = poly_neg(poly_mod(ch.seq[ch.seq.size() - 2], ch.seq.back()));
    if (poly_is_zero(r)) break;
    ch.seq.push_back(std::move(r));
  }
  return ch;
}

int sturm_chain::variations_at(const Rat& x) const {
  int var = 0, prev = 0;
  for (const auto& p : seq) {
    int s = sgn(poly_eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sturm_chain::count_roots(const Rat& a, const Rat& b) const {
  return variations_at(a) - variations_at(b);
}

}  // namespace polydist

#include "polydist/ring.hpp"

#include <algorithm>

#include "polydist/pi.hpp"

namespace polydist::exactnum {

static Rat eps_of_bits(unsigned bits) { return Rat(Int(1), Int(1) << bits); }

ring_ptr ring::number_field(const std::vector<Int>& minpoly, const rint& real_root_hint) {
  if (minpoly.size() < 2) throw config_error("minimal polynomial must have degree >= 1");
  if (minpoly.back() != 1) throw config_error("minimal polynomial must be monic");
  unsigned d = static_cast<unsigned>(minpoly.size() - 1);

  if (d >= 2) {
    Int root;
    if (monic_integer_root(minpoly, root))
      throw config_error("minimal polynomial has the rational root " + root.get_str() +
                         " (reducible)");
  }

  auto r = std::shared_ptr<ring>(new ring());
  r->degree_ = d;
  r->minpoly_z_ = minpoly;
  r->minpoly_.reserve(minpoly.size());
  for (const auto& c : minpoly) r->minpoly_.emplace_back(c);
  poly_trim(r->minpoly_);
  r->minpoly_deriv_ = poly_derivative(r->minpoly_);

  // power table: alpha^(d+k) reduced, k = 0..d-2
  if (d >= 1) {
    Poly cur(d, Rat(0));  // alpha^d
    for (unsigned j = 0; j < d; ++j) cur[j] = -Rat(minpoly[j]);
    r->power_table_.push_back(cur);
    for (unsigned k = 1; k + 1 < d; ++k) {
      Poly next(d, Rat(0));
      // multiply by alpha, fold the alpha^d overflow back in
      for (unsigned j = 0; j + 1 < d; ++j) next[j + 1] = cur[j];
      const Rat& top = cur[d - 1];
      for (unsigned j = 0; j < d; ++j) next[j] += top * r->power_table_[0][j];
      r->power_table_.push_back(next);
      cur = std::move(next);
    }
  }

  r->roots_ = isolate_roots(r->minpoly_);
  std::sort(r->roots_.begin(), r->roots_.end(), [](const root_enclosure& a, const root_enclosure& b) {
    if (a.box.re.lo != b.box.re.lo) return a.box.re.lo < b.box.re.lo;
    return a.box.im.lo < b.box.im.lo;
  });

  // the hint must isolate exactly one real root
  std::vector<size_t> in_hint;
  for (size_t i = 0; i < r->roots_.size(); ++i) {
    if (!r->roots_[i].real) continue;
    rint iv = r->roots_[i].box.re;
    for (int guard = 0; guard < 512; ++guard) {
      if (real_root_hint.contains(iv) || iv.disjoint(real_root_hint)) break;
      r->roots_[i].box = refine_enclosure(r->minpoly_, r->minpoly_deriv_, r->roots_[i],
                                          iv.width() / 4);
      iv = r->roots_[i].box.re;
    }
    if (real_root_hint.contains(iv))
      in_hint.push_back(i);
    else if (!iv.disjoint(real_root_hint))
      throw config_error("real root hint boundary could not be separated from a root");
  }
  if (in_hint.empty()) throw config_error("real root hint isolates no root");
  if (in_hint.size() > 1) throw config_error("real root hint contains several roots");
  r->real_index_ = in_hint.front();

  r->embedding_order_.push_back(r->real_index_);
  for (size_t i = 0; i < r->roots_.size(); ++i)
    if (i != r->real_index_) r->embedding_order_.push_back(i);
  return r;
}

ring_ptr ring::symbolic(const std::string& symbol) {
  auto r = std::shared_ptr<ring>(new ring());
  r->symbolic_ = true;
  r->symbol_ = symbol;
  r->symbol_bits_ = 64;
  r->symbol_enc_ = pi_enclosure(64);
  return r;
}

cbox ring::embedding(size_t k, const Rat& eps) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (symbolic_) {
    if (k != 0) throw error("symbolic ring has a single embedding");
    while (symbol_enc_.width() > eps) {
      symbol_bits_ = symbol_bits_ * 2;
      if (symbol_bits_ > kSignCapBits)
        throw precision_error("symbol enclosure refinement exceeded the precision cap");
      symbol_enc_ = pi_enclosure(symbol_bits_);
    }
    return cbox(symbol_enc_, rint(Rat(0)));
  }
  if (k >= embedding_order_.size()) throw error("embedding index out of range");
  root_enclosure& root = roots_[embedding_order_[k]];
  if (root.box.max_width() > eps)
    root.box = refine_enclosure(minpoly_, minpoly_deriv_, root, eps);
  return root.box;
}

cbox ring::embedding_now(size_t k) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (symbolic_) {
    if (k != 0) throw error("symbolic ring has a single embedding");
    return cbox(symbol_enc_, rint(Rat(0)));
  }
  if (k >= embedding_order_.size()) throw error("embedding index out of range");
  return roots_[embedding_order_[k]].box;
}

bool ring::same_ring(const ring& other) const {
  if (this == &other) return true;
  if (symbolic_ != other.symbolic_) return false;
  if (symbolic_) return symbol_ == other.symbol_;
  return minpoly_z_ == other.minpoly_z_ && real_index_ == other.real_index_;
}

ring_element ring::element(std::vector<Rat> coords) const {
  return ring_element(shared_from_this(), std::move(coords));
}

ring_element ring::from_rational(const Rat& q) const { return element({q}); }
ring_element ring::zero() const { return element({}); }
ring_element ring::one() const { return element({Rat(1)}); }

ring_element ring::generator() const {
  if (!symbolic_ && degree_ == 1) throw error("degree-1 field has no generator beyond Q");
  return element({Rat(0), Rat(1)});
}

std::string ring::describe() const {
  if (symbolic_) return "Q[" + symbol_ + "]";
  std::string s = "Q(alpha), minpoly=[";
  for (size_t i = 0; i < minpoly_z_.size(); ++i) {
    if (i) s += ",";
    s += minpoly_z_[i].get_str();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------

ring_element::ring_element(ring_ptr r, std::vector<Rat> coords)
    : ring_(std::move(r)), coords_(std::move(coords)) {
  if (!ring_) throw error("element without a ring");
  if (ring_->is_symbolic()) {
    poly_trim(coords_);
    return;
  }
  if (coords_.size() > ring_->degree())
    throw error("coordinate vector longer than the field degree");
  coords_.resize(ring_->degree(), Rat(0));
}

void ring_element::check_same_ring(const ring_element& o) const {
  if (!ring_ || !o.ring_) throw ring_mismatch_error("operation on an empty element");
  if (ring_.get() == o.ring_.get()) return;
  if (!ring_->same_ring(*o.ring_)) throw ring_mismatch_error("elements from different rings");
}

bool ring_element::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

bool ring_element::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return false;
  return true;
}

Rat ring_element::rational_value() const {
  if (!is_rational()) throw error("element is not rational");
  return coords_.empty() ? Rat(0) : coords_[0];
}

bool ring_element::has_integer_coords() const {
  for (const auto& c : coords_)
    if (c.get_den() != 1) return false;
  return true;
}

ring_element ring_element::operator+(const ring_element& o) const {
  check_same_ring(o);
  std::vector<Rat> r(std::max(coords_.size(), o.coords_.size()), Rat(0));
  for (size_t i = 0; i < coords_.size(); ++i) r[i] += coords_[i];
  for (size_t i = 0; i < o.coords_.size(); ++i) r[i] += o.coords_[i];
  return ring_element(ring_, std::move(r));
}

ring_element ring_element::operator-(const ring_element& o) const {
  check_same_ring(o);
  std::vector<Rat> r(std::max(coords_.size(), o.coords_.size()), Rat(0));
  for (size_t i = 0; i < coords_.size(); ++i) r[i] += coords_[i];
  for (size_t i = 0; i < o.coords_.size(); ++i) r[i] -= o.coords_[i];
  return ring_element(ring_, std::move(r));
}

ring_element& ring_element::operator+=(const ring_element& o) {
  *this = *this + o;
  return *this;
}

ring_element& ring_element::operator-=(const ring_element& o) {
  *this = *this - o;
  return *this;
}

ring_element ring_element::operator-() const {
  std::vector<Rat> r = coords_;
  for (auto& c : r) c = -c;
  return ring_element(ring_, std::move(r));
}

ring_element ring_element::operator*(const ring_element& o) const {
  check_same_ring(o);
  if (ring_->is_symbolic()) {
    Poly prod = poly_mul(coords_, o.coords_);
    return ring_element(ring_, std::move(prod));
  }
  unsigned d = ring_->degree();
  std::vector<Rat> prod(2 * d, Rat(0));
  for (size_t i = 0; i < d; ++i) {
    if (sgn(coords_[i]) == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (sgn(o.coords_[j]) == 0) continue;
      prod[i + j] += coords_[i] * o.coords_[j];
    }
  }
  std::vector<Rat> r(prod.begin(), prod.begin() + d);
  for (size_t k = 0; k + 1 < d; ++k) {
    const Rat& hi = prod[d + k];
    if (sgn(hi) == 0) continue;
    const Poly& row = ring_->power_table_[k];
    for (size_t j = 0; j < d; ++j) r[j] += hi * row[j];
  }
  return ring_element(ring_, std::move(r));
}

ring_element ring_element::scale(const Rat& c) const {
  std::vector<Rat> r = coords_;
  for (auto& x : r) x *= c;
  return ring_element(ring_, std::move(r));
}

ring_element ring_element::inverse() const {
  if (is_zero()) throw error("inverse of zero");
  if (is_rational()) return ring_->from_rational(Rat(1) / rational_value());
  if (ring_->is_symbolic())
    throw error("non-rational symbolic elements are not invertible in Q[x]");
  Poly a = coords_;
  poly_trim(a);
  auto [g, u] = poly_half_ext_gcd(a, ring_->minpoly());
  if (poly_deg(g) != 0)
    throw error("element is a zero divisor (minimal polynomial is reducible)");
  Poly inv = poly_scale(Rat(1) / g[0], u);
  inv = poly_mod(inv, ring_->minpoly());
  return ring_element(ring_, std::move(inv));
}

ring_element ring_element::pow(unsigned e) const {
  ring_element acc = ring_->one();
  ring_element base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool ring_element::operator==(const ring_element& o) const {
  check_same_ring(o);
  size_t n = std::max(coords_.size(), o.coords_.size());
  for (size_t i = 0; i < n; ++i) {
    const Rat zero(0);
    const Rat& a = i < coords_.size() ? coords_[i] : zero;
    const Rat& b = i < o.coords_.size() ? o.coords_[i] : zero;
    if (a != b) return false;
  }
  return true;
}

bool ring_element::lex_less(const ring_element& o) const {
  size_t n = std::max(coords_.size(), o.coords_.size());
  for (size_t i = 0; i < n; ++i) {
    const Rat zero(0);
    const Rat& a = i < coords_.size() ? coords_[i] : zero;
    const Rat& b = i < o.coords_.size() ? o.coords_[i] : zero;
    if (a != b) return a < b;
  }
  return false;
}

cbox ring_element::embed(size_t k, unsigned precision_bits) const {
  Rat target = eps_of_bits(precision_bits);
  if (is_zero()) return cbox(rint(Rat(0)), rint(Rat(0)));
  unsigned extra = 8;
  for (;;) {
    cbox root = ring_->embedding(k, eps_of_bits(precision_bits + extra));
    cbox val = eval_box(coords_, root);
    if (val.max_width() <= target) return val;
    if (extra >= kSignCapBits) throw precision_error("embedding refinement stalled");
    extra *= 2;
  }
}

int ring_element::sign_at_zero() const {
  if (is_zero()) return 0;
  // cheap first try with whatever enclosure is already cached
  {
    cbox root = ring_->embedding_now(0);
    auto s = eval_interval(coords_, root.re).sign();
    if (s) return *s;
  }
  for (unsigned bits = kSignStartBits; bits <= kSignCapBits; bits *= 2) {
    cbox root = ring_->embedding(0, eps_of_bits(bits));
    auto s = eval_interval(coords_, root.re).sign();
    if (s) return *s;
  }
  throw precision_error("sign undetermined at " + std::to_string(kSignCapBits) +
                        " bits: " + str() + " over " + ring_->describe() +
                        " (is the minimal polynomial irreducible?)");
}

int ring_element::compare_at_zero(const ring_element& o) const {
  return (*this - o).sign_at_zero();
}

int ring_element::sign_at(size_t k) const {
  if (k == 0) return sign_at_zero();
  if (is_zero()) return 0;
  if (is_rational()) return sgn(coords_[0]);
  for (unsigned bits = kSignStartBits; bits <= kSignCapBits; bits *= 2) {
    cbox root = ring_->embedding(k, eps_of_bits(bits));
    if (!root.is_real()) throw error("sign_at requires a real embedding");
    auto s = eval_interval(coords_, root.re).sign();
    if (s) return *s;
  }
  throw precision_error("sign undetermined at embedding " + std::to_string(k));
}

int ring_element::compare_modulus_sq(size_t k, const Rat& c) const {
  Rat c2 = c * c;
  if (is_zero()) return sgn(-c2);
  if (is_rational()) {
    Rat v = coords_[0] * coords_[0];
    return v < c2 ? -1 : (v == c2 ? 0 : 1);
  }
  for (unsigned bits = kSignStartBits; bits <= kSignCapBits; bits *= 2) {
    cbox val = embed(k, bits);
    auto s = (abs_square(val) - c2).sign();
    if (s) return *s;
  }
  throw precision_error(
      "modulus comparison undetermined at the precision cap (possible exact "
      "boundary tie |value| = " +
      to_fraction_string(c) + ")");
}

ring_element ring_element::abs_at_zero() const {
  return sign_at_zero() < 0 ? -*this : *this;
}

double ring_element::approx() const {
  if (is_zero()) return 0.0;
  cbox root = ring_->embedding_now(0);
  double x = to_double(root.re.mid());
  double acc = 0;
  for (auto it = coords_.rbegin(); it != coords_.rend(); ++it)
    acc = acc * x + to_double(*it);
  return acc;
}

std::size_t ring_element::hash() const {
  std::vector<Rat> trimmed = coords_;
  poly_trim(trimmed);
  return hash_rat_vec(trimmed);
}

std::string ring_element::str() const {
  std::string s = "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += to_fraction_string(coords_[i]);
  }
  return s + ")";
}

}  // namespace polydist::exactnum

#include "polydist/modelset.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace polydist::modelset {

using exactnum::ring;

static Rat eps96() { return Rat(Int(1), Int(1) << 96); }

// ---- linear constraint rows -------------------------------------------------
//
// Real row per real embedding (embedding 0 carries the window bound R, the
// others the band bound C); a complex conjugate pair contributes a Re row and
// an Im row, both relaxations of |z| <= C. The exact membership filter redoes
// every boundary decision, so the rows only have to be sound, not sharp.

namespace {

struct crow {
  std::vector<rint> w;
  Rat bound;  // row value constrained to [-bound, bound]
};

struct row_system {
  std::vector<crow> rows;
  std::vector<size_t> real_embeddings;  // k >= 1, real
  std::vector<size_t> pair_embeddings;  // one k per conjugate pair
};

row_system build_rows(const ring_ptr& field, const Rat& R, const Rat& C) {
  row_system sys;
  unsigned d = field->degree();
  for (size_t k = 0; k < d; ++k) {
    cbox box = field->embedding(k, eps96());
    Rat b = (k == 0) ? R : C;
    if (box.is_real() || box.im.contains_zero()) {
      crow row;
      cbox pw(rint(Rat(1)), rint(Rat(0)));
      for (unsigned j = 0; j < d; ++j) {
        row.w.push_back(pw.re);
        pw = pw * box;
      }
      row.bound = b;
      sys.rows.push_back(std::move(row));
      if (k >= 1) sys.real_embeddings.push_back(k);
    } else {
      if (sgn(box.im.lo) < 0) continue;  // lower-half conjugate: same constraints
      crow re_row, im_row;
      cbox pw(rint(Rat(1)), rint(Rat(0)));
      for (unsigned j = 0; j < d; ++j) {
        re_row.w.push_back(pw.re);
        im_row.w.push_back(pw.im);
        pw = pw * box;
      }
      re_row.bound = b;
      im_row.bound = b;
      sys.rows.push_back(std::move(re_row));
      sys.rows.push_back(std::move(im_row));
      sys.pair_embeddings.push_back(k);
    }
  }
  if (sys.rows.size() != d) throw error("embedding rows do not form a square system");
  return sys;
}

// Gauss-Jordan over intervals. Also reports a lower bound on |det|.
std::vector<std::vector<rint>> interval_inverse(std::vector<std::vector<rint>> M,
                                                Rat& abs_det_lo) {
  size_t n = M.size();
  std::vector<std::vector<rint>> out(n, std::vector<rint>(n, rint(Rat(0))));
  for (size_t i = 0; i < n; ++i) out[i][i] = rint(Rat(1));
  abs_det_lo = Rat(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = n;
    Rat best(0);
    for (size_t r = col; r < n; ++r) {
      if (M[r][col].contains_zero()) continue;
      Rat mig = std::min(abs_rat(M[r][col].lo), abs_rat(M[r][col].hi));
      if (pivot == n || mig > best) {
        pivot = r;
        best = mig;
      }
    }
    if (pivot == n) throw error("interval matrix inversion hit a singular pivot");
    std::swap(M[pivot], M[col]);
    std::swap(out[pivot], out[col]);
    abs_det_lo *= best;
    rint ip = polydist::inv(M[col][col]);
    for (size_t j = 0; j < n; ++j) {
      M[col][j] = M[col][j] * ip;
      out[col][j] = out[col][j] * ip;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      rint f = M[r][col];
      if (sgn(f.lo) == 0 && sgn(f.hi) == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        M[r][j] = M[r][j] - f * M[col][j];
        out[r][j] = out[r][j] - f * out[col][j];
      }
    }
  }
  return out;
}

}  // namespace

// ---- spec -------------------------------------------------------------------

model_set_spec model_set_spec::create(ring_ptr field, std::optional<Rat> C) {
  if (!field) throw error("model set needs a number field");
  if (field->is_symbolic()) throw error("model sets are defined over number fields");
  unsigned d = field->degree();

  // sufficiency bound: max over conjugate embeddings of (1/2) sum_j |alpha_k^j|
  Rat needed(0);
  for (size_t k = 1; k < d; ++k) {
    cbox box = field->embedding(k, eps96());
    Rat sum(0);
    cbox pw(rint(Rat(1)), rint(Rat(0)));
    for (unsigned j = 0; j < d; ++j) {
      sum += sqrt_upper_rat(abs_square(pw).hi);
      pw = pw * box;
    }
    needed = std::max(needed, Rat(sum / 2));
  }
  model_set_spec spec;
  spec.field = field;
  if (C) {
    if (*C < needed)
      throw config_error("band bound C = " + to_fraction_string(*C) +
                         " is below the sufficiency bound " + to_fraction_string(needed));
    spec.C = *C;
  } else {
    spec.C = std::max(Rat(ceil_rat(needed)), Rat(1));
  }

  // K1 = (1/2) sum_j |alpha0^j| exactly (each power is a basis vector)
  ring_element acc = field->zero();
  for (unsigned j = 0; j < d; ++j) {
    std::vector<Rat> e(j + 1, Rat(0));
    e[j] = Rat(1);
    acc = acc + field->element(e).abs_at_zero();
  }
  spec.K1_exact = acc.scale(Rat(1, 2));
  spec.K1 = spec.K1_exact.embed(0, 64).re.hi;

  // K2: lattice points in any translate of the inverse image of the 2C box
  row_system sys = build_rows(field, spec.C, spec.C);
  std::vector<std::vector<rint>> M;
  for (auto& r : sys.rows) M.push_back(r.w);
  Rat det_lo;
  auto Minv = interval_inverse(M, det_lo);
  long k2 = 1;
  for (unsigned j = 0; j < d; ++j) {
    Rat width(0);
    for (unsigned col = 0; col < d; ++col)
      width += abs(Minv[j][col]).hi * 2 * sys.rows[col].bound;
    k2 *= floor_rat(width).get_si() + 1;
  }
  spec.K2 = k2;
  return spec;
}

// ---- enumeration -------------------------------------------------------------

static bool exact_member(const ring_element& v, const row_system& sys, const ring_ptr& field,
                         const Rat& R, const Rat& C) {
  ring_element Rel = field->from_rational(R);
  if ((v - Rel).sign_at_zero() > 0) return false;
  if ((v + Rel).sign_at_zero() < 0) return false;
  ring_element Cel = field->from_rational(C);
  for (size_t k : sys.real_embeddings) {
    if ((v - Cel).sign_at(k) > 0) return false;
    if ((v + Cel).sign_at(k) < 0) return false;
  }
  for (size_t k : sys.pair_embeddings)
    if (v.compare_modulus_sq(k, C) > 0) return false;
  return true;
}

windowed_set enumerate_T(const model_set_spec& spec, const Rat& R, size_t max_points) {
  if (sgn(R) <= 0) throw error("window radius must be positive");
  const ring_ptr& field = spec.field;
  unsigned d = field->degree();
  row_system sys = build_rows(field, R, spec.C);

  std::vector<std::vector<rint>> M;
  for (auto& r : sys.rows) M.push_back(r.w);
  Rat det_lo;
  auto Minv = interval_inverse(M, det_lo);

  // size pre-check: region volume / |det|
  Rat vol(1);
  for (auto& r : sys.rows) vol *= 2 * r.bound;
  if (sgn(det_lo) > 0 && vol / det_lo > Rat(static_cast<unsigned long>(max_points)) * 8)
    throw budget_error("window estimate " + to_decimal_string(vol / det_lo, 3, 0) +
                       " points exceeds the budget");

  // initial per-variable boxes
  std::vector<rint> box(d, rint(Rat(0)));
  for (unsigned j = 0; j < d; ++j) {
    rint acc(Rat(0));
    for (unsigned col = 0; col < d; ++col)
      acc = acc + Minv[j][col] * rint(-sys.rows[col].bound, sys.rows[col].bound);
    box[j] = acc;
  }

  // tail[r][l] = sum_{i<l} w[r][i] * box[i]
  size_t nrows = sys.rows.size();
  std::vector<std::vector<rint>> tail(nrows, std::vector<rint>(d + 1, rint(Rat(0))));
  for (size_t r = 0; r < nrows; ++r)
    for (unsigned l = 1; l <= d; ++l)
      tail[r][l] = tail[r][l - 1] + sys.rows[r].w[l - 1] * box[l - 1];

  windowed_set out;
  out.field = field;
  out.R = R;
  out.C = spec.C;

  std::vector<rint> partial(nrows, rint(Rat(0)));
  std::vector<long> assign(d, 0);

  auto emit = [&]() {
    std::vector<Rat> coords(d);
    for (unsigned j = 0; j < d; ++j) coords[j] = Rat(assign[j]);
    ring_element v = field->element(std::move(coords));
    if (!exact_member(v, sys, field, R, spec.C)) return;
    if (out.points.size() >= max_points) throw budget_error("window point budget exceeded");
    out.points.push_back(std::move(v));
  };

  auto descend = [&](auto&& self, unsigned level) -> void {
    rint range = box[level];
    for (size_t r = 0; r < nrows; ++r) {
      const rint& wl = sys.rows[r].w[level];
      if (wl.contains_zero()) continue;
      rint num = rint(-sys.rows[r].bound, sys.rows[r].bound) - partial[r] - tail[r][level];
      auto cut = intersect(range, num * polydist::inv(wl));
      if (!cut) return;
      range = *cut;
    }
    Int lo = ceil_rat(range.lo), hi = floor_rat(range.hi);
    if (lo > hi) return;
    if (!lo.fits_slong_p() || !hi.fits_slong_p())
      throw budget_error("enumeration range too wide");
    std::vector<rint> saved = partial;
    for (long a = lo.get_si(); a <= hi.get_si(); ++a) {
      assign[level] = a;
      for (size_t r = 0; r < nrows; ++r)
        partial[r] = saved[r] + Rat(a) * sys.rows[r].w[level];
      if (level == 0)
        emit();
      else
        self(self, level - 1);
    }
    partial = saved;
  };
  descend(descend, d - 1);

  // sort ascending at embedding 0: double keys first, exact where close
  std::vector<double> key(out.points.size());
  for (size_t i = 0; i < out.points.size(); ++i) key[i] = out.points[i].approx();
  std::vector<size_t> order(out.points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  double margin = 1e-6 * (1.0 + to_double(R));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (key[a] < key[b] - margin) return true;
    if (key[b] < key[a] - margin) return false;
    return out.points[a].compare_at_zero(out.points[b]) < 0;
  });
  std::vector<ring_element> sorted;
  sorted.reserve(out.points.size());
  for (size_t i : order) sorted.push_back(std::move(out.points[i]));
  out.points = std::move(sorted);
  return out;
}

planar_window product_set(const windowed_set& T, size_t max_points) {
  size_t n = T.size();
  if (n > 0 && n > max_points / n)
    throw budget_error("product set of " + std::to_string(n) + "^2 points exceeds the budget");
  return planar_window{T, T};
}

windowed_set difference_set(const windowed_set& T) {
  windowed_set out;
  out.field = T.field;
  out.R = 2 * T.R;
  out.C = 2 * T.C;
  unsigned d = T.field->degree();

  // integer fast path: pack coordinates when they are small integers
  bool small = d <= 4;
  std::vector<std::array<long, 4>> packed;
  if (small) {
    packed.reserve(T.size());
    for (const auto& p : T.points) {
      std::array<long, 4> row{0, 0, 0, 0};
      for (unsigned j = 0; j < d && small; ++j) {
        const Rat& c = p.coords()[j];
        if (c.get_den() != 1 || !c.get_num().fits_sint_p())
          small = false;
        else
          row[j] = c.get_num().get_si();
      }
      packed.push_back(row);
    }
  }

  if (small) {
    auto pack_hash = [](const std::array<long, 4>& a) {
      std::size_t h = 0x9e3779b97f4a7c15ULL;
      for (long v : a) h = hash_mix(h, static_cast<std::size_t>(v));
      return h;
    };
    std::unordered_set<std::array<long, 4>, decltype(pack_hash)> seen(
        T.size() * 4 + 16, pack_hash);
    for (size_t i = 0; i < packed.size(); ++i)
      for (size_t j = 0; j < packed.size(); ++j) {
        std::array<long, 4> diff;
        for (unsigned k = 0; k < 4; ++k) diff[k] = packed[i][k] - packed[j][k];
        seen.insert(diff);
      }
    out.points.reserve(seen.size());
    for (const auto& a : seen) {
      std::vector<Rat> coords(d);
      for (unsigned j = 0; j < d; ++j) coords[j] = Rat(a[j]);
      out.points.push_back(T.field->element(std::move(coords)));
    }
  } else {
    std::unordered_set<exactnum::ring_element, exactnum::ring_element_hash> seen;
    for (const auto& a : T.points)
      for (const auto& b : T.points) seen.insert(a - b);
    out.points.assign(seen.begin(), seen.end());
  }

  std::vector<double> key(out.points.size());
  for (size_t i = 0; i < out.points.size(); ++i) key[i] = out.points[i].approx();
  std::vector<size_t> order(out.points.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  double margin = 1e-6 * (1.0 + 2.0 * to_double(T.R));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (key[a] < key[b] - margin) return true;
    if (key[b] < key[a] - margin) return false;
    return out.points[a].compare_at_zero(out.points[b]) < 0;
  });
  std::vector<ring_element> sorted;
  sorted.reserve(out.points.size());
  for (size_t i : order) sorted.push_back(std::move(out.points[i]));
  out.points = std::move(sorted);
  return out;
}

// ---- verification -------------------------------------------------------------

net_report verify_net(const windowed_set& T, const model_set_spec& spec) {
  net_report rep;
  if (T.points.empty()) throw error("verify_net on an empty window");
  const ring_ptr& field = T.field;
  ring_element core_lo = field->from_rational(-T.R) + spec.K1_exact;
  ring_element core_hi = field->from_rational(T.R) - spec.K1_exact;

  ring_element max_gap = field->zero();
  const ring_element* prev = nullptr;
  for (const auto& t : T.points) {
    if (t.compare_at_zero(core_lo) < 0) continue;
    if (t.compare_at_zero(core_hi) > 0) break;
    ++rep.core_points;
    if (prev) {
      ring_element gap = t - *prev;
      if (gap.compare_at_zero(max_gap) > 0) max_gap = gap;
    }
    prev = &t;
  }
  ring_element bound = spec.K1_exact.scale(Rat(2));
  rep.max_gap = max_gap;
  rep.pass = max_gap.compare_at_zero(bound) <= 0;
  cbox enc = max_gap.embed(0, 64);
  rep.max_gap_lo = enc.re.lo;
  rep.max_gap_hi = enc.re.hi;
  rep.bound_hi = bound.embed(0, 64).re.hi;
  return rep;
}

local_count_report verify_local_count(const windowed_set& T, const model_set_spec& spec) {
  local_count_report rep;
  rep.K2 = spec.K2;
  if (T.points.empty()) throw error("verify_local_count on an empty window");
  const ring_ptr& field = T.field;
  ring_element width = field->from_rational(2 * spec.C);
  size_t j = 0;
  for (size_t i = 0; i < T.points.size(); ++i) {
    if (j < i) j = i;
    while (j + 1 < T.points.size() &&
           (T.points[j + 1] - T.points[i]).compare_at_zero(width) <= 0)
      ++j;
    rep.max_count = std::max(rep.max_count, static_cast<long>(j - i + 1));
  }
  rep.pass = rep.max_count <= rep.K2;
  return rep;
}

}  // namespace polydist::modelset

/* Exact distance sets of planar point sets under polygonal norms.
 *
 * Distances only depend on difference vectors, so each set kind reduces to a
 * finite stream of exact difference vectors:
 *   - z2: the full integer lattice; differences are the lattice points of a
 *     box bounding N * BX (the set itself is infinite, the computation not),
 *   - product: S = T x T for a windowed model set T; differences are
 *     (T - T) x (T - T),
 *   - points: an explicit finite set; differences are computed pairwise.
 * Every threshold decision, gauge evaluation and deduplication is exact; a
 * floating prescreen only ever discards vectors provably beyond reach. */
#ifndef POLYDIST_DISTSET_HPP
#define POLYDIST_DISTSET_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polydist/modelset.hpp"
#include "polydist/polynorm.hpp"

namespace polydist::distset {

using exactnum::ring_element;
using exactnum::ring_ptr;
using polynorm::point;
using polynorm::polygonal_norm;

enum class distance_mode { threshold, ball };

struct budget {
  unsigned long long max_vector_pairs = 600'000'000ULL;
  size_t max_values = 30'000'000;
  size_t max_window_points = 4'000'000;
};

struct planar_set {
  enum class kind { z2, product, points };
  kind k = kind::z2;
  ring_ptr ring;                                 // coordinate ring
  std::optional<modelset::planar_window> window;  // kind::product
  std::vector<point> pts;                         // kind::points

  static planar_set z2();
  static planar_set product(modelset::planar_window w);
  static planar_set explicit_points(std::vector<point> p);
  bool empty() const;
};

struct distance_set_result {
  ring_element threshold_el;               // N as a ring element (threshold mode)
  std::vector<ring_element> values;        // distinct, ascending at embedding 0
  size_t count() const { return values.size(); }
};

// All distinct values ||a - a'|| over pairs of S; threshold mode keeps values
// <= N, ball mode takes all pairwise distances between points of norm <= N.
distance_set_result distance_set(const planar_set& S, const polygonal_norm& P, const Rat& N,
                                 distance_mode mode = distance_mode::threshold,
                                 const budget& b = budget{});

// the gauge value used as the dedup key (canonical coordinate vector)
ring_element canonical_distance(const polygonal_norm& P, const point& z);

// ---- growth scans -----------------------------------------------------------

struct set_generator {
  enum class kind { z2, modelset };
  kind k = kind::z2;
  std::optional<modelset::model_set_spec> spec;  // kind::modelset
  // window radius per threshold N is ceil(window_factor * N); must cover the
  // coordinate bound of the norm or the scan refuses to run
  std::optional<Rat> window_factor;

  static set_generator z2();
  static set_generator model(modelset::model_set_spec spec,
                             std::optional<Rat> window_factor = std::nullopt);
};

struct growth_report {
  std::vector<Rat> schedule;
  std::vector<size_t> counts;
  double exponent = 0, intercept = 0, residual = 0;
};

growth_report growth_scan(const set_generator& gen, const polygonal_norm& P,
                          const std::vector<Rat>& schedule,
                          distance_mode mode = distance_mode::threshold,
                          const budget& b = budget{});

// least-squares fit of log(count) against log(N)
void fit_loglog(growth_report& rep);

// ---- model-set closure of distances ------------------------------------------

struct closure_report {
  bool pass = false;
  Rat c_prime;      // certified band bound for the rescaled distances
  size_t checked = 0;
  size_t failures = 0;
};

// Verifies, exactly, that every distance value rescaled by some facet
// denominator is an integer combination of generator powers whose conjugate
// embeddings stay within the derived band c_prime. `band` is the conjugate
// band of the difference window (2C for a window of T(C)).
closure_report distance_closure_check(const distance_set_result& D,
                                      const polygonal_norm& P, const Rat& band);

}  // namespace polydist::distset

#endif

#include "polydist/presets.hpp"

namespace polydist::presets {

using exactnum::ring;
using exactnum::ring_element;
using exactnum::ring_ptr;
using polynorm::point;
using polynorm::polygonal_norm;

ring_ptr field_by_name(const std::string& name) {
  if (name == "rational")
    return ring::number_field({Int(-1), Int(1)}, rint(Rat(1, 2), Rat(3, 2)));
  if (name == "sqrt2")
    return ring::number_field({Int(-2), Int(0), Int(1)}, rint(Rat(1), Rat(2)));
  if (name == "cubic")
    return ring::number_field({Int(-1), Int(-1), Int(0), Int(1)}, rint(Rat(1), Rat(2)));
  if (name == "sym" || name == "pi") return ring::symbolic("pi");
  throw config_error("unknown field preset: " + name);
}

std::vector<std::string> field_names() { return {"rational", "sqrt2", "cubic"}; }

static point pt(const ring_ptr& rg, const Rat& a, const Rat& b) {
  return point{rg->from_rational(a), rg->from_rational(b)};
}

polygonal_norm norm_by_name(const std::string& name) {
  if (name == "linf") {
    auto q = field_by_name("rational");
    return polygonal_norm::create(
        {pt(q, 1, 1), pt(q, -1, 1), pt(q, -1, -1), pt(q, 1, -1)});
  }
  if (name == "l1") {
    auto q = field_by_name("rational");
    return polygonal_norm::create(
        {pt(q, 1, 0), pt(q, 0, 1), pt(q, -1, 0), pt(q, 0, -1)});
  }
  if (name == "hex1") {
    // slopes {0, inf, 1}
    auto q = field_by_name("rational");
    return polygonal_norm::create({pt(q, 1, -1), pt(q, 1, 2), pt(q, 0, 2),
                                   pt(q, -1, 1), pt(q, -1, -2), pt(q, 0, -2)});
  }
  if (name == "oct2") {
    // symmetric octagon with side slopes {0, -1, inf, sqrt2}; supporting
    // lines x2=1, x1+x2=3/2, x1=1, -sqrt2*x1+x2=3/2 and their antipodes
    auto f = field_by_name("sqrt2");
    auto el = [&](const Rat& a, const Rat& b) { return f->element({a, b}); };
    auto rq = [&](const Rat& a) { return f->from_rational(a); };
    std::vector<point> v;
    v.push_back({rq(1), el(Rat(-3, 2), Rat(1))});       // (1, sqrt2 - 3/2)
    v.push_back({rq(1), rq(Rat(1, 2))});                // (1, 1/2)
    v.push_back({rq(Rat(1, 2)), rq(1)});                // (1/2, 1)
    v.push_back({el(Rat(0), Rat(-1, 4)), rq(1)});       // (-sqrt2/4, 1)
    for (int i = 0; i < 4; ++i) v.push_back(-v[static_cast<size_t>(i)]);
    return polygonal_norm::create(std::move(v));
  }
  if (name == "hexpi") {
    // slopes {0, inf, pi}; vertices chosen so facet determinants stay
    // rational: (1, pi-2), (1, 2), (0, 2) and antipodes
    auto s = ring::symbolic("pi");
    auto el = [&](const Rat& a, const Rat& b) { return s->element({a, b}); };
    auto rq = [&](const Rat& a) { return s->from_rational(a); };
    std::vector<point> v;
    v.push_back({rq(1), el(Rat(-2), Rat(1))});
    v.push_back({rq(1), rq(2)});
    v.push_back({rq(0), rq(2)});
    for (int i = 0; i < 3; ++i) v.push_back(-v[static_cast<size_t>(i)]);
    return polygonal_norm::create(std::move(v));
  }
  throw config_error("unknown norm preset: " + name);
}

std::vector<std::string> norm_names() { return {"linf", "l1", "hex1", "oct2", "hexpi"}; }

}  // namespace polydist::presets

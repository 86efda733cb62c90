#include "polydist/rational.hpp"
#include <cmath>

#include <cctype>
#include <cstdlib>

namespace polydist {

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw config_error("empty rational literal");
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw config_error("blank rational literal");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
      throw config_error("bad rational literal: " + s);
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw config_error("zero denominator: " + s);
    q.canonicalize();
    return q;
  }

  // decimal form: [sign] digits [. digits] [e exp]
  auto epos = t.find_first_of("eE");
  long exp10 = 0;
  std::string mant = t;
  if (epos != std::string::npos) {
    exp10 = std::strtol(t.c_str() + epos + 1, nullptr, 10);
    mant = t.substr(0, epos);
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant == "-" || mant == "+")
    throw config_error("bad rational literal: " + s);
  Int num;
  if (mpz_set_str(num.get_mpz_t(), mant.c_str(), 10) != 0)
    throw config_error("bad rational literal: " + s);
  Rat q(num);
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  if (exp10 >= 0)
    q *= Rat(p10);
  else
    q /= Rat(p10);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const Rat& q, int digits, int direction) {
  if (digits < 1) digits = 1;
  if (sgn(q) == 0) return "0";
  bool neg = sgn(q) < 0;
  Rat a = abs_rat(q);

  // find e with 10^(e-1) <= a < 10^e
  long e = 0;
  Rat scale(1);
  while (a >= scale) {
    scale *= 10;
    ++e;
  }
  while (a < scale / 10) {
    scale /= 10;
    --e;
  }
  // mantissa integer in [10^(digits-1), 10^digits)
  Int p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rat scaled = a / scale * Rat(p10);  // in [10^(digits-1), 10^digits)
  Int m;
  int effdir = direction * (neg ? -1 : 1);  // outward direction on |q|
  if (effdir > 0)
    m = ceil_rat(scaled);
  else if (effdir < 0)
    m = floor_rat(scaled);
  else {
    Rat half = scaled + Rat(1, 2);
    m = floor_rat(half);
  }
  std::string ms = m.get_str();
  if (static_cast<int>(ms.size()) > digits) {  // rounding overflowed, e.g. 999->1000
    ms.pop_back();
    ++e;
  }
  long point = e;  // digits before the decimal point
  std::string out = neg ? "-" : "";
  if (point <= 0) {
    out += "0.";
    out += std::string(static_cast<size_t>(-point), '0');
    out += ms;
  } else if (point >= static_cast<long>(ms.size())) {
    out += ms;
    out += std::string(static_cast<size_t>(point - ms.size()), '0');
  } else {
    out += ms.substr(0, static_cast<size_t>(point));
    out += ".";
    out += ms.substr(static_cast<size_t>(point));
  }
  // trim trailing zeros after a decimal point
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
  return r;
}

Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
  return r;
}

Rat pow_rat(const Rat& q, unsigned long e) {
  Rat r(1);
  Rat b = q;
  unsigned long n = e;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

Rat abs_rat(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

double to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

Rat sqrt_upper_rat(const Rat& x) {
  if (sgn(x) < 0) throw error("sqrt of a negative rational");
  double guess = std::sqrt(to_double(x));
  Rat r(static_cast<long>(guess * 64.0), 64);
  r.canonicalize();
  if (sgn(r) < 0) r = 0;
  while (r * r < x) r += Rat(1, 64);
  return r;
}

Rat sqrt_lower_rat(const Rat& x) {
  if (sgn(x) < 0) throw error("sqrt of a negative rational");
  Rat r = sqrt_upper_rat(x);
  while (sgn(r) > 0 && r * r > x) r -= Rat(1, 64);
  if (sgn(r) < 0) r = 0;
  return r;
}

std::size_t hash_mpz(const mpz_class& z, std::size_t seed) {
  std::size_t h = hash_mix(seed, static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())));
  size_t n = mpz_size(z.get_mpz_t());
  for (size_t i = 0; i < n; ++i)
    h = hash_mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  return h;
}

std::size_t hash_rat(const Rat& q, std::size_t seed) {
  return hash_mpz(q.get_den(), hash_mpz(q.get_num(), seed));
}

std::size_t hash_rat_vec(const std::vector<Rat>& v) {
  std::size_t h = 0x51ab3f00dULL;
  for (const auto& q : v) h = hash_rat(q, h);
  return h;
}

}  // namespace polydist

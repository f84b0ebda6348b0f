#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>

namespace htype {

using Rational = boost::rational<long long>;

// Exponent in [2, inf] with an explicit infinity.
struct ExtRational {
  bool infinite = false;
  Rational value{0};

  static ExtRational inf() { return {true, Rational(0)}; }
  ExtRational() = default;
  ExtRational(bool is_inf, Rational v) : infinite(is_inf), value(v) {}
  ExtRational(Rational v) : value(v) {}
  ExtRational(long long v) : value(v) {}

  Rational reciprocal() const;  // 1/inf = 0
  double to_double() const;
  std::string str() const;
  bool operator==(const ExtRational& o) const { return infinite == o.infinite && (infinite || value == o.value); }
};

// "inf", "20/3", "3.8", "7"
ExtRational parse_exponent(const std::string& text);
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& r);
double to_double(const Rational& r);

struct AdmissiblePair {
  ExtRational q, r;
  bool admissible = false;
  bool endpoint = false;
  std::optional<Rational> sigma;
};

AdmissiblePair classify_pair(const ExtRational& q, const ExtRational& r, int p, std::optional<int> N = {});

// N (1/2 - 1/r) - 2/q
Rational scaling_sigma(const ExtRational& q, const ExtRational& r, int N);

struct ExponentReport {
  int d = 0, p = 0;
  Rational alpha;
  int N = 0;
  Rational s_c, s_star;
  std::string branch;
};

ExponentReport critical_exponents(int d, int p, const Rational& alpha);

// q = 4/(N - 2s + 2 delta), r = N/(s - s_* - delta) for s > s_* (delta defaults to
// (s - s_*)/2); the r = inf table for s = s_*.
AdmissiblePair find_admissible(int d, int p, const Rational& alpha, const Rational& s,
                               std::optional<Rational> delta = {});

}  // namespace htype

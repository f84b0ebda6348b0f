#include "htype/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "htype/errors.hpp"
#include "htype/group.hpp"

namespace htype {

Rational ExtRational::reciprocal() const { return infinite ? Rational(0) : Rational(1) / value; }

double to_double(const Rational& r) { return (double)r.numerator() / (double)r.denominator(); }

double ExtRational::to_double() const {
  return infinite ? std::numeric_limits<double>::infinity() : htype::to_double(value);
}

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string ExtRational::str() const { return infinite ? "inf" : rational_str(value); }

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) t += c;
  try {
    if (t.empty()) throw std::invalid_argument("empty");
    size_t slash = t.find('/');
    if (slash != std::string::npos) {
      size_t a = 0, b = 0;
      long long num = std::stoll(t.substr(0, slash), &a);
      long long den = std::stoll(t.substr(slash + 1), &b);
      if (a != slash || b != t.size() - slash - 1 || den == 0) throw std::invalid_argument("fraction");
      return Rational(num, den);
    }
    bool neg = t[0] == '-';
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    long long num = 0, den = 1;
    bool dot = false, digits = false;
    for (; i < t.size(); ++i) {
      char c = t[i];
      if (c == '.' && !dot) {
        dot = true;
        continue;
      }
      if (!std::isdigit((unsigned char)c)) throw std::invalid_argument("digit");
      if (num > std::numeric_limits<long long>::max() / 10 - 10) throw std::out_of_range("too many digits");
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    }
    if (!digits) throw std::invalid_argument("no digits");
    return Rational(neg ? -num : num, den);
  } catch (const std::exception&) {
    fail(Errc::ConfigInvalid, "not a rational number: '" + text + "'");
  }
}

ExtRational parse_exponent(const std::string& text) {
  std::string t;
  for (char c : text) t += (char)std::tolower((unsigned char)c);
  if (t == "inf" || t == "infinity" || t == "+inf") return ExtRational::inf();
  return ExtRational(parse_rational(text));
}

namespace {

void check_range(const ExtRational& q, const ExtRational& r) {
  if (q.infinite && r.infinite) fail(Errc::BothInfinite, "(q, r) = (inf, inf) is excluded");
  for (const auto* e : {&q, &r})
    if (!e->infinite && e->value < 2) fail(Errc::OutOfRange, "exponent " + e->str() + " is below 2");
}

}  // namespace

Rational scaling_sigma(const ExtRational& q, const ExtRational& r, int N) {
  check_range(q, r);
  return Rational(N) * (Rational(1, 2) - r.reciprocal()) - 2 * q.reciprocal();
}

AdmissiblePair classify_pair(const ExtRational& q, const ExtRational& r, int p, std::optional<int> N) {
  check_range(q, r);
  if (p < 1) fail(Errc::OutOfRange, "center dimension must be positive");
  AdmissiblePair a;
  a.q = q;
  a.r = r;
  bool excluded = !q.infinite && q.value == Rational(2) && r.infinite && p == 3;
  a.admissible = 2 * q.reciprocal() <= Rational(p - 1) * (Rational(1, 2) - r.reciprocal()) && !excluded;
  a.endpoint = p > 3 && !q.infinite && q.value == Rational(2) && !r.infinite && r.value == Rational(2 * (p - 1), p - 3);
  if (N) a.sigma = scaling_sigma(q, r, *N);
  return a;
}

ExponentReport critical_exponents(int d, int p, const Rational& alpha) {
  if (!(alpha > 1)) fail(Errc::InvalidAlpha, "nonlinearity degree must exceed 1, got " + rational_str(alpha));
  build_group(d, p);
  ExponentReport e;
  e.d = d;
  e.p = p;
  e.alpha = alpha;
  e.N = 2 * d + 2 * p;
  e.s_c = Rational(e.N, 2) - Rational(2) / (alpha - 1);
  e.s_star = std::max({Rational(e.N - p + 1, 2), Rational(e.N - 2, 2), e.s_c});
  if (p == 1)
    e.branch = "p=1";
  else if (p == 2)
    e.branch = alpha < 5 ? "p=2, 1<alpha<5" : "p=2, alpha>=5";
  else
    e.branch = alpha < 3 ? "p>=3, 1<alpha<3" : "p>=3, alpha>=3";
  return e;
}

AdmissiblePair find_admissible(int d, int p, const Rational& alpha, const Rational& s, std::optional<Rational> delta) {
  if (p < 2) fail(Errc::NoPair, "admissible pairs for the well-posedness argument need p >= 2");
  ExponentReport e = critical_exponents(d, p, alpha);
  int N = e.N;
  if (s < e.s_star || s >= Rational(N, 2))
    fail(Errc::NoPair, "s = " + rational_str(s) + " outside [s_*, N/2) = [" + rational_str(e.s_star) + ", " +
                           rational_str(Rational(N, 2)) + ")");
  ExtRational q, r;
  if (s == e.s_star) {
    if (delta && *delta != Rational(0)) fail(Errc::NoPair, "s = s_* requires delta = 0");
    r = ExtRational::inf();
    if (p > 3 && alpha < 3)
      q = ExtRational(Rational(2));
    else if (p == 2 && alpha < 5)
      q = ExtRational(Rational(4));
    else if ((p == 2 && alpha >= 5) || (p == 3 && alpha > 3) || (p >= 4 && alpha >= 3))
      q = ExtRational(alpha - 1);
    else
      fail(Errc::NoPair, "no admissible pair at p = 3, s = (N-2)/2 with alpha <= 3");
  } else {
    Rational gap = s - e.s_star;
    Rational dl = delta ? *delta : gap / 2;
    if (!(dl > 0) || !(dl < gap)) fail(Errc::NoPair, "delta must lie in (0, s - s_*)");
    q = ExtRational(Rational(4) / (Rational(N) - 2 * s + 2 * dl));
    r = ExtRational(Rational(N) / (gap - dl));
  }
  AdmissiblePair a = classify_pair(q, r, p, N);
  if (!a.admissible || *a.sigma != e.s_star) fail(Errc::NoPair, "constructed pair fails its postconditions");
  return a;
}

}  // namespace htype

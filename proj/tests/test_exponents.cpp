#include "admissibility_table.hpp"
#include "doctest.h"
#include "htype/errors.hpp"
#include "htype/exponents.hpp"

using namespace htype;

TEST_CASE("rational parsing") {
  CHECK((parse_rational("3.8") == Rational(19, 5)));
  CHECK((parse_rational("20/3") == Rational(20, 3)));
  CHECK((parse_rational("-0.25") == Rational(-1, 4)));
  CHECK(parse_exponent("inf").infinite);
  CHECK(parse_exponent("Infinity").infinite);
  CHECK((parse_exponent("40").value == Rational(40)));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
  CHECK((ExtRational::inf().reciprocal() == Rational(0)));
  CHECK((ExtRational(Rational(20, 3)).str() == "20/3"));
}

TEST_CASE("hand-checked admissibility table") {
  auto table = testsupport::admissibility_table();
  CHECK(table.size() == 20);
  for (const auto& row : table) {
    INFO(row.what);
    CHECK(row.actual() == row.expected);
  }
}

TEST_CASE("scaling sigma of the critical pairs") {
  for (int N : {4, 8, 10, 16}) {
    CHECK((scaling_sigma(ExtRational(Rational(2)), ExtRational::inf(), N) == Rational(N - 2, 2)));
    CHECK((scaling_sigma(ExtRational(Rational(4)), ExtRational::inf(), N) == Rational(N - 1, 2)));
    CHECK((scaling_sigma(ExtRational::inf(), ExtRational(Rational(2)), N) == Rational(0)));
  }
  CHECK_THROWS_AS(scaling_sigma(ExtRational::inf(), ExtRational::inf(), 8), Error);
}

TEST_CASE("found pairs are admissible with the requested loss") {
  struct Case {
    int d, p;
    Rational alpha;
  };
  for (Case c : {Case{2, 2, Rational(2)}, Case{2, 2, Rational(7)}, Case{2, 3, Rational(5, 2)}, Case{2, 3, Rational(4)},
                 Case{4, 4, Rational(3, 2)}, Case{4, 5, Rational(9)}}) {
    auto e = critical_exponents(c.d, c.p, c.alpha);
    Rational half_n(e.N, 2);
    for (int k = 1; k < 8; ++k) {
      Rational s = e.s_star + (half_n - e.s_star) * Rational(k, 8);
      for (int m = 1; m < 4; ++m) {
        Rational delta = (s - e.s_star) * Rational(m, 4);
        auto a = find_admissible(c.d, c.p, c.alpha, s, delta);
        CHECK(a.admissible);
        CHECK(!a.endpoint);
        CHECK((*a.sigma == e.s_star));
        CHECK((a.q.value > c.alpha - 1));
        CHECK((s - e.s_star > Rational(e.N) * a.r.reciprocal()));
      }
    }
    CHECK_THROWS_AS(find_admissible(c.d, c.p, c.alpha, half_n), Error);
    CHECK_THROWS_AS(find_admissible(c.d, c.p, c.alpha, e.s_star - Rational(1, 10)), Error);
    CHECK_THROWS_AS(find_admissible(c.d, c.p, c.alpha, e.s_star + Rational(1, 10), Rational(1, 5)), Error);
  }
  CHECK_THROWS_AS(critical_exponents(2, 2, Rational(1)), Error);
  CHECK_THROWS_AS(critical_exponents(1, 2, Rational(3)), Error);
}

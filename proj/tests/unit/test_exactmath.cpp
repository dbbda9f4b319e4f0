#include "sperner/exactmath.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <random>

using namespace sperner;
using Float = boost::multiprecision::cpp_bin_float_50;

namespace {

Float float_binom(const Float& q, int d) {
  Float v = 1;
  for (int i = 0; i < d; ++i) v = v * (q - i) / (i + 1);
  return v;
}

// LL_c(x) by 50-digit bisection; independent of the library's rational code.
Float float_ll(int c, const BigNat& x) {
  const Float target(x.str());
  Float lo = c, hi = Float(c) + target;
  for (int it = 0; it < 400; ++it) {
    const Float mid = (lo + hi) / 2;
    if (float_binom(mid, c) < target)
      lo = mid;
    else
      hi = mid;
  }
  return float_binom((lo + hi) / 2, c - 1);
}

using Poly = std::vector<BigRat>;  // increasing powers

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const BigRat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigRat poly_at(const Poly& p, const BigRat& q) {
  BigRat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * q + p[i];
  return v;
}

// binom(q, d) - value as a polynomial in q.
Poly binom_minus(int d, const BigNat& value) {
  Poly p = GenBinomialPoly(d).coefficients();
  p[0] -= BigRat(value);
  return p;
}

// LL_c(x) = t iff binom(q, c) - x and binom(q, c-1) - t share the root
// q >= c - 1. The first is increasing there, so it has exactly one such root
// and the gcd has it iff the gcd changes sign on [c-1, c+x].
bool tie_by_gcd(int c, const BigNat& x, const BigNat& t) {
  const Poly g = poly_gcd(binom_minus(c, x), binom_minus(c - 1, t));
  if (g.size() < 2) return false;
  return poly_at(g, c - 1) * poly_at(g, BigRat(x) + c) <= 0;
}

}  // namespace

TEST_CASE("binom") {
  CHECK(binom(8, 2) == 28);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(19, 3) == 969);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(5, 6) == 0);
  CHECK(binom(100, 50) == BigNat("100891344545564193334812497256"));
  for (int n = 1; n <= 30; ++n)
    for (int i = 1; i <= n; ++i) CHECK(binom(n, i) == binom(n - 1, i - 1) + binom(n - 1, i));
}

TEST_CASE("integer helpers") {
  CHECK(factorial(10) == 3628800);
  CHECK(falling_factorial(7, 3) == 210);
  CHECK(floor_div(7, 2) == 3);
  CHECK(ceil_div(7, 2) == 4);
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(floor(BigRat(-1, 3)) == -1);
  CHECK(ceil(BigRat(-1, 3)) == 0);
  CHECK(to_decimal(BigRat(180, 11), 4) == "16.3636");
}

TEST_CASE("gen_binom_at") {
  CHECK(gen_binom_at(2, 4) == 6);
  CHECK(gen_binom_at(2, BigRat(9, 2)) == BigRat(63, 8));
  CHECK(gen_binom_at(3, 3) == 1);
  CHECK_THROWS_AS(gen_binom_at(3, BigRat(1, 2)), std::domain_error);
  GenBinomialPoly poly(4);
  for (int q = 3; q < 20; ++q) CHECK(poly(q) == binom(q, 4));
}

TEST_CASE("ll_eval examples") {
  auto e = ll_eval(2, 6);
  REQUIRE(e.exact);
  CHECK(*e.exact == 4);
  for (int c = 2; c <= 6; ++c) {
    auto z = ll_eval(c, 0);
    REQUIRE(z.exact);
    CHECK(*z.exact == 0);
  }
  auto nine = ll_eval(2, 9);
  CHECK_FALSE(nine.exact);
  CHECK(nine.hi - nine.lo <= default_ll_width());
  // (1 + sqrt 73) / 2 = 4.77200187265877...
  CHECK(nine.lo <= BigRat(477200187266LL, 100000000000LL));
  CHECK(nine.hi >= BigRat(477200187265LL, 100000000000LL));
  CHECK(nine.lo >= BigRat(4772001, 1000000));
}

TEST_CASE("ll_leq examples") {
  CHECK(ll_leq(2, 6, 5));
  CHECK(ll_leq(2, 9, 8));
  CHECK_FALSE(ll_leq(2, 6, 3));
  CHECK(ll_leq(2, 6, 4));
  CHECK(ll_leq(5, 0, 0));
}

TEST_CASE("lattice points are exact and ties resolve exactly") {
  // A tie LL_c(x) = T forces q to be a rational root of a monic integer
  // polynomial, hence an integer; so lattice points are the only ties.
  for (int c = 2; c <= 10; ++c)
    for (int q0 = c; q0 <= 40; ++q0) {
      const BigNat x = binom(q0, c), t = binom(q0, c - 1);
      auto e = ll_eval(c, x);
      REQUIRE(e.exact);
      CHECK(*e.exact == t);
      CHECK(ll_leq(c, x, t));
      CHECK_FALSE(ll_leq(c, x, t - 1));
    }
}

TEST_CASE("ties agree with the polynomial gcd oracle") {
  for (int c = 2; c <= 6; ++c)
    for (int q0 = c; q0 <= 16; ++q0) {
      const BigNat x = binom(q0, c), t = binom(q0, c - 1);
      CHECK(tie_by_gcd(c, x, t));
      CHECK_FALSE(tie_by_gcd(c, x, t + 1));
      CHECK_FALSE(tie_by_gcd(c, x + 1, t));
    }
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const int c = std::uniform_int_distribution<int>(2, 5)(rng);
    const BigNat x = std::uniform_int_distribution<long>(1, 3000)(rng);
    const auto e = ll_eval(c, x);
    const BigNat t = ceil(e.lo);
    const bool tie = tie_by_gcd(c, x, t);
    CHECK(tie == (e.exact && *e.exact == BigRat(t)));
    if (tie) {
      CHECK(ll_leq(c, x, t));
      CHECK_FALSE(ll_leq(c, x, t - 1));
    }
  }
}

TEST_CASE("ll_leq agrees with a high-precision float evaluation") {
  std::mt19937_64 rng(12345);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int c = std::uniform_int_distribution<int>(2, 12)(rng);
    const BigNat x = std::uniform_int_distribution<std::uint64_t>(1, 1000000000000ULL)(rng);
    const Float ll = float_ll(c, x);
    const BigNat base = boost::multiprecision::floor(ll).convert_to<BigNat>();
    for (int off = -1; off <= 1; ++off) {
      const BigNat t = base + off;
      const Float diff = ll - Float(t.str());
      if (abs(diff) < Float("1e-20")) continue;
      CHECK(ll_leq(c, x, t) == (diff < 0));
      ++checked;
    }
  }
  CHECK(checked > 2500);
}

TEST_CASE("ll_eval monotone and concave") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int c = std::uniform_int_distribution<int>(2, 6)(rng);
    const long x1 = std::uniform_int_distribution<long>(1, 5000)(rng);
    const long x3 = x1 + 2 * std::uniform_int_distribution<long>(1, 2000)(rng);
    const long x2 = (x1 + x3) / 2;
    auto e1 = ll_eval(c, x1), e2 = ll_eval(c, x2), e3 = ll_eval(c, x3);
    const BigRat w = default_ll_width();
    CHECK(e1.lo <= e2.hi + w);
    CHECK(e2.lo <= e3.hi + w);
    CHECK(e2.hi + w >= (e1.lo + e3.lo) / 2);
  }
}

TEST_CASE("enclosures within width and fast") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int c = std::uniform_int_distribution<int>(2, 10)(rng);
    const BigNat x = std::uniform_int_distribution<std::uint64_t>(1, 1000000000ULL)(rng);
    const auto start = std::chrono::steady_clock::now();
    auto e = ll_eval(c, x);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    CHECK(e.hi - e.lo <= default_ll_width());
    CHECK(e.lo <= e.hi);
    CHECK(ms < 10.0);
  }
}

TEST_CASE("solve_gen_binom") {
  auto q = solve_gen_binom(3, 56, BigRat(1, 1000000));
  CHECK(q.lo == 8);
  CHECK(q.hi == 8);
  auto r = solve_gen_binom(2, 9, BigRat(1, 1000000));
  CHECK(gen_binom_at(2, r.lo) <= 9);
  CHECK(gen_binom_at(2, r.hi) >= 9);
  CHECK(r.width() <= BigRat(1, 1000000));
}

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sperner {

/// Arbitrary-precision integer. Named for its usual role (counts, binomials),
/// but signed so that differences such as `rhs - a` can be formed directly.
using BigNat = boost::multiprecision::cpp_int;

/// Exact rational, always kept in lowest terms with a positive denominator.
using BigRat = boost::multiprecision::cpp_rational;

/// Closed rational interval [lo, hi].
struct RatInterval {
  BigRat lo;
  BigRat hi;

  BigRat width() const { return hi - lo; }
  bool contains(const BigRat& v) const { return lo <= v && v <= hi; }
};

/// binom(n, i); zero when i < 0 or i > n.
BigNat binom(long n, long i);

/// Falling factorial (x)_i = x (x-1) ... (x-i+1).
BigNat falling_factorial(long x, long i);

BigNat factorial(long n);

BigNat floor_div(const BigNat& num, const BigNat& den);
BigNat ceil_div(const BigNat& num, const BigNat& den);
BigNat floor(const BigRat& v);
BigNat ceil(const BigRat& v);

/// Decimal rendering of a rational, rounded toward zero, for reports.
std::string to_decimal(const BigRat& v, int digits);

/// The generalized binomial binom(q, d) = q (q-1) ... (q-d+1) / d! as a
/// polynomial in q with rational coefficients.
class GenBinomialPoly {
 public:
  explicit GenBinomialPoly(int degree);

  int degree() const { return degree_; }
  /// Coefficients in increasing power order; size degree()+1.
  const std::vector<BigRat>& coefficients() const { return coeffs_; }
  BigRat operator()(const BigRat& q) const;

 private:
  int degree_;
  std::vector<BigRat> coeffs_;
};

/// Exact value of binom(q, d) for rational q >= d - 1.
/// Throws std::domain_error when q < d - 1 or d < 1.
BigRat gen_binom_at(int d, const BigRat& q);

/// Certified enclosure of the Lovász form LL_c(x) = binom(q, c-1) where
/// q >= c solves binom(q, c) = x.
struct LLEnclosure {
  int c = 2;
  BigNat x;
  BigRat lo;
  BigRat hi;
  /// Set when LL_c(x) is known exactly (x = 0, or q is an integer).
  std::optional<BigRat> exact;
  /// Enclosure of q itself; degenerate when q is an integer. Empty for x = 0.
  std::optional<RatInterval> q;
};

/// Default reporting width, 10^-9.
BigRat default_ll_width();

LLEnclosure ll_eval(int c, const BigNat& x, const BigRat& width = default_ll_width());

/// Exact decision of LL_c(x) <= bound. No floating point is involved.
bool ll_leq(int c, const BigNat& x, const BigNat& bound);

/// Solves binom(q, c) = target for q >= c (target >= 1) and returns an
/// enclosure of q no wider than `width`. Degenerate when q is an integer.
RatInterval solve_gen_binom(int c, const BigRat& target, const BigRat& width);

}  // namespace sperner

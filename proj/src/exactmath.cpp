#include "sperner/exactmath.hpp"

#include <stdexcept>

namespace sperner {

namespace {

// binom(q, c) for integer q >= 0 that may exceed the range of long.
BigNat binom_big(const BigNat& q, int c) {
  if (c < 0 || q < c) return 0;
  BigNat num = 1;
  for (int i = 0; i < c; ++i) num *= (q - i);
  return num / factorial(c);
}

// A dyadic rational m / 2^e.
struct Dyadic {
  BigNat m;
  unsigned e = 0;

  BigRat to_rat() const {
    BigNat den = BigNat(1) << e;
    return BigRat(m, den);
  }
};

// prod_{i<d} (m - i 2^e), i.e. 2^{e d} (q)_d for q = m / 2^e.
BigNat scaled_falling(const Dyadic& q, int d) {
  BigNat step = BigNat(1) << q.e;
  BigNat acc = 1;
  for (int i = 0; i < d; ++i) acc *= (q.m - step * i);
  return acc;
}

// Sign of binom(q, d) - target for q = m / 2^e >= d - 1.
int compare_gen_binom(const Dyadic& q, int d, const BigRat& target) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigNat lhs = scaled_falling(q, d) * denominator(target);
  BigNat rhs = numerator(target) * factorial(d) * (BigNat(1) << (q.e * static_cast<unsigned>(d)));
  if (lhs < rhs) return -1;
  return lhs > rhs ? 1 : 0;
}

BigRat gen_binom_dyadic(const Dyadic& q, int d) {
  BigNat den = factorial(d) * (BigNat(1) << (q.e * static_cast<unsigned>(d)));
  return BigRat(scaled_falling(q, d), den);
}

// Bracket for the root q >= c of binom(q, c) = target (target >= 1).
// Invariant: binom(lo, c) < target < binom(hi, c), or lo == hi exactly.
struct RootBracket {
  int c;
  BigRat target;
  Dyadic lo;
  Dyadic hi;
  bool exact = false;

  RootBracket(int c_, const BigRat& target_) : c(c_), target(target_) {
    if (target < 1) throw std::domain_error("binom(q, c) = target needs target >= 1");
    // Integer phase over [c, c + ceil(target)].
    BigNat a = c;
    BigNat b = BigNat(c) + ceil(target);
    while (b - a > 1) {
      BigNat mid = (a + b) / 2;
      if (BigRat(binom_big(mid, c)) <= target)
        a = mid;
      else
        b = mid;
    }
    // a is the largest integer in [c, b) with binom(a, c) <= target.
    if (BigRat(binom_big(a, c)) == target) {
      lo = hi = Dyadic{a, 0};
      exact = true;
    } else if (BigRat(binom_big(b, c)) == target) {
      lo = hi = Dyadic{b, 0};
      exact = true;
    } else {
      lo = Dyadic{a, 0};
      hi = Dyadic{a + 1, 0};
    }
  }

  void refine() {
    if (exact) return;
    Dyadic mid{lo.m * 2 + 1, lo.e + 1};
    int s = compare_gen_binom(mid, c, target);
    if (s == 0) {
      lo = hi = mid;
      exact = true;
      return;
    }
    if (s < 0) {
      lo = mid;
      hi = Dyadic{hi.m * 2, hi.e + 1};
    } else {
      hi = mid;
      lo = Dyadic{lo.m * 2, lo.e + 1};
    }
  }

  RatInterval interval() const { return {lo.to_rat(), hi.to_rat()}; }
};

}  // namespace

BigNat factorial(long n) {
  BigNat acc = 1;
  for (long i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigNat falling_factorial(long x, long i) {
  BigNat acc = 1;
  for (long j = 0; j < i; ++j) acc *= (x - j);
  return acc;
}

BigNat binom(long n, long i) {
  if (i < 0 || n < 0 || i > n) return 0;
  if (i > n - i) i = n - i;
  BigNat acc = 1;
  for (long j = 1; j <= i; ++j) {
    acc *= (n - i + j);
    acc /= j;
  }
  return acc;
}

BigNat floor_div(const BigNat& num, const BigNat& den) {
  if (den == 0) throw std::domain_error("division by zero");
  BigNat q = num / den;
  BigNat r = num % den;
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

BigNat ceil_div(const BigNat& num, const BigNat& den) { return -floor_div(-num, den); }

BigNat floor(const BigRat& v) {
  return floor_div(boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
}

BigNat ceil(const BigRat& v) {
  return ceil_div(boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
}

std::string to_decimal(const BigRat& v, int digits) {
  BigNat scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigRat scaled = v * scale;
  bool negative = scaled < 0;
  BigNat mag = negative ? floor(-scaled) : floor(scaled);
  BigNat whole = mag / scale;
  BigNat frac = mag % scale;
  std::string out = (negative ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

GenBinomialPoly::GenBinomialPoly(int degree) : degree_(degree) {
  if (degree < 0) throw std::domain_error("negative degree");
  // Expand q (q-1) ... (q-d+1) in increasing powers.
  std::vector<BigNat> c{1};
  for (int i = 0; i < degree; ++i) {
    std::vector<BigNat> next(c.size() + 1, 0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] -= c[j] * i;
    }
    c = std::move(next);
  }
  BigNat f = factorial(degree);
  coeffs_.reserve(c.size());
  for (const auto& v : c) coeffs_.emplace_back(v, f);
}

BigRat GenBinomialPoly::operator()(const BigRat& q) const {
  BigRat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

BigRat gen_binom_at(int d, const BigRat& q) {
  if (d < 1) throw std::domain_error("gen_binom_at: degree must be >= 1");
  if (q < d - 1) throw std::domain_error("gen_binom_at: q must be >= d - 1");
  BigRat acc = 1;
  for (int i = 0; i < d; ++i) acc *= (q - i);
  return acc / factorial(d);
}

BigRat default_ll_width() { return BigRat(1, 1000000000); }

RatInterval solve_gen_binom(int c, const BigRat& target, const BigRat& width) {
  if (c < 1) throw std::domain_error("solve_gen_binom: c must be >= 1");
  if (width <= 0) throw std::domain_error("solve_gen_binom: width must be positive");
  RootBracket br(c, target);
  while (!br.exact && br.interval().width() > width) br.refine();
  return br.interval();
}

LLEnclosure ll_eval(int c, const BigNat& x, const BigRat& width) {
  if (c < 2) throw std::domain_error("ll_eval: c must be >= 2");
  if (x < 0) throw std::domain_error("ll_eval: x must be nonnegative");
  if (width <= 0) throw std::domain_error("ll_eval: width must be positive");
  LLEnclosure out;
  out.c = c;
  out.x = x;
  if (x == 0) {
    out.lo = out.hi = 0;
    out.exact = BigRat(0);
    return out;
  }
  RootBracket br(c, BigRat(x));
  for (;;) {
    if (br.exact) {
      BigRat v = gen_binom_dyadic(br.lo, c - 1);
      out.lo = out.hi = v;
      out.exact = v;
      break;
    }
    BigRat lo = gen_binom_dyadic(br.lo, c - 1);
    BigRat hi = gen_binom_dyadic(br.hi, c - 1);
    if (hi - lo <= width) {
      out.lo = lo;
      out.hi = hi;
      break;
    }
    br.refine();
  }
  out.q = br.interval();
  return out;
}

bool ll_leq(int c, const BigNat& x, const BigNat& bound) {
  if (c < 2) throw std::domain_error("ll_leq: c must be >= 2");
  if (x < 0) throw std::domain_error("ll_leq: x must be nonnegative");
  if (x == 0) return bound >= 0;
  // For x >= 1, q >= c and LL_c(x) >= c.
  if (bound < c) return false;

  RootBracket br(c, BigRat(x));
  if (br.exact) return compare_gen_binom(br.lo, c - 1, BigRat(bound)) <= 0;

  // LL_c(x) = binom(q, c-1) = c x / (q - c + 1), so LL_c(x) = bound forces
  // q = c - 1 + c x / bound; test that single candidate exactly.
  BigRat candidate = BigRat(c - 1) + BigRat(BigNat(c) * x, bound);
  RatInterval q = br.interval();
  if (q.lo < candidate && candidate < q.hi && gen_binom_at(c, candidate) == BigRat(x)) return true;

  const BigRat target(bound);
  for (;;) {
    if (br.exact) return compare_gen_binom(br.lo, c - 1, target) <= 0;
    // binom(lo, c-1) < LL_c(x) < binom(hi, c-1).
    if (compare_gen_binom(br.lo, c - 1, target) >= 0) return false;
    if (compare_gen_binom(br.hi, c - 1, target) <= 0) return true;
    br.refine();
  }
}

}  // namespace sperner

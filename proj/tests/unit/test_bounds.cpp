#include "sperner/bounds.hpp"

#include <doctest.h>

#include <random>

using namespace sperner;

TEST_CASE("params") {
  Params p(10, 4);
  CHECK(p.c() == 2);
  CHECK(p.r() == 2);
  CHECK_THROWS_AS(Params(3, 5), std::invalid_argument);
  CHECK_THROWS_AS(Params(3, 0), std::invalid_argument);
}

TEST_CASE("nlb") {
  CHECK(nlb(Params(10, 4)) == 7);
  CHECK(nlb(Params(12, 5)) == 9);
  for (int k = 2; k <= 6; ++k)
    for (int c = 1; c <= 5; ++c) {
      const Params p(c * k, k);
      CHECK(nlb_rational(p) == BigRat(binom(c * k, c), k));
    }
}

TEST_CASE("mms") {
  CHECK(mms(Params(10, 4)) == BigRat(180, 11));
  CHECK(mms_floor(Params(10, 4)) == 16);
  CHECK(mms_floor(Params(18, 4)) == 1127);
  for (int k = 2; k <= 6; ++k)
    for (int c = 1; c <= 5; ++c) CHECK(mms(Params(c * k, k)) == BigRat(binom(c * k - 1, c - 1)));
}

TEST_CASE("lhs_eq1") {
  CHECK(lhs_eq1(Params(27, 11), 40));
  CHECK_FALSE(lhs_eq1(Params(27, 11), 41));
  CHECK(lhs_eq1(Params(10, 4), 0));
  CHECK(lhs_eq1(Params(33, 7), 0));
}

TEST_CASE("lhs_eq1 is monotone in p") {
  std::mt19937_64 rng(2024);
  int samples = 0;
  while (samples < 1000) {
    const int k = std::uniform_int_distribution<int>(4, 9)(rng);
    const int n = std::uniform_int_distribution<int>(2 * k + 2, 40)(rng);
    const Params p(n, k);
    if (p.r() == 0) continue;
    const BigNat top = mms_floor(p) + 2;
    const BigNat q = std::uniform_int_distribution<long>(0, static_cast<long>(top))(rng);
    if (!lhs_eq1(p, q)) CHECK_FALSE(lhs_eq1(p, q + 1));
    ++samples;
  }
}

TEST_CASE("thm_upper") {
  CHECK(thm_upper(Params(10, 4)) == 11);
  CHECK(thm_upper(Params(16, 6)) == 29);
  CHECK(thm_upper(Params(23, 5)) == 2808);
  CHECK(thm_upper(Params(33, 7)) == 12696);
  CHECK(thm_upper(Params(27, 11)) == 40);
  CHECK_THROWS_AS(thm_upper(Params(12, 4)), NotApplicable);
  CHECK_THROWS_AS(thm_upper(Params(9, 3)), NotApplicable);
  CHECK(thm_upper_violation(Params(12, 4)).has_value());
  CHECK_FALSE(thm_upper_violation(Params(10, 4)).has_value());
}

TEST_CASE("thm_upper is strictly below floor(MMS) on the table range") {
  for (int k = 4; k <= 7; ++k)
    for (int n = 2 * k + 2; n <= 33; ++n) {
      const Params p(n, k);
      if (p.r() == 0) continue;
      CHECK(thm_upper(p) < mms_floor(p));
    }
}

TEST_CASE("cor_upper") {
  const auto e = cor_upper(Params(10, 4), 11);
  CHECK(e.width() <= default_ll_width());
  CHECK(e.hi < mms(Params(10, 4)));
  MESSAGE("cor_upper(10,4,11) in [" << to_decimal(e.lo, 12) << ", " << to_decimal(e.hi, 12) << "]");
  for (int k = 4; k <= 6; ++k)
    for (int n = 2 * k + 2; n <= 24; ++n) {
      const Params p(n, k);
      if (p.r() == 0) continue;
      CHECK(cor_upper(p, nlb(p)).hi < mms(p));
    }
  // r = 1 with the smallest candidate still gives a valid argument.
  const Params r1(13, 4);
  CHECK(cor_upper(r1, nlb(r1)).lo > 0);
}

TEST_CASE("exact_known") {
  auto e94 = exact_known(Params(9, 4));
  REQUIRE(e94);
  CHECK(e94->value == 8);
  CHECK(exact_known(Params(5, 2))->value == 4);
  CHECK(exact_known(Params(27, 11))->value == 40);
  CHECK(exact_known(Params(12, 4))->value == 55);
  CHECK(exact_known(Params(20, 5))->value == 969);
  CHECK(exact_known(Params(7, 7))->value == 1);
  CHECK_FALSE(exact_known(Params(10, 4)));
}

TEST_CASE("limea_bounds") {
  CHECK(limea_bounds(Params(14, 6))->lower == 13);
  CHECK(limea_bounds(Params(16, 7))->lower == 15);
  auto r = limea_bounds(Params(20, 9));
  REQUIRE(r);
  CHECK(r->lower == 19);
  REQUIRE(r->upper);
  CHECK(*r->upper == 21);
  CHECK_FALSE(limea_bounds(Params(30, 9)));
}

TEST_CASE("main and alt constructions") {
  const auto s = main_construction_sums(Params(10, 4), 1);
  CHECK(s.a == 25);
  CHECK(s.b == 20);
  CHECK(main_construction_p(Params(10, 4), 1) == 10);
  CHECK(main_construction_p(Params(18, 4), 2) == 648);
  CHECK(main_construction_p(Params(12, 5), 1) == 12);
  CHECK(alt_construction_p(Params(26, 7), 2) == 286);
  CHECK(alt_construction_p(Params(28, 5), 3) == 16016);
  // 20 = 2*7 + 6 has c*k = 14 even: only the main construction applies.
  CHECK(alt_construction_violation(Params(20, 7), 2).has_value());
  CHECK(main_construction_p(Params(20, 7), 1) == 40);
  const auto why = alt_construction_violation(Params(10, 4), 1);
  REQUIRE(why);
  CHECK(why->find("c*k odd") != std::string::npos);
  CHECK_THROWS_AS(main_construction_p(Params(12, 4), 1), NotApplicable);
}

namespace {

// max_u min(a_u, b_u) from the crossing index w of the two monotone sequences.
BigNat crossing_value(const std::vector<BigNat>& a, const std::vector<BigNat>& b) {
  std::size_t w = 0;
  while (w + 1 < a.size() && !(a[w] > b[w] && a[w + 1] <= b[w + 1])) ++w;
  return std::max(a[w + 1], b[w]);
}

}  // namespace

TEST_CASE("best u matches the crossing rule") {
  int compared = 0;
  for (int n = 8; n <= 40; n += 2)
    for (int k = 3; k <= 10; ++k) {
      if (n < 2 * k) continue;
      const Params p(n, k);
      const int c = p.c(), r = p.r(), h = n / 2;
      if (r == 0) continue;
      if (!admissible_main_u(p).empty() && r != k - 1) {
        std::vector<BigNat> a{binom(n, c) / (k - r)}, b{0};
        for (int j = 1; j <= c / 2; ++j) {
          const auto s = main_construction_sums(p, j);
          a.push_back(s.a / (k - r));
          b.push_back(s.b / r);
        }
        a.push_back(0);
        b.push_back(binom(n, c + 1) / r);
        BigNat best = 0;
        for (int u : admissible_main_u(p)) best = std::max(best, main_construction_p(p, u));
        const BigNat rule = crossing_value(a, b);
        // The rule may land on u = 0 or u = floor(c/2)+1, which are the trivial
        // endpoints and not constructions.
        if (rule == a.back() || rule == b.front()) continue;
        CHECK(best == rule);
        ++compared;
      }
      if (!admissible_alt_u(p).empty() && r != 1) {
        std::vector<BigNat> a{binom(n, c) / (k - r)}, b{0};
        for (int j = (c + 1) / 2; j <= c - 1; ++j) {
          const auto s = alt_construction_sums(p, j);
          a.push_back(s.a / (k - r));
          b.push_back(s.b / r);
        }
        a.push_back(0);
        b.push_back((binom(n, c + 1) - 2 * binom(h, c + 1)) / r);
        BigNat best = 0;
        for (int u : admissible_alt_u(p)) best = std::max(best, alt_construction_p(p, u));
        const BigNat rule = crossing_value(a, b);
        if (rule == a.back() || rule == b.front()) continue;
        CHECK(best == rule);
        ++compared;
      }
    }
  CHECK(compared > 20);
}

TEST_CASE("best direct lower and upper") {
  auto l18 = best_direct_lower(Params(18, 4));
  CHECK(l18.value == 648);
  CHECK(l18.source.str() == "MAIN(2)");
  auto l11 = best_direct_lower(Params(11, 4));
  CHECK(l11.value == 11);
  CHECK(l11.source.str() == "LIMEA-RANGE");
  for (int k = 2; k <= 6; ++k)
    for (int c = 1; c <= 5; ++c) {
      const Params p(c * k, k);
      const auto rec = best_direct_lower(p);
      CHECK(rec.value == binom(c * k - 1, c - 1));
      CHECK(rec.value == mms_floor(p));
    }
  auto u10 = best_direct_upper(Params(10, 4));
  CHECK(u10.value == 11);
  CHECK(u10.source.str() == "THM-UB");
}

TEST_CASE("source tags") {
  CHECK(Source{SourceKind::product, {5, 24}}.str() == "PRODUCT(5, 24)");
  CHECK(Source{SourceKind::main, {1}}.str() == "MAIN(1)");
  CHECK(Source{SourceKind::mono, {}}.str() == "MONO");
}

TEST_CASE("aggregate") {
  const auto k5 = aggregate(5, 29);
  CHECK(k5.back().lower.value == 16830);
  CHECK(k5.back().lower.source.str() == "PRODUCT(5, 24)");
  const auto k4 = aggregate(4, 13);
  CHECK(k4.back().lower.value == 55);
  CHECK(k4.back().lower.source.str() == "MONO");
  const auto k6 = aggregate(6, 19);
  CHECK(k6.back().lower.value == 136);
  CHECK(k6.back().lower.source.str() == "MONO");
  CHECK(k6.back().upper.value == 167);
  for (int k = 2; k <= 8; ++k) {
    const auto cells = aggregate(k, 40);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Params p(k + static_cast<int>(i), k);
      CHECK(cells[i].lower.value >= nlb(p));
      CHECK(cells[i].lower.value <= cells[i].upper.value);
      CHECK(cells[i].upper.value <= mms_floor(p));
    }
  }
}

TEST_CASE("ratio diagnostics") {
  for (int k = 3; k <= 8; ++k)
    for (int n = 2 * k + 1; n <= 50; ++n) {
      const Params p(n, k);
      const auto d = ratio_diagnostics(p);
      if (p.c() >= 2) CHECK(d.times_k_over_mms <= BigRat(25, 36));
      if (p.r() == 0) CHECK(d.nlb_over_mms == 1);
    }
  const auto d = ratio_diagnostics(Params(22, 7));
  MESSAGE("ratio_diagnostics(22,7): " << d.nlb_over_mms << " ~ " << to_decimal(d.nlb_over_mms, 6) << ", "
                                      << d.times_k_over_mms << " ~ " << to_decimal(d.times_k_over_mms, 6));
  CHECK(d.nlb_over_mms < 1);
  CHECK_THROWS(ratio_diagnostics(Params(8, 4)));
}

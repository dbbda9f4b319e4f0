#include "sperner/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace sperner {

namespace {

// Lower preference value wins among sources reaching the same bound.
int preference(SourceKind kind) {
  switch (kind) {
    case SourceKind::exact_trivial:
    case SourceKind::exact_div:
    case SourceKind::exact_k2:
    case SourceKind::exact_2k1:
    case SourceKind::family_3k6:
    case SourceKind::brute:
      return 0;
    case SourceKind::thm_ub:
    case SourceKind::main:
      return 1;
    case SourceKind::alt:
      return 2;
    case SourceKind::limea_range:
      return 3;
    case SourceKind::product:
      return 4;
    case SourceKind::times_k:
      return 5;
    case SourceKind::mono:
      return 6;
    case SourceKind::mms_floor:
    case SourceKind::nlb:
      return 7;
  }
  return 8;
}

bool is_exact(SourceKind kind) { return preference(kind) == 0; }

struct Candidate {
  BigNat value;
  Source source;
};

// Picks the best candidate (max for lower, min for upper) and collects ties.
BoundRecord pick(const Params& p, std::vector<Candidate> cands, Direction dir) {
  if (cands.empty()) throw std::logic_error("no bound candidates");
  std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return dir == Direction::upper ? a.value < b.value : a.value > b.value;
    return preference(a.source.kind) < preference(b.source.kind);
  });
  BoundRecord rec{p, cands.front().value, dir, cands.front().source, {}};
  for (std::size_t i = 1; i < cands.size() && cands[i].value == rec.value; ++i)
    rec.ties.push_back(cands[i].source);
  if (is_exact(rec.source.kind)) rec.direction = Direction::exact;
  return rec;
}

std::string join_violation(const char* what, const std::string& detail) {
  return std::string("requires ") + what + " (" + detail + ")";
}

}  // namespace

std::string Source::str() const {
  auto with_args = [&](const char* base) {
    std::string s = base;
    if (!args.empty()) {
      s += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(args[i]);
      }
      s += ")";
    }
    return s;
  };
  switch (kind) {
    case SourceKind::nlb: return "NLB";
    case SourceKind::mms_floor: return "MMS-floor";
    case SourceKind::thm_ub: return "THM-UB";
    case SourceKind::main: return with_args("MAIN");
    case SourceKind::alt: return with_args("ALT");
    case SourceKind::product: return with_args("PRODUCT");
    case SourceKind::mono: return "MONO";
    case SourceKind::times_k: return "TIMES-K";
    case SourceKind::exact_div: return "EXACT-DIV";
    case SourceKind::exact_k2: return "EXACT-K2";
    case SourceKind::exact_2k1: return "EXACT-2K1";
    case SourceKind::exact_trivial: return "EXACT-TRIVIAL";
    case SourceKind::limea_range: return "LIMEA-RANGE";
    case SourceKind::family_3k6: return "FAMILY-3K6";
    case SourceKind::brute: return "BRUTE";
  }
  return "?";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::lower: return "lower";
    case Direction::upper: return "upper";
    case Direction::exact: return "exact";
  }
  return "?";
}

BigNat nlb(const Params& p) { return binom(p.n() - p.r(), p.c()) / p.k(); }

BigRat nlb_rational(const Params& p) { return BigRat(binom(p.n() - p.r(), p.c()), p.k()); }

BigRat mms(const Params& p) {
  const int n = p.n(), k = p.k(), c = p.c(), r = p.r();
  BigRat denom(k - r);
  if (r != 0) denom += BigRat(r * (c + 1), n - c);
  return BigRat(binom(n, c)) / denom;
}

BigNat mms_floor(const Params& p) { return floor(mms(p)); }

bool lhs_eq1(const Params& params, const BigNat& p) {
  const int n = params.n(), k = params.k(), c = params.c(), r = params.r();
  if (c < 2) throw std::domain_error("lhs_eq1 needs c >= 2");
  if (p < 0) throw std::domain_error("lhs_eq1 needs p >= 0");
  // 1 - r(c+1)/n = c(k-r)/n.
  BigNat a = ceil_div(BigNat(c) * (k - r) * p, n);
  BigNat x = floor_div(BigNat(r) * (c + 1) * p, n);
  BigNat slack = binom(n - 1, c - 1) - a;
  if (slack < 0) return false;
  return ll_leq(c, x, slack);
}

std::optional<std::string> thm_upper_violation(const Params& p) {
  if (p.k() < 4) return join_violation("k >= 4", "k = " + std::to_string(p.k()));
  if (p.n() < 2 * p.k() + 2)
    return join_violation("n >= 2k+2", "n = " + std::to_string(p.n()) + ", 2k+2 = " +
                                            std::to_string(2 * p.k() + 2));
  if (p.r() == 0) return join_violation("r != 0", "k divides n");
  return std::nullopt;
}

BigNat thm_upper(const Params& p) {
  if (auto why = thm_upper_violation(p)) throw NotApplicable("thm_upper " + *why);
  BigNat lo = nlb(p);
  BigNat hi = mms_floor(p);
  if (!lhs_eq1(p, lo)) throw std::logic_error("inequality fails at NLB");
  if (lhs_eq1(p, hi + 1)) throw std::logic_error("inequality holds above floor(MMS)");
  if (lhs_eq1(p, hi)) return hi;
  // lhs_eq1(lo) holds and lhs_eq1(hi) fails.
  while (hi - lo > 1) {
    BigNat mid = (lo + hi) / 2;
    if (lhs_eq1(p, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

RatInterval cor_upper(const Params& p, const BigNat& sp_candidate, const BigRat& width) {
  if (auto why = thm_upper_violation(p)) throw NotApplicable("cor_upper " + *why);
  if (sp_candidate < nlb(p)) throw NotApplicable("cor_upper requires sp_candidate >= NLB(n,k)");
  const int n = p.n(), k = p.k(), c = p.c(), r = p.r();
  const BigRat target = BigRat(BigNat(r) * (c + 1) * sp_candidate, n);
  const BigRat top(binom(n, c));
  auto bound_at = [&](const BigRat& q) { return top / (BigRat(k - r) + BigRat(r * (c + 1)) / (q - c + 1)); };
  BigRat qwidth = width;
  for (;;) {
    RatInterval q = solve_gen_binom(c, target, qwidth);
    // The bound increases with q.
    RatInterval out{bound_at(q.lo), bound_at(q.hi)};
    if (out.width() <= width) return out;
    qwidth /= 256;
  }
}

std::optional<BoundRecord> exact_known(const Params& p) {
  const int n = p.n(), k = p.k(), c = p.c(), r = p.r();
  auto rec = [&](BigNat v, SourceKind kind) {
    return BoundRecord{p, std::move(v), Direction::exact, Source{kind, {}}, {}};
  };
  if (k == 1 || n < 2 * k) return rec(1, SourceKind::exact_trivial);
  if (r == 0) return rec(binom(n - 1, c - 1), SourceKind::exact_div);
  if (k == 2) return rec(binom(n - 1, n / 2 - 1), SourceKind::exact_k2);
  if (n == 2 * k + 1 && k % 2 == 0) return rec(2 * k, SourceKind::exact_2k1);
  if (n == 3 * k - 6 && k >= 11 && k % 6 != 4) return rec((k - 2) * (k - 2) / 2, SourceKind::family_3k6);
  return std::nullopt;
}

std::optional<LiMeaRange> limea_bounds(const Params& p) {
  const int n = p.n(), k = p.k();
  if (k < 3) return std::nullopt;
  if (n == 2 * k + 1) return LiMeaRange{2 * k - 1, BigNat(2 * k)};
  if (n == 2 * k + 2) return LiMeaRange{2 * k + 1, BigNat(2 * k + 3)};
  if (n == 3 * k - 1) return LiMeaRange{3 * k - 1, std::nullopt};
  return std::nullopt;
}

std::optional<std::string> main_construction_violation(const Params& p, int u) {
  const int n = p.n(), k = p.k(), c = p.c(), r = p.r();
  if (n < 2 * k) return join_violation("n >= 2k", "n = " + std::to_string(n));
  if (k < 3) return join_violation("k >= 3", "k = " + std::to_string(k));
  if (r == 0) return join_violation("r != 0", "k divides n");
  if (n % 2 != 0) return join_violation("n even", "n = " + std::to_string(n));
  if ((c * k) % 2 != 0) return join_violation("c*k even", "c*k = " + std::to_string(c * k));
  if (u < 1 || u > c / 2)
    return join_violation("1 <= u <= floor(c/2)", "u = " + std::to_string(u) + ", c = " + std::to_string(c));
  if (r == k - 1 && 2 * u != c)
    return join_violation("u = c/2 when r = k-1", "u = " + std::to_string(u) + ", c = " + std::to_string(c));
  return std::nullopt;
}

ConstructionSums main_construction_sums(const Params& p, int u) {
  const int h = p.n() / 2, c = p.c();
  ConstructionSums s{0, 0};
  for (int i = u; i <= c - u; ++i) s.a += binom(h, i) * binom(h, c - i);
  for (int i = 0; i <= u - 1; ++i) s.b += binom(h, i) * binom(h, c + 1 - i);
  s.b *= 2;
  return s;
}

BigNat main_construction_p(const Params& p, int u) {
  if (auto why = main_construction_violation(p, u)) throw NotApplicable("main construction " + *why);
  auto s = main_construction_sums(p, u);
  return std::min<BigNat>(s.a / (p.k() - p.r()), s.b / p.r());
}

std::vector<int> admissible_main_u(const Params& p) {
  std::vector<int> out;
  for (int u = 1; u <= p.c() / 2; ++u)
    if (!main_construction_violation(p, u)) out.push_back(u);
  return out;
}

std::optional<std::string> alt_construction_violation(const Params& p, int u) {
  const int n = p.n(), k = p.k(), c = p.c(), r = p.r();
  if (n < 2 * k) return join_violation("n >= 2k", "n = " + std::to_string(n));
  if (k < 3) return join_violation("k >= 3", "k = " + std::to_string(k));
  if (n % 2 != 0) return join_violation("n even", "n = " + std::to_string(n));
  if ((c * k) % 2 != 1) return join_violation("c*k odd", "c*k = " + std::to_string(c * k) + " is even");
  if (2 * u < c + 1 || u > c - 1)
    return join_violation("(c+1)/2 <= u <= c-1", "u = " + std::to_string(u) + ", c = " + std::to_string(c));
  if (r == 1 && 2 * u != c + 1)
    return join_violation("u = (c+1)/2 when r = 1", "u = " + std::to_string(u) + ", c = " + std::to_string(c));
  return std::nullopt;
}

ConstructionSums alt_construction_sums(const Params& p, int u) {
  const int h = p.n() / 2, c = p.c();
  ConstructionSums s{0, 0};
  for (int i = u + 1; i <= c; ++i) s.a += binom(h, i) * binom(h, c - i);
  s.a *= 2;
  for (int i = c + 1 - u; i <= u; ++i) s.b += binom(h, i) * binom(h, c + 1 - i);
  return s;
}

BigNat alt_construction_p(const Params& p, int u) {
  if (auto why = alt_construction_violation(p, u)) throw NotApplicable("alternate construction " + *why);
  auto s = alt_construction_sums(p, u);
  return std::min<BigNat>(s.a / (p.k() - p.r()), s.b / p.r());
}

std::vector<int> admissible_alt_u(const Params& p) {
  std::vector<int> out;
  for (int u = 1; u <= p.c(); ++u)
    if (!alt_construction_violation(p, u)) out.push_back(u);
  return out;
}

namespace {

std::vector<Candidate> direct_lower_candidates(const Params& p) {
  std::vector<Candidate> cands;
  if (auto ex = exact_known(p)) cands.push_back({ex->value, ex->source});
  for (int u : admissible_main_u(p)) cands.push_back({main_construction_p(p, u), {SourceKind::main, {u}}});
  for (int u : admissible_alt_u(p)) cands.push_back({alt_construction_p(p, u), {SourceKind::alt, {u}}});
  if (auto lm = limea_bounds(p)) cands.push_back({lm->lower, {SourceKind::limea_range, {}}});
  return cands;
}

}  // namespace

BoundRecord best_direct_lower(const Params& p) {
  auto cands = direct_lower_candidates(p);
  if (cands.empty()) cands.push_back({nlb(p), {SourceKind::nlb, {}}});
  return pick(p, std::move(cands), Direction::lower);
}

BoundRecord best_direct_upper(const Params& p) {
  std::vector<Candidate> cands;
  if (auto ex = exact_known(p)) cands.push_back({ex->value, ex->source});
  if (!thm_upper_violation(p)) cands.push_back({thm_upper(p), {SourceKind::thm_ub, {}}});
  if (auto lm = limea_bounds(p); lm && lm->upper) cands.push_back({*lm->upper, {SourceKind::limea_range, {}}});
  cands.push_back({mms_floor(p), {SourceKind::mms_floor, {}}});
  return pick(p, std::move(cands), Direction::upper);
}

std::vector<TableCell> aggregate(int k, int n_max) {
  if (k < 1) throw std::invalid_argument("aggregate needs k >= 1");
  if (n_max < k) throw std::invalid_argument("aggregate needs n_max >= k");
  std::vector<BigNat> best(static_cast<std::size_t>(n_max) + 1, 0);
  std::vector<TableCell> out;
  for (int n = k; n <= n_max; ++n) {
    Params p(n, k);
    auto cands = direct_lower_candidates(p);
    for (int m = k; m <= n - m; ++m)
      cands.push_back({BigNat(k) * best[m] * best[n - m], {SourceKind::product, {m, n - m}}});
    if (n - k >= k) cands.push_back({BigNat(k) * best[n - k], {SourceKind::times_k, {}}});
    if (n > k) cands.push_back({best[n - 1], {SourceKind::mono, {}}});
    cands.push_back({nlb(p), {SourceKind::nlb, {}}});
    BoundRecord lower = pick(p, std::move(cands), Direction::lower);
    BoundRecord upper = best_direct_upper(p);
    if (lower.value > upper.value)
      throw std::logic_error("lower bound exceeds upper bound at n=" + std::to_string(n) +
                             ", k=" + std::to_string(k));
    if (lower.value == upper.value) lower.direction = upper.direction = Direction::exact;
    best[n] = lower.value;
    out.push_back({std::move(lower), std::move(upper)});
  }
  return out;
}

RatioDiagnostics ratio_diagnostics(const Params& p) {
  if (p.k() < 3) throw NotApplicable("ratio_diagnostics requires k >= 3");
  if (p.n() <= 2 * p.k()) throw NotApplicable("ratio_diagnostics requires n > 2k");
  Params next(p.n() + p.k(), p.k());
  return {nlb_rational(p) / mms(p), BigRat(p.k()) * mms(p) / mms(next)};
}

}  // namespace sperner

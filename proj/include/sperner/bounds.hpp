#pragma once

#include "sperner/exactmath.hpp"
#include "sperner/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sperner {

enum class Direction { lower, upper, exact };

enum class SourceKind {
  nlb,
  mms_floor,
  thm_ub,
  main,
  alt,
  product,
  mono,
  times_k,
  exact_div,
  exact_k2,
  exact_2k1,
  exact_trivial,
  limea_range,
  family_3k6,
  brute,
};

/// Provenance of a bound: the rule plus its arguments (u for MAIN/ALT, the
/// split m, n-m for PRODUCT).
struct Source {
  SourceKind kind = SourceKind::nlb;
  std::vector<int> args;

  /// Tag such as "MAIN(1)", "PRODUCT(5, 24)", "MONO".
  std::string str() const;
  friend bool operator==(const Source&, const Source&) = default;
};

std::string to_string(Direction d);

struct BoundRecord {
  Params params;
  BigNat value;
  Direction direction = Direction::lower;
  Source source;
  /// Other rules reaching the same value, in preference order.
  std::vector<Source> ties;
};

/// floor(binom(n - r, c) / k).
BigNat nlb(const Params& p);
/// binom(n - r, c) / k as an exact rational.
BigRat nlb_rational(const Params& p);

/// binom(n, c) / (k - r + r (c+1) / (n - c)).
BigRat mms(const Params& p);
BigNat mms_floor(const Params& p);

/// Whether ceil((1 - r(c+1)/n) p) + LL_c(floor(r(c+1) p / n)) <= binom(n-1, c-1).
/// Requires c >= 2.
bool lhs_eq1(const Params& params, const BigNat& p);

/// Empty when the implicit upper bound applies, otherwise the violated
/// hypothesis.
std::optional<std::string> thm_upper_violation(const Params& p);

/// Largest p' such that lhs_eq1 holds for every p <= p'. Throws
/// NotApplicable unless n >= 2k+2, k >= 4 and r >= 1.
BigNat thm_upper(const Params& p);

/// Enclosure of binom(n,c) / ((k-r) + r(c+1)/(q-c+1)) where
/// binom(q, c) = r(c+1)/n * sp_candidate. Same hypotheses as thm_upper plus
/// sp_candidate >= nlb.
RatInterval cor_upper(const Params& p, const BigNat& sp_candidate,
                      const BigRat& width = default_ll_width());

/// Exact SP(n,k) when one of the classical closed forms applies.
std::optional<BoundRecord> exact_known(const Params& p);

struct LiMeaRange {
  BigNat lower;
  std::optional<BigNat> upper;
};

/// Ranges for n in {2k+1, 2k+2, 3k-1}; empty otherwise.
std::optional<LiMeaRange> limea_bounds(const Params& p);

/// a(u) and b(u) of the main or alternate construction.
struct ConstructionSums {
  BigNat a;
  BigNat b;
};

std::optional<std::string> main_construction_violation(const Params& p, int u);
ConstructionSums main_construction_sums(const Params& p, int u);
/// min(floor(a(u)/(k-r)), floor(b(u)/r)). Throws NotApplicable.
BigNat main_construction_p(const Params& p, int u);
std::vector<int> admissible_main_u(const Params& p);

std::optional<std::string> alt_construction_violation(const Params& p, int u);
ConstructionSums alt_construction_sums(const Params& p, int u);
BigNat alt_construction_p(const Params& p, int u);
std::vector<int> admissible_alt_u(const Params& p);

/// Best lower bound from a single rule applied at (n, k): exact values, the
/// Li-Meagher ranges and every admissible u of both constructions. Falls
/// back to NLB when nothing else applies.
BoundRecord best_direct_lower(const Params& p);

/// min(thm_upper where applicable, floor(MMS), exact, Li-Meagher upper).
BoundRecord best_direct_upper(const Params& p);

struct TableCell {
  BoundRecord lower;
  BoundRecord upper;
};

/// Best known lower and upper records for n = k .. n_max. Lower bounds are
/// propagated in increasing n through monotonicity, the x k rule and the
/// product construction over every split.
std::vector<TableCell> aggregate(int k, int n_max);

struct RatioDiagnostics {
  BigRat nlb_over_mms;
  /// k MMS(n,k) / MMS(n+k,k).
  BigRat times_k_over_mms;
};

/// Requires n > 2k and k >= 3.
RatioDiagnostics ratio_diagnostics(const Params& p);

}  // namespace sperner

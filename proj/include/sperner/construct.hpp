#pragma once

#include "sperner/bounds.hpp"
#include "sperner/params.hpp"
#include "sperner/system.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sperner {

/// Ground set {0..n-1} cut into consecutive parts. The two-part split has
/// X1 = {0..n/2-1} and X2 = {n/2..n-1}.
struct GroundSplit {
  std::vector<int> parts;

  static GroundSplit halves(int n);
  static GroundSplit equal_parts(int count, int size);

  int n() const;
  int offset(std::size_t part) const;
};

/// Intersection sizes of an edge with each part; (i, j) for a halved set.
using EdgeType = std::vector<int>;

/// Types of a compatible pair or triple assigned to one colour together.
using TypeGroup = std::vector<EdgeType>;

/// Remaining edges per type; starts at prod_i binom(|X_i|, t_i).
class TypeSupply {
 public:
  TypeSupply(const GroundSplit& split, const std::vector<EdgeType>& types);

  BigNat remaining(const EdgeType& t) const;
  /// Throws std::logic_error when the type is unknown or exhausted.
  void take(const EdgeType& t, const BigNat& count = 1);
  const std::map<EdgeType, BigNat>& counts() const { return counts_; }

 private:
  std::map<EdgeType, BigNat> counts_;
};

/// An unordered type triple [x1, x2, x3] with x1 <= x2 <= x3 and sum 0.
using TypeTriple = std::array<int, 3>;
using TripleTypeList = std::vector<TypeTriple>;

/// Raised when a hypothesis needed by the triple recursion fails. `index` is
/// the offending count index (or -1 when not tied to one).
class TripleHypothesisError : public std::runtime_error {
 public:
  TripleHypothesisError(std::string condition, int index, const std::string& msg)
      : std::runtime_error(msg), condition_(std::move(condition)), index_(index) {}
  const std::string& condition() const { return condition_; }
  int index() const { return index_; }

 private:
  std::string condition_;
  int index_;
};

/// Picks p balanced triples from a symmetric type multiset with e[i] edges of
/// each of types i and -i (e has t+1 entries). Greedy by case, checking
/// e_i >= e_{i+1} + s at every step (only e_0 >= 1 when one triple is left).
TripleTypeList comp_triples(int t, const std::vector<BigNat>& e, int p);

/// e_i > e_{i+1} + t for i < t where e_i = binom(n/2, t-i) binom(n/2, t+i).
bool check_e_condition(int n, int t);

/// Per-colour edge types, grouped as declared by the construction.
struct ColourPlan {
  int n = 0;
  int k = 0;
  GroundSplit split;
  std::vector<std::vector<TypeGroup>> colours;
  /// Edges of each type left uncoloured (black).
  std::map<EdgeType, BigNat> black;

  std::size_t size() const { return colours.size(); }
  /// Flattened types of one colour.
  std::vector<EdgeType> types(std::size_t colour) const;
  /// Total use of each type across colours.
  std::map<EdgeType, BigNat> consumption() const;
};

/// Checks the per-colour invariants (k edges, part sums equal part sizes,
/// r edges of size c+1) and consumption <= supply. Empty when fine.
std::optional<std::string> check_plan(const ColourPlan& plan);

ColourPlan plan_main(const Params& params, int u);
ColourPlan plan_alt(const Params& params, int u);

/// Thrown when realization cannot complete. Not expected for valid plans.
class RealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Turns a plan into concrete distinct edges: for every colour, the edges
/// meet each part in a partition of that part. Needs n <= 64. The result is
/// verified before it is returned.
PartitionSystem realize(const ColourPlan& plan, std::uint64_t seed = 0);

/// The n = 3k-6 system with floor((k-2)^2/2) partitions. Needs k >= 11 and
/// k != 4 mod 6.
ColourPlan plan_3k6(int k);
PartitionSystem build_3k6(int k, std::uint64_t seed = 0);

/// k |A| |B| partitions on sysA.n + sysB.n points.
PartitionSystem product_build(const PartitionSystem& sysA, const PartitionSystem& sysB);

/// One partition into k classes (classes of size c or c+1).
PartitionSystem single_partition(const Params& params);

/// Largest system among the explicit builders for (n, k): main/alt for every
/// admissible u, the 3k-6 family, or a single partition.
struct DirectBuild {
  PartitionSystem system;
  Source source;
};
DirectBuild build_direct(const Params& params, std::uint64_t seed = 0);

struct BruteResult {
  BigNat value;
  PartitionSystem witness;
};

/// Exact SP(n, k) by maximum clique over all k-partitions of [n].
/// Throws std::invalid_argument when n > cap. With canonical_first the search
/// is rooted at one fixed partition per class-size shape (valid by symmetry
/// of the ground set, and much faster).
BruteResult brute_force_sp(const Params& params, int cap = 9, bool canonical_first = false);

}  // namespace sperner

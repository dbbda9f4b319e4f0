#pragma once

#include "sperner/params.hpp"
#include "sperner/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sperner {

enum class FailureKind {
  none,
  bad_shape,      // wrong class count, element out of range, empty class
  not_partition,  // classes overlap or miss an element
  subset,         // a class of one partition inside a class of another
};

/// Result of a check. On failure the witness indices point at the first
/// offending pair in scan order: class (a_part, a_class) is a subset of
/// class (b_part, b_class) for FailureKind::subset; otherwise only a_part
/// (and a_class when relevant) are meaningful.
struct VerifyReport {
  bool ok = true;
  FailureKind kind = FailureKind::none;
  std::size_t a_part = 0;
  std::size_t a_class = 0;
  std::size_t b_part = 0;
  std::size_t b_class = 0;
  std::string message;

  explicit operator bool() const { return ok; }
};

/// Partition validity plus the Sperner condition.
VerifyReport verify_system(const PartitionSystem& sys);

/// Every partition has k-r classes of size c and r of size c+1.
/// Throws std::invalid_argument when sys.n, sys.k disagree with params.
bool verify_almost_uniform(const PartitionSystem& sys, const Params& params);

/// Sets over [m] stored as sorted element lists.
using SetFamily = std::vector<std::vector<int>>;

enum class ShadowDirection { down, up };

/// All target-sets contained in (down) or containing (up) some member of
/// `family`, a family of i-subsets of {0..m-1}. Result is sorted and
/// duplicate free. Throws std::invalid_argument if the direction is
/// inconsistent with the member sizes.
SetFamily shadow(int m, const SetFamily& family, ShadowDirection dir, int target);

/// Hypergraph whose edges are pairwise incomparable.
class Clutter {
 public:
  /// Throws std::invalid_argument if two edges are comparable or an edge
  /// leaves {0..vertices-1}.
  Clutter(int vertices, SetFamily edges);

  int vertices() const { return vertices_; }
  const SetFamily& edges() const { return edges_; }

 private:
  int vertices_;
  SetFamily edges_;
};

/// |shadow to size c| >= min(|E|, binom(2c+1, c) + 1) where the shadow of
/// each edge is taken down to size c. Requires every edge to have size >= c.
bool min_shadow_floor(const Clutter& h, int c);

/// n x p array over symbols 1..k.
struct DetectingArray {
  int rows = 0;
  int cols = 0;
  int symbols = 0;
  /// Row-major, entry(i, j) = data[i * cols + j].
  std::vector<int> data;

  int at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

/// Entry (i, j) is l when element i is in class l (1-based, in stored class
/// order) of partition j. Throws std::invalid_argument on malformed systems.
DetectingArray to_detecting_array(const PartitionSystem& sys);

/// Checks that no symbol's row set in one column is contained in another
/// symbol's row set in any column (including the same column). A symbol
/// missing from a column is a failure. Witness uses (column, symbol - 1)
/// in the part/class fields.
VerifyReport verify_detecting(const DetectingArray& arr);

}  // namespace sperner

#pragma once

#include <cstddef>
#include <vector>

namespace sperner {

/// A class is a sorted list of ground elements in 0..n-1.
using Class = std::vector<int>;
using Partition = std::vector<Class>;

/// Partitions of {0, ..., n-1}, each into k classes. Nothing here enforces
/// validity; see verify_system.
struct PartitionSystem {
  int n = 0;
  int k = 0;
  std::vector<Partition> partitions;

  std::size_t size() const { return partitions.size(); }
  friend bool operator==(const PartitionSystem&, const PartitionSystem&) = default;
};

}  // namespace sperner

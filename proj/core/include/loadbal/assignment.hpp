#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "loadbal/instance.hpp"

namespace loadbal {

using Load = std::int64_t;

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Per-server loads.
struct LoadVector {
  std::vector<Load> loads;

  Load max() const;
  Load sum() const;
  /// l_p norm; p = kInfNorm gives the maximum. l1 and l_inf are exact.
  double norm(double p) const;
};

/// Total map client -> adjacent server (local indices).
struct Assignment {
  std::vector<int> server_of;

  LoadVector loads(const Instance& instance) const;
  /// Every client mapped to an adjacent server.
  bool valid(const Instance& instance) const;

  bool operator==(const Assignment&) const = default;
};

/// Each client placed on a set of r distinct adjacent servers.
struct MultiAssignment {
  int r = 1;
  std::vector<std::vector<int>> servers_of;

  /// A client's weight counts once on each chosen server.
  LoadVector loads(const Instance& instance) const;
  bool valid(const Instance& instance) const;

  bool operator==(const MultiAssignment&) const = default;
};

}  // namespace loadbal

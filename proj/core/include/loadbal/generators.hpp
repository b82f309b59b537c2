#pragma once

#include <cstdint>
#include <string>

#include "loadbal/instance.hpp"

namespace loadbal {

/// Parameters for generate_instance. Which fields matter depends on `name`:
///   random-bipartite   clients, servers, p
///   star               clients
///   disjoint-perfect   k
///   power-law-degrees  clients, servers, exponent
///   weighted-random    clients, servers, p, max_weight
/// Generated ids put clients first: clients are [0, nC), servers [nC, n).
struct GeneratorSpec {
  std::string name;
  int clients = 0;
  int servers = 0;
  int k = 0;
  double p = 0.0;
  double exponent = 2.0;
  Weight max_weight = 1;
};

/// Deterministic for a fixed seed. Every client ends up with degree >= 1; a
/// client left isolated by sampling gets one uniformly random fallback edge.
Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace loadbal

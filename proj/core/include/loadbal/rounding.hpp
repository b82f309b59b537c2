#pragma once

#include <span>
#include <vector>

#include "loadbal/assignment.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/matching.hpp"

namespace loadbal {

/// Client-perfect (w, infinity)-matching: client c spreads exactly w(c)
/// integral units over adjacent servers.
struct SplitAssignment {
  std::vector<Mult> mult;  // per edge

  LoadVector loads(const Instance& instance) const;
  bool valid(const Instance& instance) const;
};

/// Cancels alternating cycles until the support is a forest. Every vertex
/// keeps its degree x(delta(v)). Each cycle is formed by an edge closing a
/// path in the forest built so far (edges in ascending order); the
/// alternation containing the cycle's smallest edge is increased.
std::vector<Mult> cancel_cycles(const Instance& instance, std::span<const Mult> mult);
SplitAssignment cancel_cycles(const Instance& instance, const SplitAssignment& split);
/// Only for unbounded edge capacities; throws InputError otherwise.
CapMatching cancel_cycles(const Instance& instance, const CapMatching& x);

/// True when the support of `mult` has no cycle.
bool support_is_forest(const Instance& instance, std::span<const Mult> mult);

/// Rounds a forest-supported client-perfect matching to an assignment with
/// L_A(s) <= x(delta(s)) + max over clients placed on s of kappa(c). Each
/// support tree is rooted at its smallest vertex id; a client with server
/// children goes to its smallest child, a leaf client to its parent.
/// Throws InputError when the support has a cycle or x is not client-perfect.
Assignment star_round(const Instance& instance, std::span<const Mult> mult, std::span<const Mult> kappa);

/// cancel_cycles followed by star_round with kappa = w.
Assignment round_split(const Instance& instance, const SplitAssignment& split);

}  // namespace loadbal

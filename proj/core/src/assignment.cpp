#include "loadbal/assignment.hpp"

#include <algorithm>
#include <cmath>

namespace loadbal {

Load LoadVector::max() const {
  Load best = 0;
  for (Load l : loads) best = std::max(best, l);
  return best;
}

Load LoadVector::sum() const {
  Load total = 0;
  for (Load l : loads) total += l;
  return total;
}

double LoadVector::norm(double p) const {
  if (std::isinf(p)) return static_cast<double>(max());
  if (p == 1.0) return static_cast<double>(sum());
  // scale by the maximum to keep pow() in range
  const double top = static_cast<double>(max());
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Load l : loads) acc += std::pow(static_cast<double>(l) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

LoadVector Assignment::loads(const Instance& instance) const {
  LoadVector out{std::vector<Load>(instance.num_servers(), 0)};
  for (int c = 0; c < instance.num_clients(); ++c) out.loads[server_of[c]] += instance.weight(c);
  return out;
}

bool Assignment::valid(const Instance& instance) const {
  if (server_of.size() != static_cast<std::size_t>(instance.num_clients())) return false;
  for (int c = 0; c < instance.num_clients(); ++c) {
    int s = server_of[c];
    if (s < 0 || s >= instance.num_servers() || !instance.find_edge(c, s)) return false;
  }
  return true;
}

LoadVector MultiAssignment::loads(const Instance& instance) const {
  LoadVector out{std::vector<Load>(instance.num_servers(), 0)};
  for (int c = 0; c < instance.num_clients(); ++c) {
    for (int s : servers_of[c]) out.loads[s] += instance.weight(c);
  }
  return out;
}

bool MultiAssignment::valid(const Instance& instance) const {
  if (servers_of.size() != static_cast<std::size_t>(instance.num_clients())) return false;
  for (int c = 0; c < instance.num_clients(); ++c) {
    auto chosen = servers_of[c];
    if (static_cast<int>(chosen.size()) != r) return false;
    std::sort(chosen.begin(), chosen.end());
    if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) return false;
    for (int s : chosen) {
      if (s < 0 || s >= instance.num_servers() || !instance.find_edge(c, s)) return false;
    }
  }
  return true;
}

}  // namespace loadbal

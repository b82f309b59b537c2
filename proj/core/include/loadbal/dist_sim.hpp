#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "loadbal/assignment.hpp"
#include "loadbal/instance.hpp"

namespace loadbal {

enum class Model { kCongest, kLocal };

struct ModelSpec {
  Model model = Model::kCongest;
  int bandwidth_factor = 32;  // c in c * ceil(log2 n) bits

  /// Bits per edge per round; effectively unbounded under LOCAL.
  std::int64_t bandwidth_bits(int n) const;
};

enum class AlgorithmId { kCongestUnweighted, kCongestWeighted, kLocalWeighted, kCongestBackup };

std::string_view to_string(AlgorithmId id);
std::string_view to_string(Model model);
/// Throws InputError on an unknown name.
AlgorithmId parse_algorithm(std::string_view name);
Model parse_model(std::string_view name);

struct PhaseCharge {
  std::string label;
  std::int64_t rounds = 0;
};

struct SimMessage {
  std::int64_t round = 0;
  int edge = 0;
  std::int64_t bits = 0;
};

struct SimTrace {
  int n = 0;
  std::int64_t charged_rounds = 0;  // sum of phase rounds
  std::vector<PhaseCharge> phases;
  std::vector<SimMessage> messages;
};

/// A simulated message exceeded the per-edge bandwidth.
class BandwidthError : public std::runtime_error {
 public:
  BandwidthError(std::int64_t round, int edge, const std::string& what)
      : std::runtime_error(what), round_(round), edge_(edge) {}

  std::int64_t round() const noexcept { return round_; }
  int edge() const noexcept { return edge_; }

 private:
  std::int64_t round_;
  int edge_;
};

struct SimResult {
  AlgorithmId algorithm = AlgorithmId::kCongestUnweighted;
  Assignment assignment;             // empty for backup
  MultiAssignment multi_assignment;  // backup only
  SimTrace trace;
  int n_expanded = 0;  // local-weighted only
};

/// Runs the solver and charges every matching-primitive call: k^3 ceil(log2 n)
/// rounds under CONGEST, k^2 ceil(log2 n) under LOCAL where the B-loop runs in
/// parallel. Weight classes always run in parallel. The final assignment is
/// announced with one ceil(log2 n)-bit message per assigned edge in the round
/// after the last charged one.
SimResult run_simulation(const Instance& instance, AlgorithmId algorithm, const ModelSpec& model,
                         std::uint64_t seed, int r = 2);

/// True when no (round, edge) pair carries more than the bandwidth.
bool verify_message_budget(const SimTrace& trace, const ModelSpec& model);

/// Closed-form charge of run_simulation for an instance with n vertices.
/// local-weighted needs the expanded vertex count.
std::int64_t round_budget(AlgorithmId algorithm, int n, const ModelSpec& model, int n_expanded = 0);

}  // namespace loadbal

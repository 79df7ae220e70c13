#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssspx/block_structure.hpp"
#include "ssspx/graph.hpp"
#include "ssspx/labels.hpp"

namespace ssspx {

class SourceOutOfRange : public std::out_of_range {
 public:
  SourceOutOfRange(Vertex source, std::uint32_t n)
      : std::out_of_range("source " + std::to_string(source) + " out of range for " +
                          std::to_string(n) + " vertices") {}
};

// Raised by debug-mode checks when a recursion frame breaks its contract.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolverConfig {
  std::optional<std::uint32_t> force_t;
  std::optional<std::uint32_t> force_k;
  std::optional<std::uint32_t> force_delta;
  bool allow_fallback = true;
  bool debug_checks = false;
  // Frame-level oracle comparisons run only when the reduced graph is this small.
  std::uint32_t frame_check_limit = 4096;
};

struct SolveParams {
  bool fallback = false;
  std::string fallback_reason;  // empty unless fallback
  std::uint32_t delta = 3;
  std::uint32_t t = 2;
  std::uint32_t k = 1;
  std::uint32_t l_max = 0;  // set from the reduced vertex count by solve()

  // Saturating 64-bit level sizes.
  std::uint64_t block_size(std::uint32_t level) const;  // M(l) = t * 2^((l-1)t), M(0) = 1
  std::uint64_t u_cap(std::uint32_t level) const;       // t^3 * 2^(lt)
  std::uint64_t s_cap(std::uint32_t level) const;       // t^2 * 2^(lt)
};

SolveParams choose_params(std::uint64_t n, std::uint64_t m, const SolverConfig& config = {});

// ceil(log2(n) / t), 0 for n <= 1.
std::uint32_t level_count(std::uint64_t n, std::uint32_t t);

struct ExecStats {
  std::uint64_t relaxations = 0;
  std::uint64_t relaxations_valid = 0;
  std::uint64_t relaxations_equal = 0;
  std::uint64_t direct_inserts = 0;
  std::uint64_t max_direct_per_edge = 0;  // debug mode only
  std::uint64_t pulls = 0;
  std::uint64_t inserts = 0;
  std::uint64_t merges = 0;
  std::uint64_t find_pivots_calls = 0;
  std::uint64_t pivot_reselections = 0;
  std::uint64_t base_case_calls = 0;
  std::uint64_t frames = 0;
  std::uint64_t stale_pulled = 0;       // pulled keys already settled in the frame
  std::uint64_t skipped_recursions = 0;  // pulls whose keys were all stale
  std::uint64_t comparisons = 0;
  std::uint64_t additions = 0;
  std::uint64_t heap_ops = 0;
  std::uint64_t frame_checks = 0;  // frames verified against the oracle
  std::uint32_t max_depth = 0;
  std::vector<std::uint64_t> full_per_level;
  std::vector<std::uint64_t> partial_per_level;
  double max_partial_ratio = 0.0;  // largest |U| / U_cap(l) seen at a partial return
};

struct SolveResult {
  std::vector<double> dist;  // +inf for unreachable
  ExecStats stats;
  SolveParams params;
  std::uint32_t reduced_n = 0;
  std::uint64_t reduced_m = 0;
};

// Distances from `source`. Falls back to plain Dijkstra when the parameter
// rules say so (unless disabled in `config`).
SolveResult solve(const Graph& g, Vertex source, const SolverConfig& config = {});

struct OracleResult;

// Outcome of one recursive call, exposed for tests.
struct FrameResult {
  Bound b_prime;
  std::vector<Vertex> u;
  std::vector<KeyValue> d;  // what the call left in its block structure
  bool full = false;
  ExecStats stats;
};

// Runs a single call at `level` on `g` (assumed already degree-bounded) with
// labels preset for every vertex of `s`. With `oracle` set and debug checks on,
// every nested frame is verified against it.
FrameResult run_frame(const Graph& g, const SolveParams& params, const SolverConfig& config,
                      LabelStore& labels, const Bound& bound, std::vector<Vertex> s,
                      std::uint32_t level, const OracleResult* oracle = nullptr);

// The Dijkstra used by the fallback path, with the same counters.
SolveResult solve_dijkstra(const Graph& g, Vertex source);

}  // namespace ssspx

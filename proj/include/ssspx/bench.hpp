#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssspx/generator.hpp"
#include "ssspx/solver.hpp"

namespace ssspx {

struct BenchRecord {
  GenSpec spec;
  std::uint64_t m_actual = 0;
  std::uint32_t repetition = 0;
  SolveParams params;
  std::uint32_t reduced_n = 0;
  std::uint64_t reduced_m = 0;
  double wall_ms = 0.0;
  ExecStats stats;
  bool verified = false;
  bool oracle_match = false;
};

struct BenchOptions {
  std::uint32_t repetitions = 1;
  bool verify = true;
  Vertex source = 0;
  SolverConfig config;
};

std::vector<BenchRecord> run_bench(const std::vector<GenSpec>& matrix, const BenchOptions& options);

// Fixed column order; see csv_columns().
const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_json(std::ostream& out, const std::vector<BenchRecord>& records);

nlohmann::json to_json(const ExecStats& stats);
nlohmann::json to_json(const SolveParams& params);
nlohmann::json to_json(const BenchRecord& record);

// True iff both vectors agree bit-for-bit, with +inf marking unreachable.
bool same_distances(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ssspx

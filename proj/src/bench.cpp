#include "ssspx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <ostream>

#include "ssspx/oracle.hpp"

namespace ssspx {

bool same_distances(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<BenchRecord> run_bench(const std::vector<GenSpec>& matrix,
                                   const BenchOptions& options) {
  std::vector<BenchRecord> records;
  for (const GenSpec& spec : matrix) {
    const Graph g = generate(spec);
    const Vertex source = std::min<Vertex>(options.source, g.n() - 1);
    std::vector<double> expected;
    if (options.verify) {
      const OracleResult o = dijkstra(g, source);
      expected.resize(g.n());
      for (Vertex v = 0; v < g.n(); ++v) expected[v] = o.labels[v].length;
    }
    for (std::uint32_t rep = 0; rep < options.repetitions; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      SolveResult r = solve(g, source, options.config);
      const auto stop = std::chrono::steady_clock::now();
      BenchRecord rec;
      rec.spec = spec;
      rec.m_actual = g.m();
      rec.repetition = rep;
      rec.params = r.params;
      rec.reduced_n = r.reduced_n;
      rec.reduced_m = r.reduced_m;
      rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      rec.stats = std::move(r.stats);
      rec.verified = options.verify;
      rec.oracle_match = options.verify && same_distances(r.dist, expected);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "family",     "n",          "m",           "weights",           "seed",
      "rep",        "fallback",   "t",           "k",                 "delta",
      "l_max",      "reduced_n",  "reduced_m",   "wall_ms",           "relaxations",
      "relaxations_valid",        "direct_inserts", "pulls",          "inserts",
      "merges",     "find_pivots_calls",         "comparisons",       "additions",
      "work_per_edge",            "verified",    "oracle_match"};
  return cols;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const BenchRecord& r : records) {
    const ExecStats& s = r.stats;
    const double per_edge =
        r.m_actual == 0 ? 0.0
                        : static_cast<double>(s.comparisons + s.additions) /
                              static_cast<double>(r.m_actual);
    out << to_string(r.spec.family) << ',' << r.spec.n << ',' << r.m_actual << ','
        << to_string(r.spec.weights) << ',' << r.spec.seed << ',' << r.repetition << ','
        << (r.params.fallback ? 1 : 0) << ',' << r.params.t << ',' << r.params.k << ','
        << r.params.delta << ',' << r.params.l_max << ',' << r.reduced_n << ',' << r.reduced_m
        << ',' << r.wall_ms << ',' << s.relaxations << ',' << s.relaxations_valid << ','
        << s.direct_inserts << ',' << s.pulls << ',' << s.inserts << ',' << s.merges << ','
        << s.find_pivots_calls << ',' << s.comparisons << ',' << s.additions << ',' << per_edge
        << ',' << (r.verified ? 1 : 0) << ',' << (r.oracle_match ? 1 : 0) << '\n';
  }
}

nlohmann::json to_json(const ExecStats& s) {
  return {
      {"relaxations", s.relaxations},
      {"relaxations_valid", s.relaxations_valid},
      {"relaxations_equal", s.relaxations_equal},
      {"direct_inserts", s.direct_inserts},
      {"max_direct_per_edge", s.max_direct_per_edge},
      {"pulls", s.pulls},
      {"inserts", s.inserts},
      {"merges", s.merges},
      {"find_pivots_calls", s.find_pivots_calls},
      {"pivot_reselections", s.pivot_reselections},
      {"base_case_calls", s.base_case_calls},
      {"frames", s.frames},
      {"stale_pulled", s.stale_pulled},
      {"skipped_recursions", s.skipped_recursions},
      {"comparisons", s.comparisons},
      {"additions", s.additions},
      {"heap_ops", s.heap_ops},
      {"frame_checks", s.frame_checks},
      {"max_depth", s.max_depth},
      {"full_per_level", s.full_per_level},
      {"partial_per_level", s.partial_per_level},
      {"max_partial_ratio", s.max_partial_ratio},
  };
}

nlohmann::json to_json(const SolveParams& p) {
  return {{"fallback", p.fallback}, {"fallback_reason", p.fallback_reason},
          {"t", p.t},               {"k", p.k},
          {"delta", p.delta},       {"l_max", p.l_max}};
}

nlohmann::json to_json(const BenchRecord& r) {
  return {{"family", to_string(r.spec.family)},
          {"n", r.spec.n},
          {"m", r.m_actual},
          {"weights", to_string(r.spec.weights)},
          {"seed", r.spec.seed},
          {"rep", r.repetition},
          {"params", to_json(r.params)},
          {"reduced_n", r.reduced_n},
          {"reduced_m", r.reduced_m},
          {"wall_ms", r.wall_ms},
          {"stats", to_json(r.stats)},
          {"verified", r.verified},
          {"oracle_match", r.oracle_match}};
}

void write_json(std::ostream& out, const std::vector<BenchRecord>& records) {
  nlohmann::json doc = nlohmann::json::array();
  for (const BenchRecord& r : records) doc.push_back(to_json(r));
  out << doc.dump(2) << '\n';
}

}  // namespace ssspx

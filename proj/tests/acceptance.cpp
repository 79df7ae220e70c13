// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. All thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ssspx/bench.hpp"
#include "ssspx/generator.hpp"
#include "ssspx/graph.hpp"
#include "ssspx/oracle.hpp"
#include "ssspx/solver.hpp"
#include "ssspx/tree_partition.hpp"
#include "support/block_model.hpp"
#include "support/corpus.hpp"
#include "support/tree_check.hpp"

namespace {

using namespace ssspx;
using Clock = std::chrono::steady_clock;

// Criterion 1
constexpr int kOracleGraphs = 1200;
constexpr std::uint32_t kOracleMaxN = 5000;
constexpr std::uint64_t kOracleMaxFactor = 8;
constexpr double kOracleSeconds = 60.0;
// Criterion 2
constexpr std::uint32_t kDeskN = 100000;
constexpr std::uint64_t kDeskM = 400000;
constexpr double kDeskSeconds = 10.0;
// Criterion 3
constexpr int kModelSequences = 10000;
constexpr std::size_t kModelMaxLength = 1000;
constexpr std::size_t kModelBlockSizes[] = {2, 4, 8, 16, 64};
// Criterion 4
constexpr int kTrees = 1000;
constexpr std::uint32_t kTreeMaxN = 100000;
constexpr std::uint32_t kTreeMaxS = 64;
constexpr std::uint64_t kTreeOpsPerVertex = 16;  // audited constant c
// Criterion 5: direct-insert relaxations per edge over a whole run.
constexpr std::uint64_t kMaxDirectPerEdge = 1;
constexpr int kLargeDebugGraphs = 60;
constexpr std::uint32_t kLargeDebugMaxN = 5000;
// Criterion 6
constexpr std::uint32_t kDeltas[] = {3, 4, 5};
constexpr int kReductionGraphs = 150;
constexpr std::uint32_t kReductionMaxN = 500;
// Criterion 7
constexpr int kFrameGraphs = 240;
constexpr std::uint32_t kFrameMaxN = 200;
// Criterion 8
constexpr int kScalingMinExp = 10;
constexpr int kScalingMaxExp = 20;
constexpr const char* kScalingCsv = "scaling.csv";

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string first_mismatch(const Graph& g, const OracleResult& o, const SolveResult& r) {
  for (Vertex v = 0; v < g.n(); ++v) {
    const double want = o.labels[v].length;
    if (!same_distances({r.dist[v]}, {want})) {
      std::ostringstream os;
      os << "vertex " << v << ": got " << r.dist[v] << ", oracle " << want;
      return os.str();
    }
  }
  return {};
}

Outcome oracle_equivalence() {
  SplitMix64 rng(0xC1);
  const auto start = Clock::now();
  std::vector<GenSpec> specs;
  // Edge cases first.
  for (auto [n, m] : {std::pair<std::uint32_t, std::uint64_t>{1, 0}, {2, 0}, {2, 1}, {3, 6},
                      {kOracleMaxN, 0}, {kOracleMaxN, kOracleMaxFactor * kOracleMaxN}}) {
    GenSpec s;
    s.n = n;
    s.m = m;
    s.seed = rng.next();
    specs.push_back(s);
  }
  while (specs.size() < static_cast<std::size_t>(kOracleGraphs)) {
    const auto kind = static_cast<WeightKind>(specs.size() % 3);
    specs.push_back(testing::random_spec(rng, 1, kOracleMaxN, kOracleMaxFactor, kind));
  }
  std::size_t bmssp_runs = 0;
  std::size_t unreachable = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Graph g = generate(specs[i]);
    const Vertex src = static_cast<Vertex>(rng.below(g.n()));
    const OracleResult o = dijkstra(g, src);
    unreachable += g.n() - o.order.size();
    SolverConfig recursive;
    recursive.allow_fallback = false;
    if (i % 3 == 1) recursive.force_t = 2;
    if (i % 3 == 2) recursive.force_t = 3;
    for (const SolverConfig& cfg : {SolverConfig{}, recursive}) {
      const SolveResult r = solve(g, src, cfg);
      bmssp_runs += r.params.fallback ? 0 : 1;
      if (const std::string bad = first_mismatch(g, o, r); !bad.empty()) {
        return {false, "graph " + std::to_string(i) + " (" + to_string(specs[i].family) +
                           " n=" + std::to_string(g.n()) + "): " + bad};
      }
    }
  }
  const double secs = seconds_since(start);
  std::ostringstream os;
  os << specs.size() << " graphs, " << bmssp_runs << " recursive runs, " << unreachable
     << " unreachable vertices, " << secs << " s (limit " << kOracleSeconds << " s)";
  return {secs < kOracleSeconds, os.str()};
}

Outcome desk_scale() {
  GenSpec spec;
  spec.n = kDeskN;
  spec.m = kDeskM;
  spec.seed = 2024;
  const Graph g = generate(spec);
  SolverConfig cfg;
  cfg.allow_fallback = false;
  const auto start = Clock::now();
  const SolveResult r = solve(g, 0, cfg);
  const double secs = seconds_since(start);
  const OracleResult o = dijkstra(g, 0);
  const std::string bad = first_mismatch(g, o, r);
  const auto start_default = Clock::now();
  const SolveResult d = solve(g, 0);
  const double secs_default = seconds_since(start_default);
  std::ostringstream os;
  os << "recursive path t=" << r.params.t << " k=" << r.params.k << " delta=" << r.params.delta
     << ": " << secs << " s (limit " << kDeskSeconds << " s)"
     << (bad.empty() ? ", exact match" : ", mismatch at " + bad) << "; default path ("
     << (d.params.fallback ? "dijkstra" : "recursive") << ") " << secs_default << " s";
  const bool default_ok = first_mismatch(g, o, d).empty();
  return {secs < kDeskSeconds && bad.empty() && default_ok, os.str()};
}

Outcome model_equivalence() {
  SplitMix64 rng(0xC3);
  std::size_t ops = 0;
  std::size_t pulls = 0;
  std::size_t merges = 0;
  for (int i = 0; i < kModelSequences; ++i) {
    const std::size_t m = kModelBlockSizes[i % std::size(kModelBlockSizes)];
    const std::size_t length = 1 + rng.below(kModelMaxLength);
    const auto rep = testing::run_model_sequence(rng.next(), m, length);
    if (!rep.failure.empty()) return {false, rep.failure};
    ops += rep.ops;
    pulls += rep.pulls;
    merges += rep.merges;
  }
  std::ostringstream os;
  os << kModelSequences << " sequences, " << ops << " ops (" << pulls << " pulls, " << merges
     << " merges), size windows checked after every op";
  return {true, os.str()};
}

Outcome tree_partition() {
  using testing::TreeShape;
  const TreeShape shapes[] = {TreeShape::random_recursive, TreeShape::path, TreeShape::star,
                              TreeShape::caterpillar, TreeShape::binary};
  SplitMix64 rng(0xC4);
  double worst_ratio = 0;
  std::uint64_t total_n = 0;
  for (int i = 0; i < kTrees; ++i) {
    const std::uint32_t s = 2 + static_cast<std::uint32_t>(rng.below(kTreeMaxS - 1));
    // Log-uniform sizes in [s, kTreeMaxN], plus a few at the maximum.
    std::uint32_t n = static_cast<std::uint32_t>(
        s * std::exp(rng.real() * std::log(static_cast<double>(kTreeMaxN) / s)));
    if (i % 100 == 0) n = kTreeMaxN;
    n = std::clamp(n, s, kTreeMaxN);
    const RootedTree t = testing::make_tree(shapes[i % 5], n, rng.next());
    const TreePartition p = partition_tree(t, s);
    if (const std::string bad = testing::check_partition(t, s, p); !bad.empty()) {
      return {false, "tree " + std::to_string(i) + " n=" + std::to_string(n) +
                         " s=" + std::to_string(s) + ": " + bad};
    }
    const double ratio = static_cast<double>(p.ops) / n;
    worst_ratio = std::max(worst_ratio, ratio);
    if (p.ops > kTreeOpsPerVertex * n) {
      return {false, "tree " + std::to_string(i) + " used " + std::to_string(p.ops) + " ops for n=" +
                         std::to_string(n)};
    }
    total_n += n;
  }
  std::ostringstream os;
  os << kTrees << " trees, " << total_n << " vertices, worst ops/n = " << worst_ratio
     << " (c = " << kTreeOpsPerVertex << ")";
  return {true, os.str()};
}

struct DebugTally {
  std::size_t runs = 0;
  std::uint64_t worst_direct = 0;
  std::uint64_t frame_checks = 0;
  std::string failure;
};

// Debug-mode solves; frame-level oracle checks apply when the reduced graph
// is small enough.
void debug_runs(SplitMix64& rng, int count, std::uint32_t min_n, std::uint32_t max_n,
                bool require_frame_checks, DebugTally& tally) {
  for (int i = 0; i < count && tally.failure.empty(); ++i) {
    const GenSpec spec =
        testing::random_spec(rng, min_n, max_n, 6, static_cast<WeightKind>(i % 3));
    const Graph g = generate(spec);
    SolverConfig cfg;
    cfg.allow_fallback = false;
    cfg.debug_checks = true;
    cfg.force_t = 2 + static_cast<std::uint32_t>(i % 3);
    if (i % 4 == 3) cfg.force_delta = 4;
    if (i % 5 == 4) cfg.force_k = 1 + static_cast<std::uint32_t>(rng.below(4));
    const Vertex src = static_cast<Vertex>(rng.below(g.n()));
    std::ostringstream where;
    where << "graph " << i << " (" << to_string(spec.family) << " n=" << g.n() << " m=" << g.m()
          << " t=" << *cfg.force_t << ")";
    try {
      const SolveResult r = solve(g, src, cfg);
      const OracleResult o = dijkstra(g, src);
      if (const std::string bad = first_mismatch(g, o, r); !bad.empty()) {
        tally.failure = where.str() + ": " + bad;
        return;
      }
      if (require_frame_checks && r.stats.frame_checks == 0) {
        tally.failure = where.str() + ": no frame was checked";
        return;
      }
      tally.worst_direct = std::max(tally.worst_direct, r.stats.max_direct_per_edge);
      tally.frame_checks += r.stats.frame_checks;
      ++tally.runs;
    } catch (const InvariantViolation& e) {
      tally.failure = where.str() + ": " + e.what();
    }
  }
}

Outcome frame_invariants(DebugTally& tally) {
  SplitMix64 rng(0xC7);
  debug_runs(rng, kFrameGraphs, 2, kFrameMaxN, true, tally);
  if (!tally.failure.empty()) return {false, tally.failure};
  std::ostringstream os;
  os << tally.runs << " graphs (n <= " << kFrameMaxN << "), " << tally.frame_checks
     << " frames verified against the oracle";
  return {tally.runs >= static_cast<std::size_t>(kFrameGraphs), os.str()};
}

Outcome once_per_edge(DebugTally tally) {
  SplitMix64 rng(0xC5);
  debug_runs(rng, kLargeDebugGraphs, kFrameMaxN, kLargeDebugMaxN, false, tally);
  if (!tally.failure.empty()) return {false, tally.failure};
  std::ostringstream os;
  os << tally.runs << " debug runs, worst direct-insert count per edge = " << tally.worst_direct;
  return {tally.worst_direct <= kMaxDirectPerEdge, os.str()};
}

Outcome degree_reduction() {
  SplitMix64 rng(0xC6);
  std::size_t checks = 0;
  for (int i = 0; i < kReductionGraphs; ++i) {
    const GenSpec spec =
        testing::random_spec(rng, 1, kReductionMaxN, 8, static_cast<WeightKind>(i % 3));
    const Graph g = generate(spec);
    const Vertex src = static_cast<Vertex>(rng.below(g.n()));
    const OracleResult want = dijkstra(g, src);
    for (const std::uint32_t delta : kDeltas) {
      const ReducedGraph r = reduce_degree(g, delta);
      const DegreeSummary ds = degree_summary(r.inner);
      std::ostringstream where;
      where << "graph " << i << " delta=" << delta;
      if (ds.max_in > delta || ds.max_out > delta) {
        return {false, where.str() + ": degree above bound"};
      }
      if (r.inner.n() > 2 * g.m() / (delta - 2) + g.n()) {
        return {false, where.str() + ": too many inner vertices"};
      }
      const OracleResult got = dijkstra(r, src);
      for (Vertex v = 0; v < g.n(); ++v) {
        const double a = want.labels[v].length;
        const double b = got.labels[r.rep[v]].length;
        if (!same_distances({a}, {b})) {
          return {false, where.str() + ": vertex " + std::to_string(v) + " distance changed"};
        }
        ++checks;
      }
    }
  }
  std::ostringstream os;
  os << kReductionGraphs << " graphs x " << std::size(kDeltas) << " deltas, " << checks
     << " per-vertex distance checks";
  return {true, os.str()};
}

Outcome scaling_trend() {
  std::vector<GenSpec> matrix;
  for (int e = kScalingMinExp; e <= kScalingMaxExp; ++e) {
    GenSpec spec;
    spec.family = Family::path;
    spec.n = 1u << e;
    spec.m = 2ull * spec.n;
    spec.seed = 8;
    matrix.push_back(spec);
  }
  BenchOptions opts;
  opts.config.allow_fallback = false;
  const auto records = run_bench(matrix, opts);
  std::ofstream csv(kScalingCsv);
  write_csv(csv, records);
  auto per_edge = [](const BenchRecord& r) {
    return static_cast<double>(r.stats.comparisons + r.stats.additions) /
           static_cast<double>(r.m_actual);
  };
  for (const auto& r : records) {
    if (!r.oracle_match) return {false, "oracle mismatch at n=" + std::to_string(r.spec.n)};
  }
  const double growth = per_edge(records.back()) / per_edge(records.front());
  const double limit = kScalingMaxExp / 4.0;
  std::ostringstream os;
  os << "(cmp+add)/m from " << per_edge(records.front()) << " at n=2^" << kScalingMinExp << " to "
     << per_edge(records.back()) << " at n=2^" << kScalingMaxExp << ", growth " << growth
     << " (limit " << limit << "); written to " << kScalingCsv;
  return {growth < limit, os.str()};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  DebugTally frames;
  report(1, "oracle-equivalence", oracle_equivalence);
  report(2, "desk-scale", desk_scale);
  report(3, "block-structure-model", model_equivalence);
  report(4, "tree-partition", tree_partition);
  report(7, "frame-invariants", [&] { return frame_invariants(frames); });
  report(5, "once-per-edge", [&] { return once_per_edge(frames); });
  report(6, "degree-reduction", degree_reduction);
  report(8, "scaling-trend", scaling_trend);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

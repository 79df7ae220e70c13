#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ssspx/bench.hpp"
#include "ssspx/dimacs.hpp"
#include "ssspx/generator.hpp"
#include "ssspx/oracle.hpp"
#include "ssspx/solver.hpp"

namespace ssspx::cli {

namespace {

struct Overrides {
  std::optional<std::uint32_t> force_t;
  std::optional<std::uint32_t> force_k;
  std::optional<std::uint32_t> force_delta;
  bool no_fallback = false;
  bool debug_checks = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--force-t", force_t, "Override t");
    cmd->add_option("--force-k", force_k, "Override k");
    cmd->add_option("--force-delta", force_delta, "Override the degree bound (>= 3)");
    cmd->add_flag("--no-fallback", no_fallback, "Never fall back to plain Dijkstra");
    cmd->add_flag("--debug-checks", debug_checks,
                  "Enable invariant checks (also SSSPX_DEBUG_CHECKS=1)");
  }

  SolverConfig config() const {
    SolverConfig c;
    c.force_t = force_t;
    c.force_k = force_k;
    c.force_delta = force_delta;
    c.allow_fallback = !no_fallback;
    const char* env = std::getenv("SSSPX_DEBUG_CHECKS");
    c.debug_checks = debug_checks || (env != nullptr && std::string(env) == "1");
    return c;
  }
};

std::string format_distance(double d) {
  return d == std::numeric_limits<double>::infinity() ? "inf" : format_weight(d);
}

Vertex internal_source(std::uint64_t one_based, const Graph& g) {
  if (one_based < 1 || one_based > g.n()) {
    throw SourceOutOfRange(static_cast<Vertex>(std::min<std::uint64_t>(one_based, kNoVertex)),
                           g.n());
  }
  return static_cast<Vertex>(one_based - 1);
}

void print_stats_line(std::ostream& err, const SolveResult& r) {
  const ExecStats& s = r.stats;
  err << "stats:";
  if (r.params.fallback) {
    err << " path=dijkstra reason=\"" << r.params.fallback_reason << '"';
  } else {
    err << " path=bmssp t=" << r.params.t << " k=" << r.params.k << " delta=" << r.params.delta
        << " l_max=" << r.params.l_max << " reduced_n=" << r.reduced_n;
  }
  err << " relaxations=" << s.relaxations << " pulls=" << s.pulls << " inserts=" << s.inserts
      << " merges=" << s.merges << " comparisons=" << s.comparisons
      << " additions=" << s.additions << '\n';
}

int cmd_solve(const std::string& input, std::uint64_t source, bool json, const Overrides& ov,
              std::ostream& out, std::ostream& err) {
  const Graph g = read_dimacs_file(input);
  const Vertex s = internal_source(source, g);
  const SolveResult r = solve(g, s, ov.config());
  if (json) {
    nlohmann::json dist = nlohmann::json::array();
    for (const double d : r.dist) {
      if (d == std::numeric_limits<double>::infinity()) {
        dist.push_back(nullptr);
      } else {
        dist.push_back(d);
      }
    }
    nlohmann::json doc = {{"source", source},
                          {"n", g.n()},
                          {"m", g.m()},
                          {"distances", dist},
                          {"stats", to_json(r.stats)},
                          {"params", to_json(r.params)}};
    out << doc.dump(2) << '\n';
  } else {
    for (Vertex v = 0; v < g.n(); ++v) out << v + 1 << ' ' << format_distance(r.dist[v]) << '\n';
    print_stats_line(err, r);
  }
  return 0;
}

int cmd_verify(const std::string& input, std::uint64_t source, bool fault_inject,
               const Overrides& ov, std::ostream& out) {
  const Graph g = read_dimacs_file(input);
  const Vertex s = internal_source(source, g);
  SolveResult r = solve(g, s, ov.config());
  if (fault_inject && !r.dist.empty()) {
    double& victim = r.dist.back();
    victim = victim == std::numeric_limits<double>::infinity() ? 0.0 : victim * 2 + 1;
  }
  const OracleResult o = dijkstra(g, s);
  std::size_t mismatches = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const double expected = o.labels[v].length;
    if (same_distances({r.dist[v]}, {expected})) continue;
    ++mismatches;
    out << "mismatch vertex " << v + 1 << ": solver " << format_distance(r.dist[v])
        << ", oracle " << format_distance(expected) << '\n';
  }
  if (mismatches > 0) {
    out << "FAIL " << mismatches << " of " << g.n() << " vertices differ\n";
    return 1;
  }
  out << "OK " << g.n() << " vertices match\n";
  return 0;
}

int cmd_gen(const GenSpec& spec, const std::string& path, std::ostream& out) {
  const Graph g = generate(spec);
  const std::string comment = "ssspx gen family=" + to_string(spec.family) +
                              " n=" + std::to_string(spec.n) + " m=" + std::to_string(spec.m) +
                              " weights=" + to_string(spec.weights) +
                              " seed=" + std::to_string(spec.seed);
  if (path.empty() || path == "-") {
    write_dimacs(out, g, comment);
  } else {
    write_dimacs_file(path, g, comment);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-source shortest paths on non-negative directed graphs"};
  app.name("ssspx");
  app.require_subcommand(1);

  Overrides ov;

  std::string input;
  std::uint64_t source = 1;
  bool json = false;
  auto* solve_cmd = app.add_subcommand("solve", "Print distances from a source");
  solve_cmd->add_option("input", input, "DIMACS .gr file")->required();
  solve_cmd->add_option("-s,--source", source, "1-based source vertex")->capture_default_str();
  solve_cmd->add_flag("--json", json, "Emit a JSON document");
  ov.attach(solve_cmd);

  bool fault_inject = false;
  auto* verify_cmd = app.add_subcommand("verify", "Compare the solver with reference Dijkstra");
  verify_cmd->add_option("input", input, "DIMACS .gr file")->required();
  verify_cmd->add_option("-s,--source", source, "1-based source vertex")->capture_default_str();
  verify_cmd->add_flag("--fault-inject", fault_inject)->group("");
  ov.attach(verify_cmd);

  std::string family = "random-m";
  std::uint32_t n = 1000;
  std::uint64_t m = 4000;
  std::string weights = "int";
  std::uint64_t seed = 1;
  std::string output;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph in DIMACS format");
  gen_cmd->add_option("--family", family,
                      "random-m | path | grid | layered | star-cycle")->capture_default_str();
  gen_cmd->add_option("-n,--n", n, "Vertex count")->capture_default_str();
  gen_cmd->add_option("-m,--m", m, "Edge count")->capture_default_str();
  gen_cmd->add_option("--weights", weights, "int[:LO:HI] | real[:LO:HI] | zero[:P[:LO:HI]]")
      ->capture_default_str();
  gen_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  std::vector<std::string> families{"random-m"};
  std::vector<std::uint32_t> sizes{1024};
  std::vector<double> m_factors{4.0};
  std::vector<std::string> weight_models{"int"};
  std::uint32_t reps = 1;
  bool no_verify = false;
  std::string json_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a generator x solver matrix");
  bench_cmd->add_option("--family", families, "Families (repeatable)");
  bench_cmd->add_option("-n,--n", sizes, "Vertex counts (repeatable)");
  bench_cmd->add_option("--m-factor", m_factors, "m = factor * n (repeatable)");
  bench_cmd->add_option("--weights", weight_models, "Weight models (repeatable)");
  bench_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  bench_cmd->add_option("--reps", reps, "Repetitions per cell")->capture_default_str();
  bench_cmd->add_flag("--no-verify", no_verify, "Skip the oracle comparison");
  bench_cmd->add_option("-o,--output", output, "CSV output file (default stdout)");
  bench_cmd->add_option("--json", json_out, "Also write records as JSON to this file");
  ov.attach(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve_cmd) return cmd_solve(input, source, json, ov, out, err);
    if (*verify_cmd) return cmd_verify(input, source, fault_inject, ov, out);
    if (*gen_cmd) {
      GenSpec spec;
      spec.family = parse_family(family);
      spec.n = n;
      spec.m = m;
      spec.weights = parse_weights(weights);
      spec.seed = seed;
      return cmd_gen(spec, output, out);
    }
    if (*bench_cmd) {
      std::vector<GenSpec> matrix;
      for (const auto& fam : families) {
        for (const auto size : sizes) {
          for (const double factor : m_factors) {
            for (const auto& wm : weight_models) {
              GenSpec spec;
              spec.family = parse_family(fam);
              spec.n = size;
              spec.m = static_cast<std::uint64_t>(std::llround(factor * size));
              spec.weights = parse_weights(wm);
              spec.seed = seed;
              matrix.push_back(spec);
            }
          }
        }
      }
      BenchOptions opts;
      opts.repetitions = reps;
      opts.verify = !no_verify;
      opts.config = ov.config();
      const auto records = run_bench(matrix, opts);
      if (output.empty() || output == "-") {
        write_csv(out, records);
      } else {
        std::ofstream file(output);
        if (!file) throw std::runtime_error("cannot write '" + output + "'");
        write_csv(file, records);
      }
      if (!json_out.empty()) {
        std::ofstream file(json_out);
        if (!file) throw std::runtime_error("cannot write '" + json_out + "'");
        write_json(file, records);
      }
      for (const auto& r : records) {
        if (r.verified && !r.oracle_match) {
          err << "error: oracle mismatch in " << to_string(r.spec.family) << " n=" << r.spec.n
              << '\n';
          return 1;
        }
      }
      return 0;
    }
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    // Parse errors, out-of-range sources, infeasible specs and I/O failures.
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace ssspx::cli

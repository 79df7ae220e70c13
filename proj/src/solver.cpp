#include "ssspx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ssspx/block_structure.hpp"
#include "ssspx/find_pivots.hpp"
#include "ssspx/indexed_heap.hpp"
#include "ssspx/oracle.hpp"

namespace ssspx {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

std::uint64_t sat_pow2(std::uint64_t e) { return e >= 63 ? kSat : (std::uint64_t{1} << e); }

}  // namespace

std::uint64_t SolveParams::block_size(std::uint32_t level) const {
  if (level == 0) return 1;
  return sat_mul(t, sat_pow2(static_cast<std::uint64_t>(level - 1) * t));
}

std::uint64_t SolveParams::u_cap(std::uint32_t level) const {
  const std::uint64_t t3 = sat_mul(sat_mul(t, t), t);
  return sat_mul(t3, sat_pow2(static_cast<std::uint64_t>(level) * t));
}

std::uint64_t SolveParams::s_cap(std::uint32_t level) const {
  return sat_mul(sat_mul(t, t), sat_pow2(static_cast<std::uint64_t>(level) * t));
}

std::uint32_t level_count(std::uint64_t n, std::uint32_t t) {
  if (n <= 1 || t == 0) return 0;
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n)) / t));
}

SolveParams choose_params(std::uint64_t n, std::uint64_t m, const SolverConfig& config) {
  SolveParams p;
  double log_n = n >= 2 ? std::log2(static_cast<double>(n)) : 0.0;
  double loglog_n = log_n > 1.0 ? std::log2(log_n) : 0.0;
  if (!config.allow_fallback) {
    log_n = std::max(log_n, 1.0);
    loglog_n = std::max(loglog_n, 1.0);
  }
  const double density = n > 0 ? static_cast<double>(m) / static_cast<double>(n) : 0.0;

  p.delta = std::max<std::uint32_t>(
      3, static_cast<std::uint32_t>(std::floor(0.25 * std::min(density, loglog_n))));
  if (config.force_delta) p.delta = std::max<std::uint32_t>(3, *config.force_delta);

  p.t = static_cast<std::uint32_t>(std::ceil(std::sqrt(log_n * loglog_n / p.delta)));
  if (config.force_t) p.t = *config.force_t;
  if (!config.allow_fallback || config.force_t) p.t = std::max<std::uint32_t>(p.t, 2);

  p.k = p.t <= 1 ? 1
                 : static_cast<std::uint32_t>(
                       std::ceil(static_cast<double>(p.t) / std::log2(static_cast<double>(p.t))));
  if (config.force_k) p.k = std::max<std::uint32_t>(1, *config.force_k);

  p.l_max = level_count(n, p.t);

  if (config.allow_fallback) {
    if (static_cast<double>(m) >= static_cast<double>(n) * log_n) {
      p.fallback = true;
      p.fallback_reason = "dense: m >= n log2 n";
    } else if (n < 1024) {
      p.fallback = true;
      p.fallback_reason = "small: n < 2^10";
    } else if (p.t < 4) {
      p.fallback = true;
      p.fallback_reason = "t < 4";
    } else if (static_cast<double>(p.delta) > std::log2(static_cast<double>(p.k))) {
      p.fallback = true;
      p.fallback_reason = "delta > log2 k";
    }
  }
  return p;
}

namespace {

struct Frame {
  Bound b_prime;
  std::vector<Vertex> u;
  BlockStructure d;
  bool full;
};

// Dense per-level tags. A frame owns the serial it draws; entries from other
// frames on the same level never match it.
struct LevelTags {
  std::vector<std::uint32_t> group_serial;
  std::vector<std::uint32_t> group_of;
  std::vector<std::uint32_t> u_serial;
  std::uint32_t serial = 0;
};

class Engine {
 public:
  Engine(const Graph& g, const SolveParams& params, const SolverConfig& config, LabelStore& d,
         ExecStats& stats, const OracleResult* oracle)
      : g_(g),
        p_(params),
        debug_(config.debug_checks),
        d_(d),
        stats_(stats),
        oracle_(oracle),
        pivots_(g.n()),
        levels_(params.l_max + 1),
        mark_(g.n(), 0) {
    stats_.full_per_level.assign(params.l_max + 1, 0);
    stats_.partial_per_level.assign(params.l_max + 1, 0);
    if (debug_) direct_count_.assign(g.m(), 0);
  }

  Frame run(const Bound& bound, std::vector<Vertex> s, std::uint32_t level, std::uint32_t depth);

  OpCounter& ops() { return ops_; }

 private:
  Frame base_case(const Bound& bound, std::vector<Vertex> s, std::uint32_t depth);
  Frame recurse(const Bound& bound, std::vector<Vertex> s, std::uint32_t level,
                std::uint32_t depth);

  LevelTags& tags(std::uint32_t level);
  std::uint32_t next_mark();
  RelaxOutcome relax(Vertex u, const Arc& arc, const Bound& bound);

  // Oracle-backed checks, active only when oracle_ is set.
  std::vector<char> chain_meets(const std::vector<char>& good) const;
  void check_entry(const Bound& bound, std::span<const Vertex> s) const;
  void check_pivots(const Bound& bound, std::span<const Vertex> s, const PivotOutput& piv) const;
  void check_return(const Frame& f, const Bound& bound, std::span<const Vertex> s) const;

  const Graph& g_;
  const SolveParams& p_;
  bool debug_;
  LabelStore& d_;
  ExecStats& stats_;
  const OracleResult* oracle_;
  OpCounter ops_;
  PivotScratch pivots_;
  std::vector<LevelTags> levels_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t mark_epoch_ = 0;
  std::vector<std::uint32_t> direct_count_;
};

void violation(const std::string& what) { throw InvariantViolation(what); }

LevelTags& Engine::tags(std::uint32_t level) {
  LevelTags& t = levels_[level];
  if (t.u_serial.empty()) {
    t.group_serial.assign(g_.n(), 0);
    t.group_of.assign(g_.n(), 0);
    t.u_serial.assign(g_.n(), 0);
  }
  if (++t.serial == 0) {
    std::fill(t.group_serial.begin(), t.group_serial.end(), 0);
    std::fill(t.u_serial.begin(), t.u_serial.end(), 0);
    t.serial = 1;
  }
  return t;
}

std::uint32_t Engine::next_mark() {
  if (++mark_epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    mark_epoch_ = 1;
  }
  return mark_epoch_;
}

RelaxOutcome Engine::relax(Vertex u, const Arc& arc, const Bound& bound) {
  ++stats_.relaxations;
  const RelaxOutcome r = d_.relax(u, arc.to, arc.weight, bound, ops_);
  if (r != RelaxOutcome::rejected) ++stats_.relaxations_valid;
  if (r == RelaxOutcome::equal) ++stats_.relaxations_equal;
  return r;
}

Frame Engine::run(const Bound& bound, std::vector<Vertex> s, std::uint32_t level,
                  std::uint32_t depth) {
  ++stats_.frames;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  if (oracle_ != nullptr) check_entry(bound, s);
  std::vector<Vertex> s_copy;
  if (oracle_ != nullptr) s_copy = s;
  Frame f = level == 0 ? base_case(bound, std::move(s), depth)
                       : recurse(bound, std::move(s), level, depth);
  if (oracle_ != nullptr) {
    check_return(f, bound, s_copy);
    ++stats_.frame_checks;
  }
  if (f.full) {
    ++stats_.full_per_level[level];
  } else {
    ++stats_.partial_per_level[level];
    const double cap = static_cast<double>(p_.u_cap(level));
    stats_.max_partial_ratio =
        std::max(stats_.max_partial_ratio, static_cast<double>(f.u.size()) / cap);
  }
  return f;
}

Frame Engine::base_case(const Bound& bound, std::vector<Vertex> s, std::uint32_t) {
  ++stats_.base_case_calls;
  BlockStructure d = BlockStructure::create(1, bound, 0, &ops_, debug_);
  for (const Vertex x : s) {
    ++ops_.comparisons;
    if (less(d_[x], bound)) {
      d.insert(x, d_[x]);
      ++stats_.inserts;
    }
  }
  const std::uint64_t cap = p_.u_cap(0);
  std::vector<Vertex> u_set;
  while (!d.empty() && u_set.size() <= cap) {
    const PullResult pulled = d.pull();
    ++stats_.pulls;
    const Vertex u = pulled.keys.front();
    u_set.push_back(u);
    for (const Arc& arc : g_.out(u)) {
      if (relax(u, arc, bound) != RelaxOutcome::rejected) {
        d.insert(arc.to, d_[arc.to]);
        ++stats_.inserts;
      }
    }
  }
  // The bound is the smallest label still queued: later relaxations may have
  // inserted labels below the separator of the last pull.
  Bound b_prime = d.empty() ? bound : Bound::finite(d.as_base_map()->min_value());
  const bool full = d.empty();
  return Frame{b_prime, std::move(u_set), std::move(d), full};
}

Frame Engine::recurse(const Bound& bound, std::vector<Vertex> s, std::uint32_t level,
                      std::uint32_t depth) {
  LevelTags& tg = tags(level);
  const std::uint32_t serial = tg.serial;
  const std::uint64_t m_size = p_.block_size(level);
  BlockStructure d = BlockStructure::create(
      static_cast<std::size_t>(std::min<std::uint64_t>(m_size, std::numeric_limits<std::size_t>::max())),
      bound, 0, &ops_, debug_);

  const PivotOutput piv = find_pivots(bound, s, p_.k, d_, g_, pivots_, ops_);
  ++stats_.find_pivots_calls;
  stats_.heap_ops += piv.heap_ops;
  stats_.relaxations += piv.relaxations;
  stats_.relaxations_valid += piv.valid_relaxations;
  if (oracle_ != nullptr) check_pivots(bound, s, piv);

  const std::size_t p = piv.groups.size();
  std::vector<Vertex> pivot(p);
  std::vector<std::uint32_t> live(p);
  std::vector<char> queued(p, 0);
  std::vector<std::uint32_t> reselect;

  auto is_member = [&](Vertex v) { return tg.group_serial[v] == serial; };
  auto select_min = [&](std::uint32_t j) {
    Vertex best = kNoVertex;
    for (const Vertex v : piv.groups[j].members) {
      if (!is_member(v)) continue;
      if (best == kNoVertex) {
        best = v;
        continue;
      }
      ++ops_.comparisons;
      if (less(d_[v], d_[best])) best = v;
    }
    return best;
  };

  Bound b_prime = bound;
  for (std::uint32_t j = 0; j < p; ++j) {
    for (const Vertex v : piv.groups[j].members) {
      tg.group_serial[v] = serial;
      tg.group_of[v] = j;
    }
    live[j] = static_cast<std::uint32_t>(piv.groups[j].members.size());
    pivot[j] = select_min(j);
    d.insert(pivot[j], d_[pivot[j]]);
    ++stats_.inserts;
    ++ops_.comparisons;
    if (less(d_[pivot[j]], b_prime)) b_prime = Bound::finite(d_[pivot[j]]);
  }

  const std::uint64_t u_cap = p_.u_cap(level);
  std::vector<Vertex> u_set;
  while (u_set.size() <= u_cap && !d.empty()) {
    PullResult pulled = d.pull();
    ++stats_.pulls;
    const Bound b_i = pulled.separator;
    if (debug_ && (less(b_i, b_prime) || less(bound, b_i))) {
      violation("pulled bound outside [B', B]");
    }

    const std::uint32_t mark = next_mark();
    std::vector<Vertex> s_i;
    s_i.reserve(pulled.keys.size());
    for (const Vertex x : pulled.keys) {
      if (tg.u_serial[x] == serial) {
        ++stats_.stale_pulled;
        continue;
      }
      if (mark_[x] != mark) {
        mark_[x] = mark;
        s_i.push_back(x);
      }
      if (is_member(x) && pivot[tg.group_of[x]] == x) {
        for (const Vertex v : piv.groups[tg.group_of[x]].members) {
          if (!is_member(v) || mark_[v] == mark) continue;
          ++ops_.comparisons;
          if (less(d_[v], b_i)) {
            mark_[v] = mark;
            s_i.push_back(v);
          }
        }
      }
    }
    if (s_i.empty()) {
      ++stats_.skipped_recursions;
      b_prime = b_i;
      continue;
    }

    Frame sub = run(b_i, std::move(s_i), level - 1, depth + 1);
    d.merge(std::move(sub.d));
    ++stats_.merges;

    for (const Vertex u : sub.u) {
      if (!is_member(u)) continue;
      const std::uint32_t j = tg.group_of[u];
      tg.group_serial[u] = 0;
      --live[j];
      if (pivot[j] == u && live[j] > 0 && !queued[j]) {
        queued[j] = 1;
        reselect.push_back(j);
      }
    }

    for (const Vertex u : sub.u) {
      for (const Arc& arc : g_.out(u)) {
        const DistLabel cand = extend(d_[u], arc.to, arc.weight);
        if (relax(u, arc, bound) == RelaxOutcome::rejected) continue;
        ++ops_.comparisons;
        if (less(cand, b_i)) continue;
        const Vertex v = arc.to;
        d.insert(v, d_[v]);
        ++stats_.inserts;
        ++stats_.direct_inserts;
        if (debug_) {
          const std::uint64_t c = ++direct_count_[arc.id];
          stats_.max_direct_per_edge = std::max(stats_.max_direct_per_edge, c);
        }
        if (is_member(v)) {
          const std::uint32_t j = tg.group_of[v];
          if (!queued[j]) {
            ++ops_.comparisons;
            if (less(d_[v], d_[pivot[j]])) pivot[j] = v;
          }
        }
      }
    }

    for (const std::uint32_t j : reselect) {
      queued[j] = 0;
      // Later members of U_i may have emptied the group after it was queued.
      if (live[j] == 0) continue;
      pivot[j] = select_min(j);
      d.insert(pivot[j], d_[pivot[j]]);
      ++stats_.inserts;
      ++stats_.pivot_reselections;
    }
    reselect.clear();

    if (debug_ && (less(sub.b_prime, b_prime) || less(b_i, sub.b_prime))) {
      violation("sub-call bound breaks the B' chain");
    }
    b_prime = sub.b_prime;
    for (const Vertex u : sub.u) {
      if (tg.u_serial[u] == serial) {
        if (debug_) violation("sub-call U sets overlap");
        continue;
      }
      tg.u_serial[u] = serial;
      u_set.push_back(u);
    }
  }

  for (const Vertex x : s) {
    ops_.comparisons += 2;
    if (!less(d_[x], b_prime) && less(d_[x], bound)) {
      d.insert(x, d_[x]);
      ++stats_.inserts;
    }
  }

  std::vector<Vertex> w_prime;
  for (const Vertex x : piv.w) {
    if (tg.u_serial[x] == serial) continue;
    ++ops_.comparisons;
    if (less(d_[x], b_prime)) w_prime.push_back(x);
  }
  for (const Vertex u : w_prime) {
    for (const Arc& arc : g_.out(u)) {
      const DistLabel cand = extend(d_[u], arc.to, arc.weight);
      if (relax(u, arc, bound) == RelaxOutcome::rejected) continue;
      ++ops_.comparisons;
      if (less(cand, b_prime)) continue;
      d.insert(arc.to, d_[arc.to]);
      ++stats_.inserts;
    }
  }
  for (const Vertex u : w_prime) {
    tg.u_serial[u] = serial;
    u_set.push_back(u);
  }

  const bool at_bound = b_prime == bound;
  if (debug_ && at_bound && !d.empty()) violation("B' = B but D is not empty");
  const bool full = at_bound && d.empty();
  return Frame{b_prime, std::move(u_set), std::move(d), full};
}

// ----- oracle checks -------------------------------------------------------

// good[v] set => result[v] set for v and every vertex whose canonical chain
// passes through v.
std::vector<char> Engine::chain_meets(const std::vector<char>& good) const {
  std::vector<char> meets(good.size(), 0);
  for (const Vertex v : oracle_->order) {
    const DistLabel& l = oracle_->labels[v];
    meets[v] = good[v] || (!l.is_source() && meets[l.pred]);
  }
  return meets;
}

bool complete(const LabelStore& d, const OracleResult& o, Vertex v) {
  return d.is_set(v) && compare(d[v], o.labels[v]) == Order::equal;
}

void Engine::check_entry(const Bound& bound, std::span<const Vertex> s) const {
  std::vector<char> good(g_.n(), 0);
  for (const Vertex x : s) good[x] = complete(d_, *oracle_, x);
  const auto meets = chain_meets(good);
  for (const Vertex v : true_targets(*oracle_, bound, s)) {
    if (!meets[v]) violation("frame entry: <{}, S> is not a frontier for targets(B, S)");
  }
}

void Engine::check_pivots(const Bound& bound, std::span<const Vertex> s,
                          const PivotOutput& piv) const {
  const auto targets = true_targets(*oracle_, bound, s);
  std::vector<char> good(g_.n(), 0);
  std::vector<char> in_w(g_.n(), 0);
  std::vector<char> is_target(g_.n(), 0);
  for (const Vertex v : targets) is_target[v] = 1;
  for (const Vertex v : piv.w) in_w[v] = 1;
  for (const auto& grp : piv.groups) {
    for (const Vertex v : grp.members) good[v] = complete(d_, *oracle_, v);
    for (const Vertex v : grp.subtree) {
      if (!is_target[v]) violation("pivot tree vertex outside targets(B, S)");
    }
  }
  const auto meets = chain_meets(good);
  for (const Vertex v : targets) {
    const bool settled = in_w[v] && complete(d_, *oracle_, v);
    if (!settled && !meets[v]) violation("<W, P> is not a frontier for targets(B, S)");
  }
}

void Engine::check_return(const Frame& f, const Bound& bound, std::span<const Vertex> s) const {
  for (const Vertex u : f.u) {
    if (!complete(d_, *oracle_, u)) violation("returned vertex is not complete");
    if (!less(d_[u], f.b_prime)) violation("returned vertex is not below B'");
  }
  std::vector<Vertex> u_sorted(f.u.begin(), f.u.end());
  std::sort(u_sorted.begin(), u_sorted.end());
  if (std::adjacent_find(u_sorted.begin(), u_sorted.end()) != u_sorted.end()) {
    violation("returned U has repeats");
  }
  if (u_sorted != true_targets(*oracle_, f.b_prime, s)) violation("U != targets(B', S)");
  if (f.full && !f.d.empty()) violation("full execution left D non-empty");
  if (less(bound, f.b_prime)) violation("B' above B");

  std::vector<char> good(g_.n(), 0);
  for (const KeyValue& kv : f.d.entries()) good[kv.key] = complete(d_, *oracle_, kv.key);
  for (const Vertex u : f.u) good[u] = 1;
  const auto meets = chain_meets(good);
  for (const Vertex v : true_targets(*oracle_, bound, s)) {
    if (!meets[v]) violation("<U, D> is not a frontier for targets(B, S)");
  }
}

}  // namespace

SolveResult solve_dijkstra(const Graph& g, Vertex source) {
  if (source >= g.n()) throw SourceOutOfRange(source, g.n());
  SolveResult out;
  OpCounter ops;
  LabelStore d(g.n());
  d.set_source(source);
  IndexedHeap heap(g.n(), &ops);
  heap.push(source, d[source]);
  const Bound inf = Bound::infinity();
  ExecStats& st = out.stats;
  while (!heap.empty()) {
    const Vertex u = heap.pop().first;
    for (const Arc& arc : g.out(u)) {
      ++st.relaxations;
      const RelaxOutcome r = d.relax(u, arc.to, arc.weight, inf, ops);
      if (r == RelaxOutcome::rejected) continue;
      ++st.relaxations_valid;
      if (r == RelaxOutcome::equal) {
        ++st.relaxations_equal;
        continue;
      }
      heap.push_or_decrease(arc.to, d[arc.to]);
    }
  }
  out.dist.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    out.dist[v] = d.is_set(v) ? d[v].length : std::numeric_limits<double>::infinity();
  }
  st.comparisons = ops.comparisons;
  st.additions = ops.additions;
  st.heap_ops = heap.heap_ops();
  out.reduced_n = g.n();
  out.reduced_m = g.m();
  return out;
}

FrameResult run_frame(const Graph& g, const SolveParams& params, const SolverConfig& config,
                      LabelStore& labels, const Bound& bound, std::vector<Vertex> s,
                      std::uint32_t level, const OracleResult* oracle) {
  FrameResult out;
  SolveParams p = params;
  p.l_max = std::max(p.l_max, level);
  Engine engine(g, p, config, labels, out.stats, oracle);
  Frame f = engine.run(bound, std::move(s), level, 0);
  out.b_prime = f.b_prime;
  out.u = std::move(f.u);
  out.d = f.d.entries();
  out.full = f.full;
  out.stats.comparisons = engine.ops().comparisons;
  out.stats.additions = engine.ops().additions;
  return out;
}

SolveResult solve(const Graph& g, Vertex source, const SolverConfig& config) {
  if (source >= g.n()) throw SourceOutOfRange(source, g.n());
  SolveParams params = choose_params(g.n(), g.m(), config);
  if (params.fallback) {
    SolveResult out = solve_dijkstra(g, source);
    out.params = params;
    return out;
  }

  const ReducedGraph rg = reduce_degree(g, params.delta);
  const Graph& inner = rg.inner;
  params.l_max = level_count(inner.n(), params.t);

  SolveResult out;
  out.params = params;
  out.reduced_n = inner.n();
  out.reduced_m = inner.m();

  std::unique_ptr<OracleResult> oracle;
  if (config.debug_checks && inner.n() <= config.frame_check_limit) {
    oracle = std::make_unique<OracleResult>(dijkstra(inner, rg.rep[source]));
  }

  LabelStore d(inner.n());
  d.set_source(rg.rep[source]);
  Engine engine(inner, out.params, config, d, out.stats, oracle.get());
  const Frame top = engine.run(Bound::infinity(), {rg.rep[source]}, params.l_max, 0);
  if (config.debug_checks && !top.full) violation("top-level call did not run in full");

  out.dist.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex r = rg.rep[v];
    out.dist[v] = d.is_set(r) ? d[r].length : std::numeric_limits<double>::infinity();
  }
  out.stats.comparisons = engine.ops().comparisons;
  out.stats.additions = engine.ops().additions;
  return out;
}

}  // namespace ssspx

#include "ssspx/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace ssspx {

namespace {

double draw_weight(const WeightModel& w, SplitMix64& rng) {
  auto integer = [&] {
    const auto lo = static_cast<std::uint64_t>(w.lo);
    const auto hi = static_cast<std::uint64_t>(w.hi);
    return static_cast<double>(lo + rng.below(hi - lo + 1));
  };
  switch (w.kind) {
    case WeightKind::uniform_integer:
      return integer();
    case WeightKind::uniform_real:
      return w.lo + (w.hi - w.lo) * rng.real();
    case WeightKind::zero_heavy:
      return rng.real() < w.p_zero ? 0.0 : integer();
  }
  return 0.0;
}

void check_weights(const WeightModel& w) {
  if (!(w.lo >= 0) || !(w.hi >= w.lo) || !std::isfinite(w.hi)) {
    throw InfeasibleSpec("weight range must satisfy 0 <= lo <= hi < inf");
  }
  if (w.kind != WeightKind::uniform_real && (w.lo != std::floor(w.lo) || w.hi != std::floor(w.hi))) {
    throw InfeasibleSpec("integer weight bounds must be integers");
  }
  if (!(w.p_zero >= 0 && w.p_zero <= 1)) throw InfeasibleSpec("p_zero must lie in [0, 1]");
}

Vertex draw_other(std::uint32_t n, Vertex u, SplitMix64& rng) {
  auto v = static_cast<Vertex>(rng.below(n - 1));
  return v >= u ? v + 1 : v;
}

void add_random_extras(std::vector<Edge>& edges, std::uint32_t n, std::uint64_t m,
                       SplitMix64& rng) {
  if (n < 2) return;
  while (edges.size() < m) {
    const auto u = static_cast<Vertex>(rng.below(n));
    edges.push_back({u, draw_other(n, u, rng), 0.0});
  }
}

std::vector<Edge> random_m(std::uint32_t n, std::uint64_t m, SplitMix64& rng) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1);
  if (m > pairs) {
    throw InfeasibleSpec("random_m: m = " + std::to_string(m) + " exceeds n(n-1) = " +
                         std::to_string(pairs));
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  if (2 * m > pairs) {
    // Dense: partial Fisher-Yates over all ordered pairs.
    std::vector<std::uint64_t> all(pairs);
    for (std::uint64_t i = 0; i < pairs; ++i) all[i] = i;
    for (std::uint64_t i = 0; i < m; ++i) {
      std::swap(all[i], all[i + rng.below(pairs - i)]);
      const auto u = static_cast<Vertex>(all[i] / (n - 1));
      auto v = static_cast<Vertex>(all[i] % (n - 1));
      if (v >= u) ++v;
      edges.push_back({u, v, 0.0});
    }
    return edges;
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  while (edges.size() < m) {
    const auto u = static_cast<Vertex>(rng.below(n));
    const Vertex v = draw_other(n, u, rng);
    if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) edges.push_back({u, v, 0.0});
  }
  return edges;
}

std::vector<Edge> grid(std::uint32_t n) {
  std::vector<Edge> edges;
  const auto cols = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  for (Vertex v = 0; v < n; ++v) {
    const std::uint32_t c = v % cols;
    if (c + 1 < cols && v + 1 < n) {
      edges.push_back({v, v + 1, 0.0});
      edges.push_back({v + 1, v, 0.0});
    }
    if (static_cast<std::uint64_t>(v) + cols < n) {
      edges.push_back({v, v + cols, 0.0});
      edges.push_back({v + cols, v, 0.0});
    }
  }
  return edges;
}

std::vector<Edge> layered(std::uint32_t n, std::uint64_t m, SplitMix64& rng) {
  std::vector<Edge> edges;
  const auto width = std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n)))));
  const std::uint32_t layers = (n + width - 1) / width;
  if (layers < 2) {
    if (m > 0) throw InfeasibleSpec("layered: need at least two layers for any edge");
    return edges;
  }
  edges.reserve(m);
  while (edges.size() < m) {
    const auto layer = static_cast<std::uint32_t>(rng.below(layers - 1));
    const std::uint32_t lo = layer * width;
    const std::uint32_t next_lo = lo + width;
    const std::uint32_t next_hi = std::min(n, next_lo + width);
    const auto u = static_cast<Vertex>(lo + rng.below(width));
    const auto v = static_cast<Vertex>(next_lo + rng.below(next_hi - next_lo));
    edges.push_back({u, v, 0.0});
  }
  return edges;
}

}  // namespace

Graph generate(const GenSpec& spec) {
  if (spec.n < 1) throw InfeasibleSpec("n must be at least 1");
  check_weights(spec.weights);
  SplitMix64 rng(spec.seed);
  const std::uint32_t n = spec.n;
  std::vector<Edge> edges;
  switch (spec.family) {
    case Family::random_m:
      edges = random_m(n, spec.m, rng);
      break;
    case Family::path:
      for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 0.0});
      add_random_extras(edges, n, spec.m, rng);
      break;
    case Family::grid:
      edges = grid(n);
      break;
    case Family::layered:
      edges = layered(n, spec.m, rng);
      break;
    case Family::star_cycle:
      for (Vertex v = 1; v < n; ++v) edges.push_back({0, v, 0.0});
      if (n > 2) {
        for (Vertex v = 1; v < n; ++v) edges.push_back({v, v + 1 < n ? v + 1 : 1, 0.0});
      }
      add_random_extras(edges, n, spec.m, rng);
      break;
  }
  for (Edge& e : edges) e.weight = draw_weight(spec.weights, rng);
  return Graph(n, std::move(edges));
}

std::string to_string(Family f) {
  switch (f) {
    case Family::random_m:
      return "random-m";
    case Family::path:
      return "path";
    case Family::grid:
      return "grid";
    case Family::layered:
      return "layered";
    case Family::star_cycle:
      return "star-cycle";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  for (const Family f :
       {Family::random_m, Family::path, Family::grid, Family::layered, Family::star_cycle}) {
    if (text == to_string(f)) return f;
  }
  throw InfeasibleSpec("unknown family '" + text + "'");
}

std::string to_string(const WeightModel& w) {
  std::ostringstream out;
  switch (w.kind) {
    case WeightKind::uniform_integer:
      out << "int:" << w.lo << ':' << w.hi;
      break;
    case WeightKind::uniform_real:
      out << "real:" << w.lo << ':' << w.hi;
      break;
    case WeightKind::zero_heavy:
      out << "zero:" << w.p_zero << ':' << w.lo << ':' << w.hi;
      break;
  }
  return out.str();
}

WeightModel parse_weights(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string piece; std::getline(in, piece, ':');) parts.push_back(piece);
  auto num = [&](std::size_t i) {
    double x = 0;
    const std::string& s = parts[i];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw InfeasibleSpec("bad number '" + s + "' in weight model '" + text + "'");
    }
    return x;
  };
  WeightModel w;
  if (parts.empty()) throw InfeasibleSpec("empty weight model");
  const std::string& kind = parts[0];
  if (kind == "int" || kind == "real") {
    w.kind = kind == "int" ? WeightKind::uniform_integer : WeightKind::uniform_real;
    if (kind == "real") {
      w.lo = 0;
      w.hi = 1;
    }
    if (parts.size() == 3) {
      w.lo = num(1);
      w.hi = num(2);
    } else if (parts.size() != 1) {
      throw InfeasibleSpec("expected " + kind + " or " + kind + ":LO:HI");
    }
  } else if (kind == "zero") {
    w.kind = WeightKind::zero_heavy;
    if (parts.size() >= 2) w.p_zero = num(1);
    if (parts.size() == 4) {
      w.lo = num(2);
      w.hi = num(3);
    } else if (parts.size() != 1 && parts.size() != 2) {
      throw InfeasibleSpec("expected zero, zero:P or zero:P:LO:HI");
    }
  } else {
    throw InfeasibleSpec("unknown weight model '" + text + "'");
  }
  check_weights(w);
  return w;
}

}  // namespace ssspx

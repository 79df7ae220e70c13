#include "ssspx/dimacs.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace ssspx {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "sp") throw ParseError(lineno, "expected 'p sp <n> <m>'");
      n = parse_number<std::uint64_t>(tok[2], lineno, "vertex count");
      m = parse_number<std::uint64_t>(tok[3], lineno, "arc count");
      if (n > 0xFFFFFFFEull) throw ParseError(lineno, "vertex count too large");
      have_header = true;
      edges.reserve(m);
    } else if (tok[0] == "a") {
      if (!have_header) throw ParseError(lineno, "arc before problem line");
      if (tok.size() != 4) throw ParseError(lineno, "expected 'a <u> <v> <w>'");
      const auto u = parse_number<std::uint64_t>(tok[1], lineno, "vertex id");
      const auto v = parse_number<std::uint64_t>(tok[2], lineno, "vertex id");
      const auto w = parse_number<double>(tok[3], lineno, "weight");
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex id out of range");
      if (!(w >= 0.0) || w == std::numeric_limits<double>::infinity()) {
        throw ParseError(lineno, "weight must be finite and non-negative");
      }
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(lineno, "expected " + std::to_string(m) + " arcs, found " +
                                 std::to_string(edges.size()));
  }
  return Graph(static_cast<std::uint32_t>(n), std::move(edges));
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_dimacs(in);
}

std::string format_weight(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string l;
    while (std::getline(lines, l)) out << "c " << l << '\n';
  }
  out << "p sp " << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) {
    out << "a " << e.src + 1 << ' ' << e.dst + 1 << ' ' << format_weight(e.weight) << '\n';
  }
}

void write_dimacs_file(const std::string& path, const Graph& g, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_dimacs(out, g, comment);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ssspx

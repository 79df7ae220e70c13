#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ssspx/graph.hpp"

namespace ssspx {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Reads the 9th DIMACS challenge `.gr` format (`c`, `p sp n m`, `a u v w`
// with 1-based ids). Non-integer weights are accepted as an extension.
Graph read_dimacs(std::istream& in);
Graph read_dimacs_file(const std::string& path);

// Integral weights are written as integers, others in shortest round-trip form.
void write_dimacs(std::ostream& out, const Graph& g, const std::string& comment = {});
void write_dimacs_file(const std::string& path, const Graph& g, const std::string& comment = {});

// Shortest decimal text that parses back to exactly `x`.
std::string format_weight(double x);

}  // namespace ssspx

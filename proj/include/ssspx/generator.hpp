#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ssspx/graph.hpp"

namespace ssspx {

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// splitmix64: state += 0x9E3779B97F4A7C15, then the standard xor-shift-multiply
// finalizer. below(b) maps through the high half of a 128-bit product;
// real() takes the top 53 bits.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class Family { random_m, path, grid, layered, star_cycle };
enum class WeightKind { uniform_integer, uniform_real, zero_heavy };

struct WeightModel {
  WeightKind kind = WeightKind::uniform_integer;
  double lo = 1;  // integer models use [lo, hi]; the real model [lo, hi)
  double hi = 100;
  double p_zero = 0.5;  // zero_heavy: chance of weight 0, else integer in [lo, hi]
};

// Families:
//   random_m    m distinct ordered pairs, no self-loops
//   path        chain 0 -> 1 -> ... -> n-1, then random extra edges up to m
//   grid        near-square grid with arcs both ways between neighbours (m ignored)
//   layered     ~sqrt(n) layers; m random arcs between consecutive layers
//   star_cycle  hub 0 to every other vertex, a cycle through the others,
//               then random extra edges up to m
struct GenSpec {
  Family family = Family::random_m;
  std::uint32_t n = 1;
  std::uint64_t m = 0;
  WeightModel weights;
  std::uint64_t seed = 1;
};

// Deterministic in `spec`. Throws InfeasibleSpec for impossible requests.
Graph generate(const GenSpec& spec);

std::string to_string(Family f);
std::string to_string(const WeightModel& w);
Family parse_family(const std::string& text);
// "int", "int:LO:HI", "real", "real:LO:HI", "zero", "zero:P", "zero:P:LO:HI".
WeightModel parse_weights(const std::string& text);

}  // namespace ssspx

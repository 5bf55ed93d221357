#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "quivhom/cli/instance.hpp"

namespace quivhom::cli {

struct GenOptions {
  std::uint64_t seed = 0;
  Mode mode = Mode::vector;
  std::size_t max_vertices = 4;
  std::size_t max_arrows = 5;
  /// Vertex dimensions (vector mode) or bundle ranks (p1 mode, including M_a).
  std::size_t max_dim = 3;
  /// dim M_a in vector mode; bound on |d| for every O(d) in p1 mode.
  int max_twist = 2;
  std::uint32_t prime = 101;
};

/// Throws ValidationError on non-positive bounds or a non-prime modulus.
void validate(const GenOptions& opts);

/// Random instance with modules "V" and "W"; a pure function of the options.
Json generate_instance(const GenOptions& opts);

/// Uniform integer in [lo, hi] from raw 64-bit draws, so results do not
/// depend on the standard library's distribution implementations.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

} // namespace quivhom::cli

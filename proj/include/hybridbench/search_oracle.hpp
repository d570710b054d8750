#pragma once

#include <cstddef>
#include <cstdint>

namespace hybridbench {

/// Monte-Carlo configuration. Trials are split into `threads` partitions; each
/// partition draws from its own std::mt19937_64 seeded by splitmix64(seed, index),
/// so results depend on (trials, seed, threads) only.
struct McConfig {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Simulates the randomized QSearch loop: round k draws j uniformly from
/// [0, m_k], pays j Grover applications and succeeds with probability
/// sin^2((2j+1) theta). Counts applications until success or the last round.
McResult mc_qsearch(std::size_t size, std::size_t marked, const McConfig& cfg);

/// Simulates threshold descent over ranks: start at a uniform rank, pay
/// n_Q(N, s) while s = rank > 0, then jump to a uniform strictly better rank.
McResult mc_qmin(std::size_t size, const McConfig& cfg);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace hybridbench

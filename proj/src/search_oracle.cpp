#include "hybridbench/search_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "hybridbench/qcost.hpp"
#include "hybridbench/simplex.hpp"

namespace hybridbench {
namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
};

// Runs `trial` over partitions and merges count-weighted moments.
McResult run_partitions(const McConfig& cfg,
                        const std::function<double(std::mt19937_64&)>& trial) {
  const std::size_t parts = std::max<std::size_t>(1, std::min(cfg.threads, cfg.trials));
  std::vector<Moments> moments(parts);
  std::uint64_t state = cfg.seed;
  std::vector<std::uint64_t> seeds(parts);
  for (auto& s : seeds) s = splitmix64(state);

  auto work = [&](std::size_t p) {
    std::mt19937_64 rng(seeds[p]);
    const std::size_t begin = cfg.trials * p / parts;
    const std::size_t end = cfg.trials * (p + 1) / parts;
    Moments& mo = moments[p];
    for (std::size_t i = begin; i < end; ++i) {
      const double v = trial(rng);
      mo.sum += v;
      mo.sum_sq += v * v;
      ++mo.count;
    }
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t p = 0; p < parts; ++p) pool.emplace_back(work, p);
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const Moments& mo : moments) {
    total.sum += mo.sum;
    total.sum_sq += mo.sum_sq;
    total.count += mo.count;
  }
  McResult r;
  if (total.count == 0) return r;
  const double n = static_cast<double>(total.count);
  r.mean = total.sum / n;
  if (total.count > 1) {
    const double var = std::max(0.0, (total.sum_sq - n * r.mean * r.mean) / (n - 1.0));
    r.std_error = std::sqrt(var / n);
  }
  return r;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

McResult mc_qsearch(std::size_t size, std::size_t marked, const McConfig& cfg) {
  if (size < 2 || marked > size) return {};
  const double x = static_cast<double>(size);
  const int kmax =
      static_cast<int>(std::ceil(std::log(x / (2.0 * std::sqrt(x - 1.0))) / std::log(1.2))) + 4;
  std::vector<std::size_t> caps;
  double power = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    power *= 1.2;
    caps.push_back(static_cast<std::size_t>(std::floor(std::min(power, std::sqrt(x)))));
  }
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / x));

  return run_partitions(cfg, [&](std::mt19937_64& rng) {
    double count = 0.0;
    for (std::size_t cap : caps) {
      const std::size_t j = uniform_index(rng, cap + 1);
      count += static_cast<double>(j);
      const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
      if (uniform01(rng) < s * s) break;
    }
    return count;
  });
}

McResult mc_qmin(std::size_t size, const McConfig& cfg) {
  if (size < 2) return {};
  std::vector<double> cost(size, 0.0);
  for (std::size_t s = 1; s < size; ++s) cost[s] = qcost::n_qsearch(size, s).value;
  return run_partitions(cfg, [&](std::mt19937_64& rng) {
    double total = 0.0;
    std::size_t rank = uniform_index(rng, size);
    while (rank > 0) {
      total += cost[rank];
      rank = uniform_index(rng, rank);
    }
    return total;
  });
}

}  // namespace hybridbench

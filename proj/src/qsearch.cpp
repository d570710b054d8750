// Expected-iteration formulas for QSearch and QMin.

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "hybridbench/qcost.hpp"

namespace hybridbench::qcost {
namespace {

constexpr double kLambda = 6.0 / 5.0;

// Probability that one QSearch round with iteration cap m fails to find a
// marked item, averaged over the uniform draw j in [0, m].
double failure_factor(std::size_t m, std::size_t marked, std::size_t size, double theta) {
  if (marked == 0) return 1.0;
  if (marked == size) return 0.0;
  const double mp1 = static_cast<double>(m + 1);
  const double s2 = std::sin(2.0 * theta);
  if (std::abs(s2) < 1e-9) {
    double sum = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      const double c = std::cos((2.0 * static_cast<double>(j) + 1.0) * theta);
      sum += c * c;
    }
    return sum / mp1;
  }
  return 0.5 + std::sin(4.0 * mp1 * theta) / (4.0 * mp1 * s2);
}

}  // namespace

Bound n_qsearch(std::size_t size, std::size_t marked) {
  if (size < 2 || marked > size) return {0.0, kDomainGuard};
  const double x = static_cast<double>(size);
  const double root = std::sqrt(x);
  const int kmax =
      static_cast<int>(std::ceil(std::log(x / (2.0 * std::sqrt(x - 1.0))) / std::log(kLambda))) +
      4;
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / x));
  double total = 0.0;
  double survive = 1.0;
  double power = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    power *= kLambda;
    const auto mk = static_cast<std::size_t>(std::floor(std::min(power, root)));
    total += static_cast<double>(mk) / 2.0 * survive;
    survive *= failure_factor(mk, marked, size, theta);
  }
  return {total, 0};
}

Bound qmin_sum(std::size_t size, QminSumStart start) {
  if (size < 2) return {0.0, kEmptySum};
  static std::shared_mutex mutex;
  static std::map<std::pair<std::size_t, int>, double> cache;
  const auto key = std::make_pair(size, start == QminSumStart::FromZero ? 0 : 1);
  {
    std::shared_lock lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return {it->second, 0};
  }
  double sum = 0.0;
  for (std::size_t s = key.second; s < size; ++s) {
    sum += n_qsearch(size, s).value / static_cast<double>(s + 1);
  }
  std::unique_lock lock(mutex);
  cache.emplace(key, sum);
  return {sum, 0};
}

int ceil_log3_inv(double eps) {
  const double r = std::log(1.0 / eps) / std::log(3.0);
  const double nearest = std::round(r);
  if (std::abs(r - nearest) < 1e-12) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(r));
}

Bound qmin_expected_queries(std::size_t size, double eps, QminSumStart start) {
  if (size < 2 || !(eps > 0.0) || eps >= 1.0) return {0.0, kDomainGuard};
  const Bound sum = qmin_sum(size, start);
  return {3.0 * ceil_log3_inv(eps) * sum.value, sum.flags};
}

}  // namespace hybridbench::qcost

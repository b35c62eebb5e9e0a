#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "testlab/learn/regressor.hpp"

namespace synthetic {

struct Task {
  testlab::learn::Samples train;
  testlab::learn::Samples test;
  std::vector<std::string> names;
  std::size_t signal = 0;
};

inline testlab::learn::Samples take(const testlab::learn::Samples& all, std::size_t from,
                                    std::size_t to) {
  testlab::learn::Samples s;
  s.n = to - from;
  s.d = all.d;
  s.x.assign(all.x.begin() + static_cast<std::ptrdiff_t>(from * all.d),
             all.x.begin() + static_cast<std::ptrdiff_t>(to * all.d));
  s.y.assign(all.y.begin() + static_cast<std::ptrdiff_t>(from),
             all.y.begin() + static_cast<std::ptrdiff_t>(to));
  return s;
}

/// y = x1^2 + sin(3 x2) + 0.5 x3 x4 + N(0, 0.05) with x ~ U(-1, 1)^10;
/// the first 70% of the rows train, the rest test.
inline Task learnability_task(std::uint64_t seed, std::size_t n = 5000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  testlab::learn::Samples all;
  all.n = n;
  all.d = 10;
  for (std::size_t i = 0; i < n; ++i) {
    double x[10];
    for (double& v : x) v = u(rng);
    all.x.insert(all.x.end(), x, x + 10);
    all.y.push_back(x[0] * x[0] + std::sin(3.0 * x[1]) + 0.5 * x[2] * x[3] + noise(rng));
  }
  const std::size_t cut = n * 7 / 10;
  Task t{take(all, 0, cut), take(all, cut, n), {}, 0};
  for (int j = 0; j < 10; ++j) t.names.push_back("x" + std::to_string(j + 1));
  return t;
}

/// One informative feature (at a seed-dependent position) among 19 noise
/// features: y = 2 x_s + N(0, 0.1), x ~ U(0, 1)^20; 400 train, 200 test rows.
inline Task planted_importance_task(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.1);
  const std::size_t d = 20, n = 600;
  Task t;
  t.signal = std::uniform_int_distribution<std::size_t>(0, d - 1)(rng);
  testlab::learn::Samples all;
  all.n = n;
  all.d = d;
  for (std::size_t i = 0; i < n; ++i) {
    double signal = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double v = u(rng);
      all.x.push_back(v);
      if (j == t.signal) signal = v;
    }
    all.y.push_back(2.0 * signal + noise(rng));
  }
  t.train = take(all, 0, 400);
  t.test = take(all, 400, n);
  for (std::size_t j = 0; j < d; ++j) {
    t.names.push_back((j < 10 ? "f0" : "f") + std::to_string(j));
  }
  return t;
}

}  // namespace synthetic

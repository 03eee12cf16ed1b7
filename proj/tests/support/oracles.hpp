#pragma once

// Independent reference computations used as test oracles. They share no code
// with the library beyond the plain ScorePair struct.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "jarcon/association.hpp"

namespace oracle {

struct Counts {
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
};

inline int sign(int v) { return (v > 0) - (v < 0); }

// Ordered pairs i != j on (liking, |jar|).
inline Counts count_pairs(std::span<const jarcon::ScorePair> pairs) {
  Counts c;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const int s = sign(pairs[i].liking - pairs[j].liking) *
                    sign(std::abs(pairs[i].jar) - std::abs(pairs[j].jar));
      if (s > 0) ++c.concordant;
      if (s < 0) ++c.discordant;
    }
  }
  return c;
}

inline double tau_c(std::span<const jarcon::ScorePair> pairs, int m = 3) {
  const auto c = count_pairs(pairs);
  const double n = static_cast<double>(pairs.size());
  return static_cast<double>(c.concordant - c.discordant) / (n * n * (m - 1) / m);
}

// Delete-one jackknife standard error of tau_c.
inline double jackknife_se(std::span<const jarcon::ScorePair> pairs, int m = 3) {
  const std::size_t n = pairs.size();
  std::vector<double> leave_out(n);
  std::vector<jarcon::ScorePair> rest;
  for (std::size_t k = 0; k < n; ++k) {
    rest.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k) rest.push_back(pairs[i]);
    }
    leave_out[k] = tau_c(rest, m);
  }
  double mean = 0;
  for (double v : leave_out) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double v : leave_out) ss += (v - mean) * (v - mean);
  return std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
}

// Two-pass sample mean and SD.
struct MeanSd {
  double mean = 0;
  double sd = 0;
};

inline MeanSd mean_sd(std::span<const double> v) {
  double sum = 0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

// Closed-form simple regression y = a + b x.
struct Line {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
};

inline Line simple_regression(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double b = sxy / sxx;
  return {my - b * mx, b, sxy * sxy / (sxx * syy)};
}

// Random scores with a tunable number of liking and JAR levels.
inline std::vector<jarcon::ScorePair> random_pairs(std::mt19937_64& gen, std::size_t n) {
  std::uniform_int_distribution<int> lk(1, 9), jr(-2, 2);
  std::vector<jarcon::ScorePair> out(n);
  for (auto& p : out) p = {lk(gen), jr(gen)};
  return out;
}

}  // namespace oracle

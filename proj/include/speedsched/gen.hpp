#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "speedsched/model.hpp"
#include "speedsched/random.hpp"

namespace speedsched {

inline constexpr double kClampValue = 1e-3;

struct Distribution {
  enum class Kind { Uniform, Normal };
  Kind kind = Kind::Normal;
  double a = 0.0;  // lo or mean
  double b = 1.0;  // hi or standard deviation

  static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
  static Distribution normal(double mean, double sigma) { return {Kind::Normal, mean, sigma}; }

  double mean() const { return kind == Kind::Uniform ? 0.5 * (a + b) : a; }
  double sample(SplitMix64& rng) const;
  // "uniform:lo:hi" / "normal:mean:sigma"
  std::string to_string() const;
  static Distribution parse(const std::string& text);
};

struct SyntheticConfig {
  std::size_t n = 12;
  std::size_t m = 4;
  Distribution job_dist = Distribution::normal(50.0, 5.0);
  Distribution speed_dist = Distribution::normal(20.0, 4.0);
  double err_sigma = 4.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Jobs, speeds and errors come from separate streams of `seed`; samples below
// kClampValue are raised to it. predicted = clamp(true + err).
Instance gen_synthetic(const SyntheticConfig& config);

// n unit jobs, predicted (n - m + 1, 1, ..., 1), adversarial true speeds all 1.
Instance gen_prop1_instance(std::size_t n, std::size_t m);

// 2m - 1 unit jobs, predicted (m, 1, ..., 1), adversarial true speeds all 1.
Instance gen_tradeoff_instance(std::size_t m);

struct BinarySpeedInstance {
  std::vector<double> jobs;
  std::size_t m = 0;
  std::size_t m_hat = 0;  // predicted number of available machines
  std::size_t m0 = 0;     // actual number of available machines
};

// 6k unit jobs on m = 3 machines, prediction m_hat = 3, actual m0 = 2.
BinarySpeedInstance gen_binary_lb_instance(std::size_t k);

}  // namespace speedsched

#include "speedsched/gen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace speedsched {

double normal_quantile(double u) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  constexpr double high = 1.0 - low;

  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("normal_quantile needs 0 < u < 1");
  if (u < low) {
    double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > high) {
    double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = u - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double Distribution::sample(SplitMix64& rng) const {
  double u = rng.uniform01();
  if (kind == Kind::Uniform) return a + (b - a) * u;
  return a + b * normal_quantile(u);
}

std::string Distribution::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << (kind == Kind::Uniform ? "uniform:" : "normal:") << a << ':' << b;
  return out.str();
}

Distribution Distribution::parse(const std::string& text) {
  auto first = text.find(':');
  auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) {
    throw std::invalid_argument("distribution must look like kind:a:b, got '" + text + "'");
  }
  auto kind = text.substr(0, first);
  double x = std::stod(text.substr(first + 1, second - first - 1));
  double y = std::stod(text.substr(second + 1));
  if (kind == "uniform") {
    if (!(y >= x)) throw std::invalid_argument("uniform needs lo <= hi");
    return uniform(x, y);
  }
  if (kind == "normal") {
    if (!(y >= 0.0)) throw std::invalid_argument("normal needs sigma >= 0");
    return normal(x, y);
  }
  throw std::invalid_argument("unknown distribution kind '" + kind + "'");
}

void SyntheticConfig::validate() const {
  if (n < 1 || m < 1) throw std::domain_error("n and m must be >= 1");
  if (!(err_sigma >= 0.0)) throw std::domain_error("err_sigma must be >= 0");
}

namespace {
double clamp_positive(double v) { return v >= kClampValue ? v : kClampValue; }
}  // namespace

Instance gen_synthetic(const SyntheticConfig& config) {
  config.validate();
  auto job_rng = make_stream(config.seed, StreamId::Jobs);
  auto speed_rng = make_stream(config.seed, StreamId::Speeds);
  auto error_rng = make_stream(config.seed, StreamId::Errors);
  const auto error_dist = Distribution::normal(0.0, config.err_sigma);

  Instance inst;
  inst.seed = config.seed;
  inst.name = "synthetic-" + std::to_string(config.seed);
  for (std::size_t j = 0; j < config.n; ++j) {
    inst.jobs.push_back(clamp_positive(config.job_dist.sample(job_rng)));
  }
  for (std::size_t i = 0; i < config.m; ++i) {
    double s = clamp_positive(config.speed_dist.sample(speed_rng));
    inst.true_speeds.push_back(s);
    inst.predicted_speeds.push_back(clamp_positive(s + error_dist.sample(error_rng)));
  }
  return inst;
}

Instance gen_prop1_instance(std::size_t n, std::size_t m) {
  if (m < 2 || n <= m) throw std::domain_error("prop1 instance needs n > m >= 2");
  Instance inst;
  inst.name = "prop1-n" + std::to_string(n) + "-m" + std::to_string(m);
  inst.jobs.assign(n, 1.0);
  inst.true_speeds.assign(m, 1.0);
  inst.predicted_speeds.assign(m, 1.0);
  inst.predicted_speeds[0] = static_cast<double>(n - m + 1);
  return inst;
}

Instance gen_tradeoff_instance(std::size_t m) {
  if (m < 2) throw std::domain_error("tradeoff instance needs m >= 2");
  Instance inst;
  inst.name = "tradeoff-m" + std::to_string(m);
  inst.jobs.assign(2 * m - 1, 1.0);
  inst.true_speeds.assign(m, 1.0);
  inst.predicted_speeds.assign(m, 1.0);
  inst.predicted_speeds[0] = static_cast<double>(m);
  return inst;
}

BinarySpeedInstance gen_binary_lb_instance(std::size_t k) {
  if (k < 1) throw std::domain_error("binary lower-bound instance needs k >= 1");
  return BinarySpeedInstance{std::vector<double>(6 * k, 1.0), 3, 3, 2};
}

}  // namespace speedsched

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "speedsched/harness.hpp"
#include "speedsched/io.hpp"

namespace speedsched {

using nlohmann::json;

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAlphas[] = {0.25, 0.5, 0.75};

bool at_most(double value, double bound) {
  return value <= bound + kRelTol * std::max(1.0, std::abs(bound));
}

bool at_least(double value, double bound) { return at_most(bound, value); }

std::size_t pick(SplitMix64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next() % (hi - lo + 1));
}

double pick_alpha(SplitMix64& rng) { return kAlphas[rng.next() % 3]; }

std::vector<double> random_loads(SplitMix64& rng, std::size_t count, bool allow_zero) {
  std::vector<double> loads(count);
  bool integral = rng.next() % 2 == 0;
  for (auto& x : loads) {
    x = integral ? static_cast<double>(pick(rng, allow_zero ? 0 : 1, 6)) : 0.5 + 99.5 * rng.uniform01();
  }
  return loads;
}

Partition random_partition(SplitMix64& rng, std::size_t n, std::size_t m) {
  Partition p;
  p.bags.resize(m);
  for (std::size_t j = 0; j < n; ++j) p.bags[rng.next() % m].push_back(j);
  return p;
}

std::string witness(const Instance& inst, json extra = json::object()) {
  extra["instance"] = to_json(inst);
  return extra.dump();
}

double max_over_min(const std::vector<double>& loads) {
  auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
  return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
}

// Half the time the predictions are replaced by log-uniform speeds over a
// wide range, which drives IPR through many more rebalancing rounds.
Instance structural_instance(SplitMix64& rng) {
  auto inst = random_instance(rng, 12, 4);
  if (rng.next() % 2 == 0) {
    for (auto& x : inst.predicted_speeds) x = std::exp2(16.0 * rng.uniform01() - 8.0);
  }
  return inst;
}

}  // namespace

void PropertyResult::record(bool pass, const std::string& witness_text) {
  ++total;
  if (pass) {
    ++passed;
  } else if (!counterexample) {
    counterexample = witness_text;
  }
}

bool MetricsReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.ok(); });
}

std::string MetricsReport::to_text() const {
  std::ostringstream out;
  for (const auto& p : properties) {
    out << (p.ok() ? "PASS " : "FAIL ") << p.name << " " << p.passed << "/" << p.total << "\n";
    if (p.counterexample) out << "  counterexample: " << *p.counterexample << "\n";
  }
  out << (all_passed() ? "all properties passed" : "some properties FAILED") << "\n";
  return out.str();
}

json MetricsReport::to_json() const {
  json props = json::array();
  for (const auto& p : properties) {
    json entry = {{"name", p.name}, {"passed", p.passed}, {"total", p.total}, {"ok", p.ok()}};
    if (p.counterexample) entry["counterexample"] = *p.counterexample;
    props.push_back(entry);
  }
  return {{"all_passed", all_passed()}, {"properties", props}};
}

Instance random_instance(SplitMix64& rng, std::size_t max_n, std::size_t max_m) {
  SyntheticConfig cfg;
  cfg.n = pick(rng, 1, max_n);
  cfg.m = pick(rng, 1, max_m);
  cfg.job_dist = rng.next() % 2 ? Distribution::uniform(0.0, 100.0) : Distribution::normal(50.0, 5.0);
  cfg.speed_dist = rng.next() % 2 ? Distribution::uniform(0.0, 40.0) : Distribution::normal(20.0, 4.0);
  cfg.err_sigma = rng.uniform01() * cfg.speed_dist.mean();
  cfg.seed = rng.next();
  return gen_synthetic(cfg);
}

std::vector<double> adversarial_speeds(SplitMix64& rng, const Instance& instance) {
  const std::size_t m = instance.m();
  std::vector<double> s(m, 1.0);
  switch (rng.next() % 6) {
    case 0:
      for (auto& x : s) x = std::max(kClampValue, 40.0 * rng.uniform01());
      break;
    case 1:
      break;  // identical machines
    case 2:
      s[rng.next() % m] = static_cast<double>(m) * (1.0 + 10.0 * rng.uniform01());
      break;
    case 3:
      s[rng.next() % m] = kClampValue;
      break;
    case 4:
      for (auto& x : s) x = std::exp2(12.0 * rng.uniform01() - 6.0);
      break;
    default:
      for (std::size_t i = 0; i < m; ++i) s[i] = instance.predicted_speeds[m - 1 - i];
      break;
  }
  return s;
}

double enumerate_optimum(std::span<const double> loads, std::span<const double> speeds) {
  const std::size_t k = loads.size();
  const std::size_t m = speeds.size();
  std::vector<std::size_t> digits(k, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<double> sum(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) sum[digits[i]] += loads[i];
    double span = 0.0;
    for (std::size_t i = 0; i < m; ++i) span = std::max(span, sum[i] / speeds[i]);
    best = std::min(best, span);
    std::size_t pos = 0;
    while (pos < k && ++digits[pos] == m) digits[pos++] = 0;
    if (pos == k) break;
  }
  return best;
}

namespace properties {

PropertyResult lpt_beta(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "lpt_partition beta <= 2";
  auto rng = SplitMix64::stream(seed, 101);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    auto part = lpt_partition(inst.jobs, inst.m());
    double beta = beta_ratio(part, inst.jobs);
    r.record(at_most(beta, 2.0), witness(inst, {{"beta", beta}}));
  }
  return r;
}

// Hypothesis taken as every bag within a factor 2 of the lightest one, which
// is what the counting argument needs; singletons heavier than 2 * min break
// the bound otherwise (jobs {10, 1, 1} split as {10}, {1, 1}).
PropertyResult min_bag_bound(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "min bag >= sum(p)/(2m-1) when max/min bag load <= 2";
  auto rng = SplitMix64::stream(seed, 102);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = structural_instance(rng);
    const double total = std::accumulate(inst.jobs.begin(), inst.jobs.end(), 0.0);
    const double bound = total / static_cast<double>(2 * inst.m() - 1);
    std::vector<Partition> parts = {lpt_partition(inst.jobs, inst.m()),
                                    random_partition(rng, inst.n(), inst.m()),
                                    ipr(inst.jobs, inst.predicted_speeds, {}).partition};
    bool pass = true;
    for (const auto& part : parts) {
      auto loads = bag_loads(part, inst.jobs);
      if (!at_most(max_over_min(loads), 2.0)) continue;
      pass = pass && at_least(*std::min_element(loads.begin(), loads.end()), bound);
    }
    r.record(pass, witness(inst));
  }
  return r;
}

PropertyResult ipr_bmin_monotone(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "ipr(rho=4) b_min non-decreasing once bags are non-empty";
  auto rng = SplitMix64::stream(seed, 103);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = structural_instance(rng);
    IprConfig cfg{pick_alpha(rng), 4.0, rng.next() % 2 ? SolverKind::Exact : SolverKind::Lpt};
    auto res = ipr(inst.jobs, inst.predicted_speeds, cfg);
    const auto& h = res.state.b_min_history;
    bool pass = true;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      if (res.state.all_nonempty_history[i] && h[i + 1] < h[i]) pass = false;
    }
    r.record(pass, witness(inst, {{"alpha", cfg.alpha}, {"history", h}}));
  }
  return r;
}

PropertyResult ipr_iterations(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "ipr(rho=4) iterations <= m^2";
  auto rng = SplitMix64::stream(seed, 104);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = structural_instance(rng);
    IprConfig cfg{pick_alpha(rng), 4.0, rng.next() % 2 ? SolverKind::Exact : SolverKind::Lpt};
    auto res = ipr(inst.jobs, inst.predicted_speeds, cfg);
    r.record(res.state.attempts <= inst.m() * inst.m(),
             witness(inst, {{"alpha", cfg.alpha}, {"attempts", res.state.attempts}}));
  }
  return r;
}

PropertyResult ipr_beta(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "ipr(rho=4) beta <= 2 + 2/alpha";
  auto rng = SplitMix64::stream(seed, 105);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = structural_instance(rng);
    IprConfig cfg{pick_alpha(rng), 4.0, rng.next() % 2 ? SolverKind::Exact : SolverKind::Lpt};
    auto res = ipr(inst.jobs, inst.predicted_speeds, cfg);
    double beta = beta_ratio(res.partition, inst.jobs);
    r.record(at_most(beta, 2.0 + 2.0 / cfg.alpha),
             witness(inst, {{"alpha", cfg.alpha}, {"beta", beta}}));
  }
  return r;
}

PropertyResult ipr_consistency(std::uint64_t seed, std::size_t trials, double alpha) {
  std::ostringstream name;
  name << "ipr(rho=4, alpha=" << alpha << ") tentative makespan <= (1+alpha) opt when predictions exact";
  PropertyResult r;
  r.name = name.str();
  auto rng = SplitMix64::stream(seed, 106);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    inst.predicted_speeds = inst.true_speeds;
    auto res = ipr(inst.jobs, inst.predicted_speeds, IprConfig{alpha, 4.0, SolverKind::Exact});
    double span = makespan(res.tentative, bag_loads(res.partition, inst.jobs), inst.true_speeds);
    double opt = exact_schedule(inst.jobs, inst.true_speeds).makespan;
    r.record(at_most(span, (1.0 + alpha) * opt),
             witness(inst, {{"tentative", span}, {"opt", opt}}));
  }
  return r;
}

PropertyResult ipr_robustness(std::uint64_t seed, std::size_t trials, double alpha) {
  std::ostringstream name;
  name << "ipr(rho=4, alpha=" << alpha << ") ratio <= 2 + 2/alpha under adversarial speeds";
  PropertyResult r;
  r.name = name.str();
  auto rng = SplitMix64::stream(seed, 107);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    inst.true_speeds = adversarial_speeds(rng, inst);
    auto res = ipr(inst.jobs, inst.predicted_speeds, IprConfig{alpha, 4.0, SolverKind::Exact});
    double alg = exact_schedule(bag_loads(res.partition, inst.jobs), inst.true_speeds).makespan;
    double opt = exact_schedule(inst.jobs, inst.true_speeds).makespan;
    r.record(at_most(alg / opt, 2.0 + 2.0 / alpha),
             witness(inst, {{"ratio", alg / opt}}));
  }
  return r;
}

PropertyResult unit_ipr_rho2(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "unit jobs ipr(rho=2) beta <= 2 + 1/alpha and b_min monotone";
  auto rng = SplitMix64::stream(seed, 108);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 16, 4);
    std::fill(inst.jobs.begin(), inst.jobs.end(), 1.0);
    IprConfig cfg{pick_alpha(rng), 2.0, SolverKind::Exact};
    auto res = ipr(inst.jobs, inst.predicted_speeds, cfg);
    double beta = beta_ratio(res.partition, inst.jobs);
    bool pass = at_most(beta, 2.0 + 1.0 / cfg.alpha);
    const auto& h = res.state.b_min_history;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
      if (res.state.all_nonempty_history[i] && h[i + 1] < h[i]) pass = false;
    }
    r.record(pass, witness(inst, {{"alpha", cfg.alpha}, {"beta", beta}}));
  }
  return r;
}

PropertyResult fluid_ratio(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "fluid_ipr(rho=2) max/min load <= 1 + 1/alpha";
  auto rng = SplitMix64::stream(seed, 109);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t m = pick(rng, 1, 8);
    std::vector<double> speeds(m);
    bool skewed = rng.next() % 2 == 0;
    for (auto& s : speeds) s = skewed ? std::exp2(10.0 * rng.uniform01()) : 0.5 + 40.0 * rng.uniform01();
    double total = 1.0 + 99.0 * rng.uniform01();
    double alpha = pick_alpha(rng);
    auto res = fluid_ipr(total, speeds, alpha, 2.0);
    double ratio = max_over_min(res.loads);
    r.record(at_most(ratio, 1.0 + 1.0 / alpha),
             json({{"total", total}, {"speeds", speeds}, {"alpha", alpha}, {"ratio", ratio}}).dump());
  }
  return r;
}

namespace {
struct BinaryCase {
  std::vector<double> jobs;
  std::size_t m, m_hat, m0;
  std::string dump() const {
    return json({{"jobs", jobs}, {"m", m}, {"m_hat", m_hat}, {"m0", m0}}).dump();
  }
};

BinaryCase random_binary_case(SplitMix64& rng) {
  BinaryCase c;
  c.m = pick(rng, 1, 5);
  c.m_hat = pick(rng, 1, c.m);
  c.m0 = pick(rng, 1, c.m);
  c.jobs = random_loads(rng, pick(rng, 1, 12), false);
  return c;
}
}  // namespace

PropertyResult binary_ratio(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "binary speeds: partition + merge scheduling ratio <= 2";
  auto rng = SplitMix64::stream(seed, 110);
  for (std::size_t t = 0; t < trials; ++t) {
    auto c = random_binary_case(rng);
    auto ev = evaluate_binary(c.jobs, c.m, c.m_hat, c.m0);
    r.record(at_most(ev.ratio, 2.0), c.dump());
  }
  return r;
}

PropertyResult binary_bag_bound(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "binary speeds: max bag <= 2 x max bag of the optimal m-bag partition";
  auto rng = SplitMix64::stream(seed, 111);
  for (std::size_t t = 0; t < trials; ++t) {
    auto c = random_binary_case(rng);
    auto part = binary_speed_partition(c.jobs, c.m, c.m_hat, SolverKind::Exact).partition;
    auto loads = bag_loads(part, c.jobs);
    double ours = *std::max_element(loads.begin(), loads.end());
    std::vector<double> ones(c.m, 1.0);
    double best = exact_schedule(c.jobs, ones).makespan;
    r.record(at_most(ours, 2.0 * best), c.dump());
  }
  return r;
}

PropertyResult capacity_certificate(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "capacity schedule places every bag and makespan <= max{2, beta} opt";
  auto rng = SplitMix64::stream(seed, 112);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    inst.true_speeds = adversarial_speeds(rng, inst);
    Partition part;
    switch (t % 3) {
      case 0: part = random_partition(rng, inst.n(), inst.m()); break;
      case 1: part = lpt_partition(inst.jobs, inst.m()); break;
      default: part = consistent_partition(inst.jobs, inst.predicted_speeds, SolverKind::Exact).partition;
    }
    double beta = beta_ratio(part, inst.jobs);
    try {
      auto res = capacity_robust_schedule(part, inst.jobs, inst.true_speeds);
      double opt = exact_schedule(inst.jobs, inst.true_speeds).makespan;
      r.record(at_most(res.makespan, std::max(2.0, beta) * opt),
               witness(inst, {{"bags", part.bags}, {"makespan", res.makespan}, {"opt", opt}}));
    } catch (const InvariantError& e) {
      r.record(false, witness(inst, {{"bags", part.bags}, {"error", e.what()}}));
    }
  }
  return r;
}

PropertyResult exact_matches_enumeration(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "exact_schedule equals full enumeration (<= 8 items, <= 3 machines)";
  auto rng = SplitMix64::stream(seed, 113);
  for (std::size_t t = 0; t < trials; ++t) {
    auto loads = random_loads(rng, pick(rng, 1, 8), true);
    auto speeds = random_loads(rng, pick(rng, 1, 3), false);
    double exact = exact_schedule(loads, speeds).makespan;
    double brute = enumerate_optimum(loads, speeds);
    r.record(std::abs(exact - brute) <= kRelTol * std::max(1.0, brute),
             json({{"loads", loads}, {"speeds", speeds}, {"exact", exact}, {"brute", brute}}).dump());
  }
  return r;
}

PropertyResult exact_dominates_lpt(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "exact_schedule makespan <= lpt_schedule makespan";
  auto rng = SplitMix64::stream(seed, 114);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    double exact = exact_schedule(inst.jobs, inst.true_speeds).makespan;
    double lpt = lpt_schedule(inst.jobs, inst.true_speeds).makespan;
    r.record(exact <= lpt, witness(inst));
  }
  return r;
}

PropertyResult lower_bound_valid(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "opt_lower_bound <= exact optimum";
  auto rng = SplitMix64::stream(seed, 115);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    double lb = opt_lower_bound(inst.jobs, inst.true_speeds);
    double exact = exact_schedule(inst.jobs, inst.true_speeds).makespan;
    r.record(at_most(lb, exact), witness(inst));
  }
  return r;
}

PropertyResult merge_invariants(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "merge_to_fit preserves total load and never lowers the max";
  auto rng = SplitMix64::stream(seed, 116);
  for (std::size_t t = 0; t < trials; ++t) {
    auto loads = random_loads(rng, pick(rng, 1, 10), true);
    std::size_t avail = pick(rng, 1, 6);
    auto merged = merge_to_fit(loads, avail);
    double before = std::accumulate(loads.begin(), loads.end(), 0.0);
    double after = std::accumulate(merged.begin(), merged.end(), 0.0);
    auto nonempty = std::count_if(merged.begin(), merged.end(), [](double x) { return x > 0.0; });
    bool pass = std::abs(before - after) <= kRelTol * std::max(1.0, before) &&
                *std::max_element(merged.begin(), merged.end()) >=
                    *std::max_element(loads.begin(), loads.end()) &&
                static_cast<std::size_t>(nonempty) <= avail;
    r.record(pass, json({{"loads", loads}, {"available", avail}}).dump());
  }
  return r;
}

PropertyResult synthetic_valid(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "gen_synthetic output validates and respects the clamp";
  for (std::size_t t = 0; t < trials; ++t) {
    SyntheticConfig cfg;
    cfg.n = 1 + t % 50;
    cfg.m = 1 + t % 10;
    cfg.job_dist = t % 2 ? Distribution::uniform(0.0, 100.0) : Distribution::normal(50.0, 30.0);
    cfg.speed_dist = t % 3 ? Distribution::uniform(0.0, 40.0) : Distribution::normal(20.0, 15.0);
    cfg.err_sigma = 20.0 * static_cast<double>(t % 5);
    cfg.seed = seed + t;
    auto inst = gen_synthetic(cfg);
    bool pass = true;
    try {
      inst.validate();
    } catch (const std::exception&) {
      pass = false;
    }
    for (const auto* v : {&inst.jobs, &inst.true_speeds, &inst.predicted_speeds}) {
      for (double x : *v) pass = pass && x >= kClampValue;
    }
    r.record(pass, witness(inst));
  }
  return r;
}

PropertyResult model_invariants(std::uint64_t seed, std::size_t trials) {
  PropertyResult r;
  r.name = "makespan permutation/scale invariance, eta symmetry, beta >= 1";
  auto rng = SplitMix64::stream(seed, 118);
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    const std::size_t m = inst.m();
    auto part = random_partition(rng, inst.n(), m);
    auto loads = bag_loads(part, inst.jobs);
    Schedule sched;
    for (std::size_t b = 0; b < m; ++b) sched.bag_to_machine.push_back(rng.next() % m);
    double base = makespan(sched, loads, inst.true_speeds);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[rng.next() % i]);
    std::vector<double> permuted(m);
    Schedule moved = sched;
    for (std::size_t i = 0; i < m; ++i) permuted[perm[i]] = inst.true_speeds[i];
    for (auto& x : moved.bag_to_machine) x = perm[x];
    bool pass = makespan(moved, loads, permuted) == base;

    double c = 0.25 + 4.0 * rng.uniform01();
    std::vector<double> scaled = inst.true_speeds;
    for (auto& x : scaled) x *= c;
    pass = pass && std::abs(makespan(sched, loads, scaled) - base / c) <= kRelTol * base;

    double eta1 = prediction_error(inst.predicted_speeds, inst.true_speeds);
    double eta2 = prediction_error(inst.true_speeds, inst.predicted_speeds);
    pass = pass && eta1 >= 1.0 && std::abs(eta1 - eta2) <= kRelTol * eta1;

    bool multi = std::any_of(part.bags.begin(), part.bags.end(),
                             [](const Bag& b) { return b.size() >= 2; });
    double lightest = *std::min_element(loads.begin(), loads.end());
    if (multi && m >= 2 && lightest > 0.0) pass = pass && beta_ratio(part, inst.jobs) >= 1.0;
    r.record(pass, witness(inst, {{"bags", part.bags}}));
  }
  return r;
}

PropertyResult prop1_ratio() {
  PropertyResult r;
  r.name = "one-consistent ratio on prop1 instances equals (n-m+1)/ceil(n/m)";
  AlgorithmSpec one = AlgorithmSpec::parse("one-consistent");
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t n = m + 1; n <= 12; ++n) {
      auto inst = gen_prop1_instance(n, m);
      auto ev = evaluate(inst, one, SolverKind::Exact, OracleKind::Exact);
      double expected = static_cast<double>(n - m + 1) / static_cast<double>((n + m - 1) / m);
      r.record(std::abs(ev.ratio - expected) <= kRelTol, witness(inst, {{"ratio", ev.ratio}}));
    }
  }
  return r;
}

PropertyResult tradeoff_robustness() {
  PropertyResult r;
  r.name = "ipr(rho=4) ratio <= 2 + 2/alpha on trade-off instances";
  for (std::size_t m = 2; m <= 6; ++m) {
    for (double alpha : kAlphas) {
      auto inst = gen_tradeoff_instance(m);
      IprConfig cfg{alpha, 4.0, SolverKind::Exact};
      AlgorithmSpec spec{AlgorithmKind::Ipr, cfg};
      auto ev = evaluate(inst, spec, SolverKind::Exact, OracleKind::Exact);
      r.record(at_most(ev.ratio, 2.0 + 2.0 / alpha),
               witness(inst, {{"alpha", alpha}, {"ratio", ev.ratio}}));
    }
  }
  return r;
}

PropertyResult binary_lower_bound() {
  PropertyResult r;
  r.name = "binary lower-bound instance: one-consistent ratio with m0=2 >= 4/3";
  for (std::size_t k = 1; k <= 2; ++k) {
    auto inst = gen_binary_lb_instance(k);
    auto ev = evaluate_binary(inst.jobs, inst.m, inst.m_hat, inst.m0);
    r.record(at_least(ev.ratio, 4.0 / 3.0),
             json({{"k", k}, {"ratio", ev.ratio}, {"merged", ev.merged_loads}}).dump());
  }
  return r;
}

}  // namespace properties

MetricsReport verify_properties(std::uint64_t seed, std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  namespace p = properties;
  MetricsReport report;
  auto add = [&](PropertyResult r) { report.properties.push_back(std::move(r)); };
  add(p::lpt_beta(seed, trials));
  add(p::min_bag_bound(seed, trials));
  add(p::ipr_bmin_monotone(seed, trials));
  add(p::ipr_iterations(seed, trials));
  add(p::ipr_beta(seed, trials));
  for (double alpha : kAlphas) add(p::ipr_consistency(seed, trials, alpha));
  add(p::ipr_robustness(seed, trials, 0.5));
  add(p::unit_ipr_rho2(seed, trials));
  add(p::fluid_ratio(seed, trials));
  add(p::binary_ratio(seed, trials));
  add(p::binary_bag_bound(seed, trials));
  add(p::capacity_certificate(seed, trials));
  add(p::exact_matches_enumeration(seed, trials));
  add(p::exact_dominates_lpt(seed, trials));
  add(p::lower_bound_valid(seed, trials));
  add(p::merge_invariants(seed, trials));
  add(p::synthetic_valid(seed, trials));
  add(p::model_invariants(seed, trials));
  add(p::prop1_ratio());
  add(p::tradeoff_robustness());
  add(p::binary_lower_bound());
  return report;
}

}  // namespace speedsched

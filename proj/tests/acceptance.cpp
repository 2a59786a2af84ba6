// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "speedsched/harness.hpp"
#include "speedsched/io.hpp"

using namespace speedsched;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr double kExactTol = 1e-9;
constexpr double kBoundTol = 1e-9;  // relative slack on proven upper bounds

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> run;
};

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

std::string summary(const PropertyResult& r) {
  std::string s = r.name + " " + std::to_string(r.passed) + "/" + std::to_string(r.total);
  if (r.counterexample) s += " first counterexample " + *r.counterexample;
  return s;
}

Outcome combine(const std::vector<PropertyResult>& results, std::size_t min_trials) {
  Outcome out{true, ""};
  for (const auto& r : results) {
    out.pass = out.pass && r.ok() && r.total >= min_trials;
    out.detail += "\n    " + summary(r);
  }
  return out;
}

Outcome lower_bound_exactness() {
  auto inst = gen_prop1_instance(10, 2);
  auto one = evaluate(inst, AlgorithmSpec::parse("one-consistent"), SolverKind::Exact,
                      OracleKind::Exact);
  auto ipr_ev = evaluate(inst, AlgorithmSpec::parse("ipr", IprConfig{0.5, 4.0}), SolverKind::Exact,
                         OracleKind::Exact);
  bool pass = std::abs(one.ratio - 1.8) <= kExactTol && std::abs(ipr_ev.ratio - 1.0) <= kExactTol;
  return {pass, fmt("one-consistent %.12g", one.ratio) + fmt(", ipr(0.5, 4) %.12g", ipr_ev.ratio)};
}

Outcome consistency() {
  std::vector<PropertyResult> rs;
  for (double alpha : {0.25, 0.5, 0.75}) rs.push_back(properties::ipr_consistency(kSeed, 600, alpha));
  return combine(rs, 500);
}

Outcome robustness() {
  return combine({properties::ipr_robustness(kSeed, 600, 0.5)}, 500);
}

// Reading of the min-bag bound with beta restricted to bags of >= 2
// jobs; reported for information only, the statement is false when a single
// huge job forms its own bag.
std::string literal_min_bag_note(std::uint64_t seed, std::size_t trials) {
  auto rng = SplitMix64::stream(seed, 901);
  std::size_t applicable = 0, violated = 0;
  std::string witness;
  for (std::size_t t = 0; t < trials; ++t) {
    auto inst = random_instance(rng, 12, 4);
    auto part = lpt_partition(inst.jobs, inst.m());
    const double beta = beta_ratio(part, inst.jobs);
    if (beta > 2.0) continue;
    ++applicable;
    double total = 0;
    for (double p : inst.jobs) total += p;
    auto loads = bag_loads(part, inst.jobs);
    double lightest = *std::min_element(loads.begin(), loads.end());
    if (lightest < total / static_cast<double>(2 * inst.m() - 1)) {
      if (violated++ == 0) witness = to_json(inst).dump();
    }
  }
  std::string s = "\n    note: with beta over non-singleton bags only, the bound fails on " +
                  std::to_string(violated) + "/" + std::to_string(applicable) +
                  " LPT partitions; smallest textbook case jobs [10,1,1], bags {10},{1,1}";
  if (!witness.empty()) s += "; first random witness " + witness;
  return s;
}

Outcome structural() {
  auto out = combine({properties::lpt_beta(kSeed, 1000), properties::ipr_bmin_monotone(kSeed, 1000),
                      properties::ipr_iterations(kSeed, 1000), properties::ipr_beta(kSeed, 1000),
                      properties::min_bag_bound(kSeed, 1000)},
                     1000);
  out.detail += literal_min_bag_note(kSeed, 1000);
  return out;
}

Outcome special_cases() {
  return combine({properties::unit_ipr_rho2(kSeed, 1000), properties::fluid_ratio(kSeed, 1000)}, 1000);
}

Outcome binary_speeds() {
  auto out = combine({properties::binary_ratio(kSeed, 400)}, 300);
  auto lb = gen_binary_lb_instance(2);
  // m_hat = m: stage 2 is the identity, so this is the 1-consistent partition.
  auto ev = evaluate_binary(lb.jobs, lb.m, lb.m_hat, lb.m0);
  bool lb_ok = ev.ratio >= 4.0 / 3.0 - kExactTol;
  out.pass = out.pass && lb_ok;
  out.detail += fmt("\n    binary lower-bound instance k=2, m0=2: ratio %.12g (needs >= 4/3)", ev.ratio);
  return out;
}

Outcome capacity_certificate() {
  PropertyResult r;
  r.name = "capacity schedule on uniformly random partitions";
  auto rng = SplitMix64::stream(kSeed, 907);
  for (int t = 0; t < 400; ++t) {
    auto inst = random_instance(rng, 12, 4);
    inst.true_speeds = adversarial_speeds(rng, inst);
    Partition part;
    part.bags.resize(inst.m());
    for (std::size_t j = 0; j < inst.n(); ++j) part.bags[rng.next() % inst.m()].push_back(j);
    const double beta = beta_ratio(part, inst.jobs);
    try {
      auto res = capacity_robust_schedule(part, inst.jobs, inst.true_speeds);
      double opt = exact_schedule(inst.jobs, inst.true_speeds).makespan;
      r.record(res.makespan <= std::max(2.0, beta) * opt * (1 + kBoundTol), to_json(inst).dump());
    } catch (const InvariantError& e) {
      r.record(false, std::string(e.what()) + " " + to_json(inst).dump());
    }
  }
  return combine({r, properties::capacity_certificate(kSeed, 300)}, 300);
}

struct ExperimentPoint {
  double ipr = 0, lpt = 0, one = 0;
};

Outcome experiment_trend() {
  auto cfg = ExperimentConfig::defaults();
  cfg.seed = kSeed;
  auto rows = run_experiment(cfg);
  const double top = cfg.base.speed_dist.mean();
  ExperimentPoint lo, hi;
  for (const auto& row : rows) {
    ExperimentPoint* p = row.sweep_value == 0.0 ? &lo : row.sweep_value == top ? &hi : nullptr;
    if (!p) continue;
    if (row.algorithm == "one-consistent") p->one = row.mean_ratio;
    else if (row.algorithm == "lpt-partition") p->lpt = row.mean_ratio;
    else p->ipr = row.mean_ratio;
  }
  auto within = [](const ExperimentPoint& p) {
    return p.ipr >= std::min(p.one, p.lpt) - kExactTol && p.ipr <= std::max(p.one, p.lpt) + kExactTol;
  };
  auto mark = [](bool ok) { return ok ? "ok  " : "FAIL"; };
  const bool one_best = lo.one <= lo.ipr + kExactTol && lo.one <= lo.lpt + kExactTol;
  const bool one_degrades = hi.one > hi.lpt;
  const bool ipr_lo = within(lo), ipr_hi = within(hi);
  std::string d = fmt("\n    err_sigma=0: one-consistent %.6f", lo.one) + fmt(", lpt %.6f", lo.lpt) +
                  fmt(", ipr %.6f", lo.ipr) + fmt("\n    err_sigma=%g:", top) +
                  fmt(" one-consistent %.6f", hi.one) + fmt(", lpt %.6f", hi.lpt) +
                  fmt(", ipr %.6f", hi.ipr);
  d += std::string("\n    ") + mark(one_best) + " one-consistent <= every curve at err_sigma=0";
  d += std::string("\n    ") + mark(one_degrades) + " one-consistent > lpt-partition at err_sigma=mu_s";
  d += std::string("\n    ") + mark(ipr_lo) + " ipr within [min, max] of the benchmarks at err_sigma=0";
  d += std::string("\n    ") + mark(ipr_hi) + " ipr within [min, max] of the benchmarks at err_sigma=mu_s";
  if (!ipr_hi && hi.ipr < std::min(hi.one, hi.lpt)) {
    d += "\n    ipr is below both benchmarks at err_sigma=mu_s, i.e. it outperforms both there";
  }
  return {one_best && one_degrades && ipr_lo && ipr_hi, d};
}

Outcome oracle_equivalence() {
  return combine({properties::exact_matches_enumeration(kSeed, 200)}, 200);
}

Outcome determinism() {
  auto cfg = ExperimentConfig::defaults();
  cfg.seed = 99;
  cfg.instances_per_point = 30;
  cfg.threads = 1;
  auto a = rows_to_csv(run_experiment(cfg));
  cfg.threads = 0;
  auto b = rows_to_csv(run_experiment(cfg));
  cfg.threads = 3;
  auto c = rows_to_csv(run_experiment(cfg));
  return {a == b && b == c, std::to_string(a.size()) + " bytes, three runs with 1/auto/3 threads"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "lower-bound exactness", 1.0, lower_bound_exactness},
      {2, "consistency with exact predictions (600 instances per alpha)", 120.0, consistency},
      {3, "robustness under adversarial speeds (600 pairs)", 300.0, robustness},
      {4, "structural properties (1000 trials each)", 0.0, structural},
      {5, "unit-job and fluid special cases", 0.0, special_cases},
      {6, "binary speeds", 0.0, binary_speeds},
      {7, "capacity certificate", 0.0, capacity_certificate},
      {8, "experiment trend at n=12, m=4", 600.0, experiment_trend},
      {9, "oracle equivalence (200 trials)", 0.0, oracle_equivalence},
      {10, "determinism of experiment CSVs", 0.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.time_limit_s <= 0 || secs < c.time_limit_s;
    bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("[%s] %d. %s (%.2f s%s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title, secs,
                c.time_limit_s > 0 ? fmt(", limit %g s", c.time_limit_s).c_str() : "",
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

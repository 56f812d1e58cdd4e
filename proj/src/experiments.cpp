#include "cgrg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "cgrg/infotheory.hpp"
#include "cgrg/json_io.hpp"
#include "cgrg/measures.hpp"
#include "cgrg/parallel.hpp"
#include "cgrg/rng.hpp"

namespace cgrg {

std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t n, std::size_t rep) {
  return stream_seed(stream_seed(master_seed, n), rep);
}

std::vector<Aggregate> SweepResult::aggregate(std::span<const SweepRow> rows) {
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> groups;
  for (const auto& r : rows) groups[{r.n, r.statistic}].push_back(r.value);
  std::vector<Aggregate> out;
  for (const auto& [key, values] : groups) {
    Aggregate a;
    a.n = key.first;
    a.statistic = key.second;
    a.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / static_cast<double>(a.count);
    if (a.count > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - a.mean) * (v - a.mean);
      a.sd = std::sqrt(ss / static_cast<double>(a.count - 1));
      a.se = a.sd / std::sqrt(static_cast<double>(a.count));
    }
    out.push_back(std::move(a));
  }
  return out;
}

const Aggregate& SweepResult::find(std::size_t n, const std::string& statistic) const {
  for (const auto& a : aggregates)
    if (a.n == n && a.statistic == statistic) return a;
  throw InvalidArgument("no aggregate for n = " + std::to_string(n) + ", statistic " + statistic);
}

std::string SweepResult::to_csv() const {
  std::string out = "n,replicate,seed,statistic,value\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{}\n", r.n, r.replicate, r.seed, r.statistic, format_double(r.value));
  return out;
}

namespace {

void write_sweep_fields(JsonWriter& w, const SweepResult& s) {
  w.key("aggregates").begin_array();
  for (const auto& a : s.aggregates) {
    w.begin_object();
    w.key("n").value(a.n);
    w.key("statistic").value(a.statistic);
    w.key("mean").value(a.mean);
    w.key("sd").value(a.sd);
    w.key("se").value(a.se);
    w.key("count").value(a.count);
    w.end_object();
  }
  w.end_array();
  w.key("skipped").begin_array();
  for (const auto& k : s.skipped) {
    w.begin_object();
    w.key("n").value(k.n);
    w.key("replicate").value(k.replicate);
    w.key("seed").value(k.seed);
    w.key("reason").value(k.reason);
    w.end_object();
  }
  w.end_array();
}

using Statistics = std::vector<std::pair<std::string, double>>;
using ReplicateFn = std::function<Statistics(const Instance&)>;

struct Outcome {
  std::vector<SweepRow> rows;
  std::optional<std::string> skip;
};

// Every (n, replicate) ends up either as rows or as a skip record.
SweepResult run_sweep(const ModelSpec& spec, std::span<const std::size_t> ns, std::size_t reps,
                      std::uint64_t master_seed, unsigned threads, const ReplicateFn& fn) {
  if (reps < 2) throw InvalidArgument("a sweep needs at least 2 replicates");
  spec.validate();

  std::vector<std::optional<std::string>> regime(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    try {
      connection_prob(spec, ns[i]);
    } catch (const Error& e) {
      regime[i] = e.what();
    }
  }

  std::vector<Outcome> outcomes(ns.size() * reps);
  parallel_for(outcomes.size(), threads, [&](std::size_t task) {
    const std::size_t i = task / reps;
    const std::size_t rep = task % reps;
    if (regime[i]) {
      outcomes[task].skip = regime[i];
      return;
    }
    const std::uint64_t seed = replicate_seed(master_seed, ns[i], rep);
    try {
      const Instance inst = generate(spec, ns[i], seed);
      for (auto& [name, value] : fn(inst)) outcomes[task].rows.push_back({ns[i], rep, seed, name, value});
    } catch (const RegimeError& e) {
      outcomes[task].skip = e.what();
    }
  });

  SweepResult result;
  for (std::size_t task = 0; task < outcomes.size(); ++task) {
    auto& o = outcomes[task];
    const std::size_t n = ns[task / reps];
    const std::size_t rep = task % reps;
    if (o.skip) result.skipped.push_back({n, rep, replicate_seed(master_seed, n, rep), *o.skip});
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
  }
  auto key = [](const SweepRow& r) { return std::tie(r.n, r.replicate, r.statistic); };
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [&](const SweepRow& x, const SweepRow& y) { return key(x) < key(y); });
  std::stable_sort(result.skipped.begin(), result.skipped.end(), [](const SkipRecord& x, const SkipRecord& y) {
    return std::tie(x.n, x.replicate) < std::tie(y.n, y.replicate);
  });
  result.aggregates = SweepResult::aggregate(result.rows);
  return result;
}

std::vector<std::size_t> valid_ns(const SweepResult& s) {
  std::vector<std::size_t> out;
  for (const auto& a : s.aggregates)
    if (out.empty() || out.back() != a.n) out.push_back(a.n);
  return out;
}

double normalizer(std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd * std::log(nd) * std::log(nd);
}

}  // namespace

std::string SweepResult::to_json() const {
  JsonWriter w;
  w.begin_object();
  write_sweep_fields(w, *this);
  w.end_object();
  return w.str();
}

AepSweep aep_sweep(const ModelSpec& spec, std::span<const std::size_t> ns, std::size_t reps,
                   std::uint64_t master_seed, const SweepOptions& options) {
  std::map<std::size_t, double> expected;
  for (std::size_t n : ns) {
    try {
      expected[n] = expected_neg_log_likelihood(spec, n);
    } catch (const Error&) {
      // run_sweep records the skip
    }
  }

  AepSweep out;
  out.limit = aep_limit(spec.nu.measure(), spec.lambda, spec.d);
  out.sweep = run_sweep(spec, ns, reps, master_seed, options.threads, [&](const Instance& inst) {
    const double nll = -log_likelihood(inst);
    return Statistics{{"aep_statistic", nll / normalizer(inst.n)},
                      {"neg_log_likelihood", nll},
                      {"expected_neg_log_likelihood", expected.at(inst.n)}};
  });

  const std::vector<std::size_t> sizes = valid_ns(out.sweep);
  if (options.epsilon) {
    out.epsilon = *options.epsilon;
  } else if (!sizes.empty()) {
    const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
    out.epsilon = 0.5 * std::abs(expected.at(largest) / normalizer(largest) - out.limit);
  }

  for (std::size_t n : sizes) {
    const Aggregate& stat = out.sweep.find(n, "aep_statistic");
    const Aggregate& nll = out.sweep.find(n, "neg_log_likelihood");
    AepPoint p;
    p.n = n;
    p.replicates = stat.count;
    p.mean_statistic = stat.mean;
    p.expected_statistic = expected.at(n) / normalizer(n);
    p.abs_gap = std::abs(stat.mean - out.limit);
    p.mean_neg_log_likelihood = nll.mean;
    p.se_neg_log_likelihood = nll.se;
    p.expected_neg_log_likelihood = expected.at(n);
    p.z_score = nll.se > 0.0 ? (nll.mean - expected.at(n)) / nll.se : 0.0;
    std::size_t outside = 0;
    for (const auto& r : out.sweep.rows)
      if (r.n == n && r.statistic == "aep_statistic" && std::abs(r.value - out.limit) >= out.epsilon) ++outside;
    p.fraction_outside = static_cast<double>(outside) / static_cast<double>(stat.count);
    out.points.push_back(p);
  }
  return out;
}

std::string AepSweep::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("limit").value(limit);
  w.key("epsilon").value(epsilon);
  w.key("points").begin_array();
  for (const auto& p : points) {
    w.begin_object();
    w.key("n").value(p.n);
    w.key("replicates").value(p.replicates);
    w.key("mean_statistic").value(p.mean_statistic);
    w.key("expected_statistic").value(p.expected_statistic);
    w.key("abs_gap").value(p.abs_gap);
    w.key("mean_neg_log_likelihood").value(p.mean_neg_log_likelihood);
    w.key("se_neg_log_likelihood").value(p.se_neg_log_likelihood);
    w.key("expected_neg_log_likelihood").value(p.expected_neg_log_likelihood);
    w.key("z_score").value(p.z_score);
    w.key("fraction_outside").value(p.fraction_outside);
    w.end_object();
  }
  w.end_array();
  write_sweep_fields(w, sweep);
  w.end_object();
  return w.str();
}

WllnSweep wlln_sweep(const ModelSpec& spec, std::span<const std::size_t> ns, std::size_t reps,
                     std::uint64_t master_seed, const SweepOptions& options) {
  const ProbMeasure& nu = spec.nu.measure();
  const FiniteMeasure2 target = product_measure(nu, spec.lambda, ball_volume(spec.d));
  const FiniteMeasure2 literal = product_measure(nu, spec.lambda, 1.0);

  WllnSweep out;
  out.literal_limit = max_abs_diff(target.weights(), literal.weights());
  out.sweep = run_sweep(spec, ns, reps, master_seed, options.threads, [&](const Instance& inst) {
    const EmpiricalPair pair = empirical_pair(inst);
    double l1_dev = 0.0;
    for (std::size_t a = 0; a < nu.size(); ++a) l1_dev = std::max(l1_dev, std::abs(pair.l1[a] - nu[a]));
    return Statistics{{"sup_l1_deviation", l1_dev},
                      {"sup_l2_deviation", max_abs_diff(pair.l2.weights(), target.weights())},
                      {"sup_l2_literal_deviation", max_abs_diff(pair.l2.weights(), literal.weights())}};
  });

  for (std::size_t n : valid_ns(out.sweep)) {
    WllnPoint p;
    p.n = n;
    p.replicates = out.sweep.find(n, "sup_l1_deviation").count;
    p.mean_l1_deviation = out.sweep.find(n, "sup_l1_deviation").mean;
    p.mean_l2_deviation = out.sweep.find(n, "sup_l2_deviation").mean;
    p.mean_l2_literal_deviation = out.sweep.find(n, "sup_l2_literal_deviation").mean;
    out.points.push_back(p);
  }
  return out;
}

std::string WllnSweep::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("literal_limit").value(literal_limit);
  w.key("points").begin_array();
  for (const auto& p : points) {
    w.begin_object();
    w.key("n").value(p.n);
    w.key("replicates").value(p.replicates);
    w.key("mean_l1_deviation").value(p.mean_l1_deviation);
    w.key("mean_l2_deviation").value(p.mean_l2_deviation);
    w.key("mean_l2_literal_deviation").value(p.mean_l2_literal_deviation);
    w.end_object();
  }
  w.end_array();
  write_sweep_fields(w, sweep);
  w.end_object();
  return w.str();
}

FEstimate mc_estimate_F(int d, double t, MetricMode mode, std::size_t samples, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("t must lie in [0, 1]");
  if (samples < 1000) throw InvalidArgument("at least 1000 samples are required");
  Engine rng = make_engine(seed, Stream::Auxiliary);
  const auto dim = static_cast<std::size_t>(d);
  std::vector<double> p(dim), q(dim);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& x : p) x = uniform01(rng);
    for (auto& x : q) x = uniform01(rng);
    if (distance(p, q, mode) <= t) ++hits;
  }
  FEstimate out;
  out.samples = samples;
  out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
  return out;
}

bool RateScanReport::passed() const {
  return negative_count == 0 && max_equality_i1 <= 1e-12 && min_scaled_margin >= 0.0 &&
         min_small_perturbation_i1 > 0.0 && max_i2_on_manifold_error == 0.0 && i2_off_manifold_finite == 0;
}

std::string RateScanReport::to_json() const {
  JsonWriter w;
  w.begin_object();
  w.key("trials").value(trials);
  w.key("negative_count").value(negative_count);
  w.key("min_random_i1").value(min_random_i1);
  w.key("max_random_i1").value(max_random_i1);
  w.key("max_equality_i1").value(max_equality_i1);
  w.key("min_scaled_margin").value(min_scaled_margin);
  w.key("min_small_perturbation_i1").value(min_small_perturbation_i1);
  w.key("max_i2_on_manifold_error").value(max_i2_on_manifold_error);
  w.key("i2_off_manifold_finite").value(i2_off_manifold_finite);
  w.key("tolerance").value(tolerance);
  w.key("passed").value(passed());
  w.end_object();
  return w.str();
}

RateScanReport rate_scan(const ProbMeasure& nu, const RadiusKernel& kernel, int d, std::size_t trials,
                         std::uint64_t seed, double tol) {
  if (trials < 1) throw InvalidArgument("rate scan needs at least one trial");
  if (nu.size() != kernel.size()) throw InvalidArgument("rate scan: nu and kernel sizes differ");
  const std::size_t k = nu.size();
  const double rho = ball_volume(d);
  const double phi_scaled = 1.5 * std::log(1.5) - 0.5;
  Engine rng = make_engine(seed, Stream::Auxiliary);

  RateScanReport rep;
  rep.trials = trials;
  rep.tolerance = tol;
  rep.min_random_i1 = kInfinity;
  rep.max_random_i1 = -kInfinity;
  rep.min_scaled_margin = kInfinity;
  rep.min_small_perturbation_i1 = kInfinity;

  std::vector<double> w(k);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    // Dirichlet(1, ..., 1) via normalized exponentials.
    double total = 0.0;
    for (auto& x : w) total += (x = -std::log1p(-uniform01(rng)));
    for (auto& x : w) x /= total;
    const ProbMeasure omega(w);
    const FiniteMeasure2 base = product_measure(omega, kernel, rho);

    rep.max_equality_i1 = std::max(rep.max_equality_i1, std::abs(rate_i1(omega, base, kernel, d)));

    SquareMatrix scaled = base.weights();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) scaled(a, b) *= 1.5;
    const double bound = 0.5 * base.mass() * phi_scaled;
    const double scaled_i1 = rate_i1(omega, FiniteMeasure2(scaled), kernel, d);
    rep.min_scaled_margin = std::min(rep.min_scaled_margin, scaled_i1 - bound * (1.0 - 1e-12));

    SquareMatrix random = base.weights();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        const double factor = std::exp(2.0 * uniform01(rng) - 1.0);
        random(a, b) *= factor;
        random(b, a) = random(a, b);
      }
    const double random_i1 = rate_i1(omega, FiniteMeasure2(random), kernel, d);
    if (random_i1 < 0.0) ++rep.negative_count;
    rep.min_random_i1 = std::min(rep.min_random_i1, random_i1);
    rep.max_random_i1 = std::max(rep.max_random_i1, random_i1);

    // One symmetric entry pair moved by a relative amount in [1e-3, 0.5].
    std::vector<std::pair<std::size_t, std::size_t>> charged;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b)
        if (base(a, b) > 0.0) charged.emplace_back(a, b);
    if (!charged.empty()) {
      const auto [a, b] = charged[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(charged.size()))];
      const double size = 1e-3 + uniform01(rng) * (0.5 - 1e-3);
      const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
      SquareMatrix nudged = base.weights();
      nudged(a, b) *= 1.0 + sign * size;
      nudged(b, a) = nudged(a, b);
      rep.min_small_perturbation_i1 =
          std::min(rep.min_small_perturbation_i1, rate_i1(omega, FiniteMeasure2(nudged), kernel, d));

      SquareMatrix off = base.weights();
      off(a, b) += 10.0 * tol;
      off(b, a) = off(a, b);
      if (std::isfinite(rate_i2(omega, FiniteMeasure2(off), nu, kernel, d, tol))) ++rep.i2_off_manifold_finite;
    }

    const double on = rate_i2(omega, base, nu, kernel, d, tol);
    rep.max_i2_on_manifold_error = std::max(rep.max_i2_on_manifold_error, std::abs(on - rel_entropy_prob(omega, nu)));
  }
  return rep;
}

}  // namespace cgrg

#include "cgrg/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cgrg/measures.hpp"

namespace cgrg {

namespace {

// x ln(x / y) with the usual conventions.
double kl_term(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInfinity;
  return x * std::log(x / y);
}

// count * log_value, where a zero count kills a -inf log.
double weighted_log(double count, double log_value) { return count == 0.0 ? 0.0 : count * log_value; }

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
}

std::string color_pair(Color a, Color b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

double rel_entropy_prob(const ProbMeasure& omega, const ProbMeasure& nu) {
  require_same_size(omega.size(), nu.size(), "rel_entropy_prob");
  double h = 0.0;
  for (std::size_t a = 0; a < omega.size(); ++a) h += kl_term(omega[a], nu[a]);
  return h;
}

double rel_entropy_finite(const FiniteMeasure2& pi, const FiniteMeasure2& reference) {
  require_same_size(pi.size(), reference.size(), "rel_entropy_finite");
  double h = 0.0;
  const auto x = pi.weights().data();
  const auto y = reference.weights().data();
  for (std::size_t i = 0; i < x.size(); ++i) h += kl_term(x[i], y[i]);
  return h;
}

double near_entropy(const FiniteMeasure2& pi, const ProbMeasure& omega, const RadiusKernel& kernel, int d) {
  require_same_size(pi.size(), omega.size(), "near_entropy");
  const FiniteMeasure2 reference = product_measure(omega, kernel, ball_volume(d));
  // H(pi || ref) + ||ref|| - ||pi||, accumulated entry by entry so the mass
  // correction cancels locally instead of across the whole sum.
  const auto x = pi.weights().data();
  const auto y = reference.weights().data();
  double h = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double term = kl_term(x[i], y[i]);
    if (std::isinf(term)) return kInfinity;
    h += term + (y[i] - x[i]);
  }
  return h;
}

double rate_i1(const ProbMeasure& omega, const FiniteMeasure2& pi, const RadiusKernel& kernel, int d) {
  return 0.5 * near_entropy(pi, omega, kernel, d);
}

double rate_i2(const ProbMeasure& omega, const FiniteMeasure2& pi, const ProbMeasure& nu, const RadiusKernel& kernel,
               int d, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("rate_i2 tolerance must be nonnegative");
  require_same_size(omega.size(), nu.size(), "rate_i2");
  require_same_size(pi.size(), omega.size(), "rate_i2");
  const FiniteMeasure2 manifold = product_measure(omega, kernel, ball_volume(d));
  if (max_abs_diff(pi.weights(), manifold.weights()) > tol) return kInfinity;
  return rel_entropy_prob(omega, nu);
}

LogLikelihood log_likelihood_terms(const Instance& instance) {
  if (instance.n == 0) throw InvalidArgument("log-likelihood requires n >= 1");
  const ModelSpec& spec = instance.spec;
  const std::size_t k = spec.colors();
  LogLikelihood ll;

  std::vector<double> count(k, 0.0);
  for (Color c : instance.colors) count.at(c) += 1.0;
  for (Color a = 0; a < k; ++a) ll.colors += weighted_log(count[a], std::log(spec.nu[a]));
  if (instance.n < 2) return ll;

  const SquareMatrix p = connection_prob(spec, instance.n);
  const SquareMatrix linked = edge_counts_by_color(instance);
  for (Color a = 0; a < k; ++a)
    for (Color b = a; b < k; ++b) {
      const double pairs = a == b ? count[a] * (count[a] - 1.0) / 2.0 : count[a] * count[b];
      const double e = linked(a, b);
      const double absent = pairs - e;
      if (e > 0.0 && p(a, b) == 0.0)
        ll.diagnostic += "edge between colors " + color_pair(a, b) + " has connection probability 0; ";
      if (absent > 0.0 && p(a, b) == 1.0)
        ll.diagnostic += "missing link between colors " + color_pair(a, b) + " has probability 0; ";
      ll.edges += weighted_log(e, std::log(p(a, b)));
      ll.non_edges += weighted_log(absent, std::log1p(-p(a, b)));
    }
  return ll;
}

double log_likelihood(const Instance& instance) { return log_likelihood_terms(instance).total(); }

double log_likelihood_naive(const Instance& instance) {
  if (instance.n == 0) throw InvalidArgument("log-likelihood requires n >= 1");
  const ModelSpec& spec = instance.spec;
  double ll = 0.0;
  for (Color c : instance.colors) ll += std::log(spec.nu[c]);
  if (instance.n < 2) return ll;

  const SquareMatrix p = connection_prob(spec, instance.n);
  auto edge = instance.edges.begin();
  for (std::uint32_t u = 0; u < instance.n; ++u)
    for (std::uint32_t v = u + 1; v < instance.n; ++v) {
      const double puv = p(instance.colors[u], instance.colors[v]);
      if (edge != instance.edges.end() && edge->u == u && edge->v == v) {
        ++edge;
        ll += std::log(puv);
      } else {
        ll += std::log1p(-puv);
      }
    }
  return ll;
}

double aep_statistic(const Instance& instance) {
  if (instance.n < 2) throw InvalidArgument("AEP statistic requires n >= 2");
  const double ll = log_likelihood(instance);
  if (std::isinf(ll)) return kInfinity;
  const double n = static_cast<double>(instance.n);
  const double ln_n = std::log(n);
  return -ll / (n * ln_n * ln_n);
}

namespace {
double quadratic_form(const ProbMeasure& nu, const RadiusKernel& kernel) {
  require_same_size(nu.size(), kernel.size(), "kernel quadratic form");
  double s = 0.0;
  for (Color a = 0; a < nu.size(); ++a)
    for (Color b = 0; b < nu.size(); ++b) s += nu[a] * kernel(a, b) * nu[b];
  return s;
}
}  // namespace

double aep_limit(const ProbMeasure& nu, const RadiusKernel& kernel, int d) {
  return 0.5 * ball_volume(d) * quadratic_form(nu, kernel);
}

double entropy_bits(const ProbMeasure& nu, const RadiusKernel& kernel) {
  return quadratic_form(nu, kernel) / (2.0 * std::numbers::ln2);
}

double code_length_bits(std::size_t n, const ProbMeasure& nu, const RadiusKernel& kernel, int d) {
  if (n < 2) throw InvalidArgument("code length requires n >= 2");
  const double nd = static_cast<double>(n);
  const double scale = nd * std::log(nd) * std::log(nd);
  const double bits = scale * ball_volume(d) * entropy_bits(nu, kernel);
  const double via_limit = scale * aep_limit(nu, kernel, d) / std::numbers::ln2;
  if (std::abs(bits - via_limit) > 1e-12 * std::max(std::abs(bits), std::abs(via_limit)))
    throw std::logic_error("code length identity violated");
  return bits;
}

double shannon_entropy(const ProbMeasure& nu) {
  double h = 0.0;
  for (double x : nu.weights())
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

double expected_neg_log_likelihood(const ModelSpec& spec, std::size_t n) {
  const double nd = static_cast<double>(n);
  double expected = nd * shannon_entropy(spec.nu.measure());
  if (n < 2) return expected;
  const SquareMatrix p = connection_prob(spec, n);
  double per_pair = 0.0;
  for (Color a = 0; a < spec.colors(); ++a)
    for (Color b = 0; b < spec.colors(); ++b) per_pair += spec.nu[a] * spec.nu[b] * binary_entropy(p(a, b));
  return expected + nd * (nd - 1.0) / 2.0 * per_pair;
}

AepDecomposition aep_decomposition(const Instance& instance) {
  if (instance.n < 2) throw InvalidArgument("AEP decomposition requires n >= 2");
  const ModelSpec& spec = instance.spec;
  const ProbMeasure l1 = sensor_measure(instance);
  const FiniteMeasure2 l2 = link_measure(instance);
  const SquareMatrix p = connection_prob(spec, instance.n);
  const double n = static_cast<double>(instance.n);
  const double ln_n = std::log(n);
  const std::size_t k = spec.colors();

  AepDecomposition out;
  for (Color a = 0; a < k; ++a) {
    out.sensor -= weighted_log(l1[a], std::log(spec.nu[a])) / (ln_n * ln_n);
    out.diagonal += 0.5 * weighted_log(l1[a], std::log1p(-p(a, a))) / (ln_n * ln_n);
    for (Color b = 0; b < k; ++b) {
      out.link -= 0.5 * weighted_log(l2(a, b), std::log(p(a, b)) - std::log1p(-p(a, b))) / ln_n;
      out.pairs -= 0.5 * weighted_log(l1[a] * l1[b], std::log1p(-p(a, b))) / (ln_n * ln_n / n);
    }
  }
  return out;
}

}  // namespace cgrg

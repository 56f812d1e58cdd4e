#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "cgrg/codec.hpp"
#include "cgrg/experiments.hpp"
#include "cgrg/infotheory.hpp"
#include "cgrg/json_io.hpp"
#include "cgrg/measures.hpp"
#include "cgrg/model.hpp"

namespace cgrg::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string in;
  std::string ns;
  std::optional<std::size_t> n;
  std::optional<std::size_t> reps;
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::string metric;
  unsigned threads = 0;
  std::optional<std::size_t> trials;
  std::size_t samples = 1'000'000;
  int d = 2;
  double t = 0.3;
};

/// Run configuration: the model plus run parameters from the config file,
/// overridden by command-line flags.
struct Config {
  ModelSpec spec;
  std::optional<std::size_t> n;
  std::vector<std::size_t> ns;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<double> tolerance;
  std::optional<std::size_t> trials;
  std::string out;
};

const std::set<std::string> kConfigKeys = {"d",    "alphabet", "nu",      "lambda",    "metric", "n",   "ns",
                                           "reps", "seed",     "epsilon", "tolerance", "trials", "out"};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

/// Writes to a temporary sibling and renames it over the target.
void write_file_atomic(const std::string& path, std::string_view content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
  } else {
    write_file_atomic(path, content);
  }
}

std::vector<std::size_t> parse_ns(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidArgument("--ns expects a comma-separated list of integers, got '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

Config load_config(const Flags& flags) {
  if (flags.config.empty()) throw InvalidArgument("--config is required for this command");
  json j;
  try {
    j = json::parse(read_file(flags.config));
  } catch (const json::exception& e) {
    throw InvalidArgument("config '" + flags.config + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!kConfigKeys.contains(key)) throw InvalidArgument("unknown config key '" + key + "'");
  if (!flags.metric.empty()) j["metric"] = flags.metric;

  Config c;
  c.spec = spec_from_json(j);
  try {
    if (j.contains("n")) c.n = j["n"].get<std::size_t>();
    if (j.contains("ns")) c.ns = j["ns"].get<std::vector<std::size_t>>();
    if (j.contains("reps")) c.reps = j["reps"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
    if (j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }

  if (flags.n) c.n = flags.n;
  if (!flags.ns.empty()) c.ns = parse_ns(flags.ns);
  if (flags.reps) c.reps = flags.reps;
  if (flags.seed) c.seed = flags.seed;
  if (flags.epsilon) c.epsilon = flags.epsilon;
  if (flags.tol) c.tolerance = flags.tol;
  if (flags.trials) c.trials = flags.trials;
  if (!flags.out.empty()) c.out = flags.out;
  return c;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed) {
  if (!seed) throw InvalidArgument("randomized commands require an explicit --seed");
  return *seed;
}

Instance load_instance(const Flags& flags) {
  if (flags.in.empty()) throw InvalidArgument("--in is required for this command");
  return instance_from_json(read_file(flags.in));
}

// Shape checks needed before computing on an instance; validate does the full job.
Instance load_well_formed_instance(const Flags& flags) {
  Instance inst = load_instance(flags);
  if (inst.colors.size() != inst.n || inst.positions.size() != inst.n)
    throw InvalidArgument("instance sizes disagree with n = " + std::to_string(inst.n));
  for (Color c : inst.colors)
    if (c >= inst.spec.colors()) throw InvalidArgument("color index " + std::to_string(c) + " out of range");
  for (const Edge& e : inst.edges)
    if (e.u >= inst.n || e.v >= inst.n) throw InvalidArgument("edge endpoint out of range");
  return inst;
}

void warn_if_cube(const ModelSpec& spec, std::ostream& err) {
  if (spec.metric == MetricMode::Cube)
    err << "warning: cube metric; the likelihood uses p_n = rho(d) r^d, which ignores boundary effects and is "
           "only approximate\n";
}

int cmd_generate(const Flags& flags, std::ostream& out) {
  const Config c = load_config(flags);
  if (!c.n) throw InvalidArgument("generate needs n (config key \"n\" or --n)");
  const Instance inst = generate(c.spec, *c.n, require_seed(c.seed));
  emit(c.out, instance_to_json(inst), out);
  return kOk;
}

int cmd_validate(const Flags& flags, std::ostream& out) {
  const Instance inst = load_instance(flags);
  const auto violations = validate(inst);
  JsonWriter w;
  w.begin_object();
  w.key("n").value(inst.n);
  w.key("edge_count").value(inst.edges.size());
  w.key("violations").begin_array();
  for (const auto& v : violations) {
    w.begin_object();
    w.key("kind").value(to_string(v.kind));
    w.key("message").value(v.message);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  emit(flags.out, w.str(), out);
  return violations.empty() ? kOk : kFailure;
}

int cmd_measures(const Flags& flags, std::ostream& out) {
  const Instance inst = load_well_formed_instance(flags);
  emit(flags.out, measures_to_json(empirical_pair(inst)), out);
  return kOk;
}

int cmd_loglik(const Flags& flags, std::ostream& out, std::ostream& err) {
  const Instance inst = load_well_formed_instance(flags);
  warn_if_cube(inst.spec, err);
  const LogLikelihood ll = log_likelihood_terms(inst);
  const ProbMeasure& nu = inst.spec.nu.measure();
  JsonWriter w;
  w.begin_object();
  w.key("n").value(inst.n);
  w.key("edge_count").value(inst.edges.size());
  w.key("log_likelihood").value(ll.total());
  w.key("colors_term").value(ll.colors);
  w.key("edges_term").value(ll.edges);
  w.key("non_edges_term").value(ll.non_edges);
  if (!ll.diagnostic.empty()) w.key("diagnostic").value(ll.diagnostic);
  if (inst.n >= 2) {
    w.key("aep_statistic").value(aep_statistic(inst));
    w.key("expected_neg_log_likelihood").value(expected_neg_log_likelihood(inst.spec, inst.n));
    w.key("code_length_bits").value(code_length_bits(inst.n, nu, inst.spec.lambda, inst.spec.d));
  }
  w.key("aep_limit").value(aep_limit(nu, inst.spec.lambda, inst.spec.d));
  w.key("entropy_bits").value(entropy_bits(nu, inst.spec.lambda));
  w.end_object();
  emit(flags.out, w.str(), out);
  return kOk;
}

struct SweepInputs {
  Config config;
  std::uint64_t seed;
  std::size_t reps;
};

SweepInputs sweep_inputs(const Flags& flags) {
  SweepInputs s{load_config(flags), 0, 0};
  s.seed = require_seed(s.config.seed);
  if (s.config.ns.empty()) throw InvalidArgument("sweeps need ns (config key \"ns\" or --ns)");
  if (!s.config.reps) throw InvalidArgument("sweeps need reps (config key \"reps\" or --reps)");
  s.reps = *s.config.reps;
  return s;
}

int cmd_aep_sweep(const Flags& flags, std::ostream& out) {
  const SweepInputs s = sweep_inputs(flags);
  SweepOptions opts;
  opts.epsilon = s.config.epsilon;
  opts.threads = flags.threads;
  const AepSweep sweep = aep_sweep(s.config.spec, s.config.ns, s.reps, s.seed, opts);
  if (!s.config.out.empty()) write_file_atomic(s.config.out, sweep.sweep.to_csv());
  out << sweep.to_json() << '\n';
  return kOk;
}

int cmd_wlln_sweep(const Flags& flags, std::ostream& out) {
  const SweepInputs s = sweep_inputs(flags);
  SweepOptions opts;
  opts.threads = flags.threads;
  const WllnSweep sweep = wlln_sweep(s.config.spec, s.config.ns, s.reps, s.seed, opts);
  if (!s.config.out.empty()) write_file_atomic(s.config.out, sweep.sweep.to_csv());
  out << sweep.to_json() << '\n';
  return kOk;
}

int cmd_rate(const Flags& flags, std::ostream& out) {
  const Config c = load_config(flags);
  const RateScanReport report = rate_scan(c.spec.nu.measure(), c.spec.lambda, c.spec.d, c.trials.value_or(10'000),
                                          require_seed(c.seed), c.tolerance.value_or(1e-9));
  emit(c.out, report.to_json(), out);
  return report.passed() ? kOk : kFailure;
}

int cmd_encode(const Flags& flags, std::ostream& out) {
  if (flags.out.empty()) throw InvalidArgument("encode needs --out");
  const Instance inst = load_well_formed_instance(flags);
  const CodedGraph coded = encode(inst);
  const auto bytes = serialize(coded);
  write_file_atomic(flags.out, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  JsonWriter w;
  w.begin_object();
  w.key("n").value(inst.n);
  w.key("payload_bytes").value(coded.payload.size());
  w.key("payload_bits").value(coded.payload_bits());
  w.key("ideal_bits").value(-log_likelihood(inst) / std::log(2.0));
  if (inst.n >= 2)
    w.key("code_length_bits")
        .value(code_length_bits(inst.n, inst.spec.nu.measure(), inst.spec.lambda, inst.spec.d));
  w.key("file_bytes").value(bytes.size());
  w.end_object();
  out << w.str() << '\n';
  return kOk;
}

int cmd_decode(const Flags& flags, std::ostream& out) {
  if (flags.in.empty()) throw InvalidArgument("decode needs --in");
  const std::string raw = read_file(flags.in);
  const CodedGraph coded = deserialize(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
  const DecodedGraph g = decode(coded);
  JsonWriter w;
  w.begin_object();
  w.key("n").value(coded.n);
  w.key("colors").begin_array();
  for (Color c : g.colors) w.value(static_cast<std::uint64_t>(c));
  w.end_array();
  w.key("edges").begin_array();
  for (const Edge& e : g.edges)
    w.begin_array().value(static_cast<std::uint64_t>(e.u)).value(static_cast<std::uint64_t>(e.v)).end_array();
  w.end_array();
  w.end_object();
  emit(flags.out, w.str(), out);
  return kOk;
}

int cmd_oracle_f(const Flags& flags, std::ostream& out) {
  const MetricMode mode = flags.metric.empty() ? MetricMode::Torus : parse_metric(flags.metric);
  const FEstimate f = mc_estimate_F(flags.d, flags.t, mode, flags.samples, require_seed(flags.seed));
  const double formula = ball_volume(flags.d) * std::pow(flags.t, flags.d);
  JsonWriter w;
  w.begin_object();
  w.key("d").value(flags.d);
  w.key("t").value(flags.t);
  w.key("metric").value(to_string(mode));
  w.key("samples").value(f.samples);
  w.key("estimate").value(f.estimate);
  w.key("std_error").value(f.std_error);
  w.key("ball_formula").value(formula);
  w.key("z_score").value(f.std_error > 0.0 ? (f.estimate - formula) / f.std_error : 0.0);
  w.end_object();
  emit(flags.out, w.str(), out);
  return kOk;
}

std::string report_row(const Instance& inst) {
  const AepDecomposition t = aep_decomposition(inst);
  const double limit = aep_limit(inst.spec.nu.measure(), inst.spec.lambda, inst.spec.d);
  return fmt::format("{:>10} {:>14.6e} {:>14.6f} {:>14.6e} {:>14.6e} {:>14.6f} {:>14.6f} {:>10.6f}\n", inst.n,
                     t.sensor, t.link, t.pairs, t.diagonal, t.total(), aep_statistic(inst), limit);
}

int cmd_report(const Flags& flags, std::ostream& out, std::ostream& err) {
  std::string table = "# sensor   = -sum L1(a) ln nu(a) / (ln n)^2\n"
           "# link     = -1/2 sum L2(a,b) ln(p/(1-p)) / ln n        (tends to the limit)\n"
           "# pairs    = -1/2 sum L1(a)L1(b) ln(1-p) / ((ln n)^2/n)\n"
           "# diagonal = +1/2 sum L1(a) ln(1-p(a,a)) / (ln n)^2\n";
  table += fmt::format("{:>10} {:>14} {:>14} {:>14} {:>14} {:>14} {:>14} {:>10}\n", "n", "sensor", "link", "pairs",
                       "diagonal", "sum", "statistic", "limit");
  if (!flags.in.empty()) {
    const Instance inst = load_well_formed_instance(flags);
    warn_if_cube(inst.spec, err);
    table += report_row(inst);
  } else {
    const Config c = load_config(flags);
    warn_if_cube(c.spec, err);
    std::vector<std::size_t> ns = c.ns;
    if (ns.empty() && c.n) ns.push_back(*c.n);
    if (ns.empty()) throw InvalidArgument("report needs --in, or a config with ns/n");
    const std::uint64_t seed = require_seed(c.seed);
    for (std::size_t n : ns) table += report_row(generate(c.spec, n, replicate_seed(seed, n, 0)));
  }
  emit(flags.out, table, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored geometric random graph simulator and entropy toolkit", "cgrg"};
  app.require_subcommand(1);
  Flags f;

  auto add_config = [&](CLI::App* s) { s->add_option("--config", f.config, "Model/run configuration (JSON)"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", f.seed, "Master seed (u64)"); };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", f.out, "Output path (written atomically)"); };
  auto add_in = [&](CLI::App* s) { s->add_option("--in", f.in, "Input path"); };
  auto add_metric = [&](CLI::App* s) {
    s->add_option("--metric", f.metric, "Boundary convention")->check(CLI::IsMember({"torus", "cube"}));
  };
  auto add_sweep = [&](CLI::App* s) {
    s->add_option("--ns", f.ns, "Comma-separated list of graph sizes");
    s->add_option("--reps", f.reps, "Replicates per size (>= 2)");
    s->add_option("--threads", f.threads, "Worker cap (0 = all cores)");
  };

  auto* gen = app.add_subcommand("generate", "Sample an instance");
  add_config(gen), add_seed(gen), add_out(gen), add_metric(gen);
  gen->add_option("--n", f.n, "Number of vertices");

  auto* val = app.add_subcommand("validate", "Re-check every instance invariant by brute force");
  add_in(val), add_out(val);

  auto* mea = app.add_subcommand("measures", "Empirical sensor and link measures");
  add_in(mea), add_out(mea);

  auto* ll = app.add_subcommand("loglik", "Exact log-likelihood, AEP statistic and bit counts");
  add_in(ll), add_out(ll);

  auto* aep = app.add_subcommand("aep-sweep", "Monte Carlo check of the AEP limit");
  add_config(aep), add_seed(aep), add_out(aep), add_metric(aep), add_sweep(aep);
  aep->add_option("--epsilon", f.epsilon, "Band half-width (default: half the predicted gap at the largest n)");

  auto* wl = app.add_subcommand("wlln-sweep", "Monte Carlo check of the weak law for L1 and L2");
  add_config(wl), add_seed(wl), add_out(wl), add_metric(wl), add_sweep(wl);

  auto* rate = app.add_subcommand("rate", "Randomized scan of the rate-function zero sets");
  add_config(rate), add_seed(rate), add_out(rate);
  rate->add_option("--trials", f.trials, "Number of random trials (default 10000)");
  rate->add_option("--tol", f.tol,
                   "Max-entry distance under which I2 treats the link measure as on the constraint set "
                   "(default 1e-9)");

  auto* enc = app.add_subcommand("encode", "Range-code the colors and edges of an instance");
  add_in(enc), add_out(enc);

  auto* dec = app.add_subcommand("decode", "Decode a coded graph to colors and edges (JSON)");
  add_in(dec), add_out(dec);

  auto* orf = app.add_subcommand("oracle-f", "Monte Carlo estimate of P(|U1 - U2| <= t)");
  add_seed(orf), add_out(orf), add_metric(orf);
  orf->add_option("--d", f.d, "Dimension (>= 2)");
  orf->add_option("--t", f.t, "Distance threshold in [0,1]");
  orf->add_option("--samples", f.samples, "Number of point pairs (>= 1000)");

  auto* rep = app.add_subcommand("report", "Term-by-term decomposition of the AEP statistic");
  add_config(rep), add_seed(rep), add_out(rep), add_in(rep), add_metric(rep);
  rep->add_option("--ns", f.ns, "Comma-separated list of graph sizes");

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (gen->parsed()) return cmd_generate(f, out);
    if (val->parsed()) return cmd_validate(f, out);
    if (mea->parsed()) return cmd_measures(f, out);
    if (ll->parsed()) return cmd_loglik(f, out, err);
    if (aep->parsed()) return cmd_aep_sweep(f, out);
    if (wl->parsed()) return cmd_wlln_sweep(f, out);
    if (rate->parsed()) return cmd_rate(f, out);
    if (enc->parsed()) return cmd_encode(f, out);
    if (dec->parsed()) return cmd_decode(f, out);
    if (orf->parsed()) return cmd_oracle_f(f, out);
    if (rep->parsed()) return cmd_report(f, out, err);
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << '\n';
    return kRegimeError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const DecodeError& e) {
    err << "decode error: " << e.what() << '\n';
    return kIoError;
  } catch (const UncodableError& e) {
    err << "uncodable instance: " << e.what() << '\n';
    return kUncodable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace cgrg::cli

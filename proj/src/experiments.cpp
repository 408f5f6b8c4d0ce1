#include "probwb/experiments.hpp"

#include <cmath>
#include <numeric>

#include "probwb/exclusion.hpp"
#include "probwb/foursquare.hpp"
#include "probwb/ginibre.hpp"
#include "probwb/lis.hpp"
#include "probwb/mallows.hpp"
#include "probwb/parallel.hpp"
#include "probwb/qcomb.hpp"
#include "probwb/spectra.hpp"

namespace probwb {

namespace {

using nlohmann::json;
using std::to_string;

// Stream index reserved for fixed test-matrix draws, outside the trial range.
constexpr std::uint64_t kMatrixStream = 0x8000000000000000ULL;

struct MeanSd {
  double mean = 0.0, sd = 0.0, stderr_ = 0.0;
};

MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd m;
  if (v.empty()) return m;
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() < 2) return m;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  m.stderr_ = m.sd / std::sqrt(static_cast<double>(v.size()));
  return m;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

int positive_int(const RunConfig& cfg, const std::string& key, std::int64_t fallback) {
  const std::int64_t v = cfg.get_int(key, fallback);
  require(v >= 1 && v <= (1LL << 30), "parameter '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

double q_param(const RunConfig& cfg, double fallback) {
  const double q = cfg.get_double("q", fallback);
  require(q > 0.0 && q <= 1.0, "parameter 'q' must lie in (0, 1]");
  return q;
}

bool all_finite(const json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_structured()) {
    for (const auto& v : j)
      if (!all_finite(v)) return false;
  }
  return true;
}

RunResult run_mallows_sample(const RunConfig& cfg) {
  const int n = positive_int(cfg, "n", 10);
  const double q = q_param(cfg, 0.5);
  std::vector<Permutation> perms(cfg.trials);
  std::vector<double> inv(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.master_seed, static_cast<std::uint64_t>(t));
    perms[t] = q == 1.0 ? sample_uniform_fy(n, rng) : sample_mallows_fy(n, q, rng);
    inv[t] = static_cast<double>(inversions(perms[t]));
  });
  RunResult r;
  r.csv.header = {"trial", "inversions", "permutation"};
  std::vector<int> iv;
  for (int t = 0; t < cfg.trials; ++t) {
    r.csv.rows.push_back({to_string(t), to_string(static_cast<std::int64_t>(inv[t])), perms[t].to_string()});
    iv.push_back(static_cast<int>(inv[t]));
  }
  const MeanSd m = mean_sd(inv);
  r.estimates = {{"mean_inversions", m.mean}, {"stderr", m.stderr_}, {"sd", m.sd}};
  r.histogram = Histogram::integer_bins(iv);
  return r;
}

RunResult run_lis_hist(const RunConfig& cfg) {
  const int n = positive_int(cfg, "n", 1000);
  const double q = q_param(cfg, 1.0);
  std::vector<double> len(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.master_seed, static_cast<std::uint64_t>(t));
    const Permutation p = q == 1.0 ? sample_uniform_fy(n, rng) : sample_mallows_fy(n, q, rng);
    len[t] = lis_length(p.values());
  });
  RunResult r;
  r.csv.header = {"trial", "lis"};
  std::vector<int> iv;
  for (int t = 0; t < cfg.trials; ++t) {
    r.csv.rows.push_back({to_string(t), to_string(static_cast<int>(len[t]))});
    iv.push_back(static_cast<int>(len[t]));
  }
  const MeanSd m = mean_sd(len);
  const double scale = 2.0 * std::sqrt(static_cast<double>(n));
  r.estimates = {{"mean", m.mean},
                 {"stderr", m.stderr_},
                 {"sd", m.sd},
                 {"mean_over_2sqrt_n", m.mean / scale}};
  r.histogram = Histogram::integer_bins(iv);
  return r;
}

RunResult run_asep(const RunConfig& cfg) {
  FluctuationConfig fc;
  fc.n = positive_int(cfg, "n", 200);
  require(fc.n % 2 == 0 && fc.n >= 4, "parameter 'n' must be even and >= 4");
  fc.alpha = cfg.get_double("alpha", 0.5);
  fc.c = cfg.get_double("c", 1.0);
  require(fc.c > 0.0 && fc.c < std::pow(fc.n, fc.alpha), "parameters need 0 < c < n^alpha");
  const std::string obs = cfg.get_string("observable", "lis");
  require(obs == "lis" || obs == "midpoint", "parameter 'observable' must be lis or midpoint");
  fc.observable = obs == "lis" ? FluctuationObservable::WalkLis : FluctuationObservable::Midpoint;
  fc.burn_in = cfg.get_int("burn_in", -1);
  fc.swap_up = cfg.get_double("swap_up", -1.0);
  fc.swap_down = cfg.get_double("swap_down", -1.0);
  fc.trials = cfg.trials;
  fc.seed = cfg.master_seed;
  fc.threads = cfg.threads;
  const FluctuationSummary s = fluctuation_experiment(fc);
  RunResult r;
  r.csv.header = {"trial", "value"};
  for (std::size_t t = 0; t < s.samples.size(); ++t)
    r.csv.rows.push_back({to_string(t), format_double(s.samples[t])});
  json table = json::array();
  for (const auto& row : s.table)
    table.push_back({{"r", row.r}, {"empirical", row.empirical}, {"envelope", row.envelope}});
  r.estimates = {{"q", s.q},         {"mean", s.mean},
                 {"sd", s.sd},       {"stderr", s.sd / std::sqrt(static_cast<double>(s.samples.size()))},
                 {"mean_abs", s.mean_abs}, {"exceedance", table}};
  std::vector<int> iv;
  for (double v : s.samples) iv.push_back(static_cast<int>(std::lround(v)));
  r.histogram = Histogram::integer_bins(iv);
  return r;
}

CompressionConfig compression_config(const RunConfig& cfg) {
  CompressionConfig cc;
  cc.k = positive_int(cfg, "k", 30);
  cc.burn_in = cfg.get_int("burn_in", -1);
  cc.trials = cfg.trials;
  cc.seed = cfg.master_seed;
  cc.threads = cfg.threads;
  const std::string mode = cfg.get_string("mode", "chain");
  require(mode == "chain" || mode == "haar" || mode == "single",
          "parameter 'mode' must be chain, haar or single");
  cc.mode = mode == "chain" ? CompressionMode::Chain
            : mode == "haar" ? CompressionMode::Haar
                             : CompressionMode::SingleRotation;
  return cc;
}

RunResult compression_result(const CompressionSummary& s) {
  RunResult r;
  r.csv.header = {"trial", "distance"};
  for (std::size_t t = 0; t < s.distances.size(); ++t)
    r.csv.rows.push_back({to_string(t), format_double(s.distances[t])});
  json table = json::array();
  for (const auto& row : s.table)
    table.push_back({{"r", row.r}, {"empirical", row.empirical}, {"envelope", row.envelope}});
  const MeanSd m = mean_sd(s.distances);
  r.estimates = {{"mean_distance", s.mean_distance},
                 {"stderr", m.stderr_},
                 {"max_step_distance", s.max_step_distance},
                 {"step_bound", s.step_bound},
                 {"step_violations", s.step_violations},
                 {"rank_violations", s.rank_violations},
                 {"exceedance", table}};
  r.histogram = Histogram::uniform(0.0, 1.0, 40);
  for (double d : s.distances) r.histogram->add(d);
  return r;
}

template <typename Fn>
RunResult with_test_matrix(const RunConfig& cfg, int n, Fn&& fn) {
  const std::string which = cfg.get_string("matrix", "grid");
  Stream rng = derive_stream(cfg.master_seed, kMatrixStream);
  if (which == "grid") return fn(Eigen::MatrixXd(diagonal_grid_matrix(n)));
  if (which == "two-atom") return fn(Eigen::MatrixXd(two_atom_matrix(n)));
  if (which == "goe") return fn(goe_matrix(n, rng));
  if (which == "gue") return fn(gue_matrix(n, rng));
  throw UsageError("parameter 'matrix' must be grid, two-atom, goe or gue");
}

RunResult run_kac_compress(const RunConfig& cfg) {
  const int n = positive_int(cfg, "n", 60);
  CompressionConfig cc = compression_config(cfg);
  require(cc.k <= n, "parameter 'k' must not exceed n");
  return with_test_matrix(cfg, n, [&](const auto& G) {
    using Scalar = typename std::decay_t<decltype(G)>::Scalar;
    return compression_result(kac_compression_experiment<Scalar>(G, cc));
  });
}

RunResult run_thermo_compress(const RunConfig& cfg) {
  const int n = positive_int(cfg, "n", 60);
  CompressionConfig cc = compression_config(cfg);
  ThermoParams tp;
  tp.beta = cfg.get_double("beta", 1.0);
  tp.mu = cfg.get_double("mu", 1.0);
  tp.lambda = cfg.get_double("lambda", 0.0);
  require(tp.beta > 0.0 && tp.mu > 0.0 && tp.lambda >= 0.0,
          "parameters need beta > 0, mu > 0, lambda >= 0");
  return with_test_matrix(cfg, n, [&](const auto& G) {
    using Scalar = typename std::decay_t<decltype(G)>::Scalar;
    return compression_result(thermostat_compression_experiment<Scalar>(G, tp, cc));
  });
}

RunResult run_ginibre_moments(const RunConfig& cfg) {
  const int n = positive_int(cfg, "n", 100);
  MomentSignature sig{cfg.get_int_list("p", {2, 2}), cfg.get_int_list("q", {2, 2})};
  try {
    sig.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<cplx> vals(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Stream rng = derive_stream(cfg.master_seed, static_cast<std::uint64_t>(t));
    vals[t] = normalized_trace_word(sample_ginibre(n, rng), sig);
  });
  RunResult r;
  r.csv.header = {"trial", "re", "im"};
  std::vector<double> re, im;
  for (int t = 0; t < cfg.trials; ++t) {
    r.csv.rows.push_back({to_string(t), format_double(vals[t].real()), format_double(vals[t].imag())});
    re.push_back(vals[t].real());
    im.push_back(vals[t].imag());
  }
  const MeanSd mr = mean_sd(re), mi = mean_sd(im);
  r.estimates = {{"mean_re", mr.mean}, {"stderr_re", mr.stderr_}, {"mean_im", mi.mean},
                 {"stderr_im", mi.stderr_}};
  if (sig.total() <= 24) r.estimates["limit"] = limit_moment_matchings(sig);
  return r;
}

RunResult run_ginibre_density(const RunConfig& cfg) {
  const int N = positive_int(cfg, "N", 100);
  const int points = positive_int(cfg, "points", 41);
  const double rmax = cfg.get_double("rmax", 1.5);
  require(rmax > 0.0, "parameter 'rmax' must be positive");
  require(N >= 2, "parameter 'N' must be >= 2");
  RunResult r;
  r.csv.header = {"radius", "r1", "r1_recursion", "o1"};
  double mass = 0.0;
  for (int i = 0; i < points; ++i) {
    const double rad = points == 1 ? rmax : rmax * i / (points - 1);
    const cplx z(rad, 0.0);
    r.csv.rows.push_back({format_double(rad), format_double(r1_density(N, z)),
                          format_double(r1_density(N, z, DensityMethod::Recursion)),
                          format_double(o1_density(N, z))});
  }
  mass = o1_moment_integral(N, 0);
  r.estimates = {{"N", N}, {"o1_total_mass", mass}, {"o1_mass_over_N", mass / N}};
  return r;
}

RunResult run_ginibre_constraint(const RunConfig& cfg) {
  const int N = positive_int(cfg, "N", 10000);
  require(N >= 2, "parameter 'N' must be >= 2");
  const std::vector<int> ps = cfg.get_int_list("p", {0, 1, 2});
  RunResult r;
  r.csv.header = {"p", "o1_integral", "leading", "o1_excess", "o2_bulk", "total_bulk", "log_coefficient"};
  json rows = json::array();
  for (int p : ps) {
    require(p >= 0, "parameter 'p' must be nonnegative");
    const ConstraintReport c = constraint_check(N, p);
    r.csv.rows.push_back({to_string(p), format_double(c.o1_integral), format_double(c.leading),
                          format_double(c.o1_excess), format_double(c.o2_bulk_integral),
                          format_double(c.total_bulk), format_double(c.log_coefficient)});
    rows.push_back({{"p", p}, {"o1_excess", c.o1_excess}, {"total_bulk", c.total_bulk}});
  }
  r.estimates = {{"N", N}, {"rows", rows}};
  return r;
}

RunResult run_qstirling(const RunConfig& cfg) {
  const double beta = cfg.get_double("beta", 1.0);
  require(beta >= 0.0, "parameter 'beta' must be nonnegative");
  const std::vector<int> ns = cfg.get_int_list("n", {100, 1000, 10000});
  const StirlingCoefficients c = stirling_coefficients(beta);
  RunResult r;
  r.csv.header = {"n", "remainder"};
  for (int n : ns) {
    require(n >= 1, "parameter 'n' entries must be positive");
    r.csv.rows.push_back({to_string(n), format_double(q_stirling_remainder(n, beta))});
  }
  r.estimates = {{"beta", beta}, {"A", c.A}, {"B", c.B}};
  return r;
}

RunResult run_foursquare(const RunConfig& cfg) {
  const std::vector<int> counts = cfg.get_int_list("counts", {2, 1, 1, 2});
  require(counts.size() == 4, "parameter 'counts' needs four entries n11,n12,n21,n22");
  QuadrantCounts c;
  for (int i = 0; i < 4; ++i) {
    require(counts[i] >= 0, "counts must be nonnegative");
    c.n[i] = counts[i];
  }
  const double s = cfg.get_double("s", 0.5), t = cfg.get_double("t", 0.5);
  require(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0, "splits s, t must lie in (0, 1)");
  c.p = QuadrantCounts::areas(s, t);
  require(c.total() >= 1, "counts must not all be zero");
  const double n = static_cast<double>(c.total());
  double log_q;
  if (cfg.params.count("beta")) {
    const double beta = cfg.get_double("beta", 0.0);
    require(beta >= 0.0, "parameter 'beta' must be nonnegative");
    log_q = -beta / n;
  } else {
    log_q = checked_log_q(q_param(cfg, 0.5));
  }
  const double beta = -log_q * n;
  RunResult r;
  r.csv.header = {"n11", "n12", "n21", "n22", "log_prob", "log_multinomial", "log_w_q"};
  r.csv.rows.push_back({to_string(c.n[0]), to_string(c.n[1]), to_string(c.n[2]), to_string(c.n[3]),
                        format_double(log_prob_exact_lq(c, log_q)), format_double(log_multinomial(c)),
                        format_double(log_w_q_lq(c, log_q))});
  r.estimates = {{"beta", beta}, {"log_prob", log_prob_exact_lq(c, log_q)},
                 {"w_q_rate", log_w_q_lq(c, log_q) / n}};
  if (c.n[0] > 0 && c.n[1] > 0 && c.n[2] > 0 && c.n[3] > 0) {
    std::array<double, 4> nu{};
    for (int i = 0; i < 4; ++i) nu[i] = static_cast<double>(c.n[i]) / n;
    r.estimates["asymptotic_rate"] = asymptotic_rate(nu, beta);
    r.estimates["residual"] = finite_n_residual(c, beta);
    r.estimates["b_constant"] = b_constant(nu, beta);
  }
  return r;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{
      "mallows-sample", "lis-hist",        "asep-run",           "kac-compress", "thermo-compress",
      "ginibre-moments", "ginibre-density", "ginibre-constraint", "qstirling",    "foursquare"};
  return names;
}

RunResult run_experiment(const RunConfig& cfg) {
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  if (cfg.threads < 1) throw UsageError("--threads must be positive");
  RunResult r;
  const std::string& s = cfg.subcommand;
  if (s == "mallows-sample") r = run_mallows_sample(cfg);
  else if (s == "lis-hist") r = run_lis_hist(cfg);
  else if (s == "asep-run") r = run_asep(cfg);
  else if (s == "kac-compress") r = run_kac_compress(cfg);
  else if (s == "thermo-compress") r = run_thermo_compress(cfg);
  else if (s == "ginibre-moments") r = run_ginibre_moments(cfg);
  else if (s == "ginibre-density") r = run_ginibre_density(cfg);
  else if (s == "ginibre-constraint") r = run_ginibre_constraint(cfg);
  else if (s == "qstirling") r = run_qstirling(cfg);
  else if (s == "foursquare") r = run_foursquare(cfg);
  else throw UsageError("unknown subcommand '" + s + "'");
  r.numeric_ok = all_finite(r.estimates);
  return r;
}

json summary_json(const RunConfig& cfg, const RunResult& result, double wall_seconds) {
  return {{"run_id", run_id(cfg)},
          {"config", cfg.to_json()},
          {"estimates", result.estimates},
          {"wall_time_seconds", wall_seconds},
          {"code_version", PROBWB_VERSION},
          {"numeric_ok", result.numeric_ok}};
}

void write_outputs(const RunConfig& cfg, const RunResult& result, double wall_seconds) {
  const std::string base = cfg.out_dir + "/" + cfg.subcommand;
  const json cfg_echo = {{"run_id", run_id(cfg)}, {"config", cfg.to_json()}, {"code_version", PROBWB_VERSION}};
  write_text_file(base + ".csv", "# " + cfg_echo.dump() + "\n" + result.csv.to_string());
  write_text_file(base + ".json", summary_json(cfg, result, wall_seconds).dump(2) + "\n");
  if (result.histogram)
    write_text_file(base + ".svg",
                    "<!-- " + cfg_echo.dump() + " -->\n" + result.histogram->to_svg(cfg.subcommand));
}

}  // namespace probwb

#include "wwrank/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "wwrank/rank_transform.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/stats.hpp"

namespace wwrank {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

// Second independent seed for the same replicate (tie breaking, restarts).
std::uint64_t side_seed(std::uint64_t stream) { return mix64(stream ^ 0xA5A5A5A5A5A5A5A5ULL); }

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json describe(const SeparationEstimate& e) {
  json j{{"value", e.value}};
  if (e.method == SeparationEstimate::Method::closed_form) {
    j["method"] = "closed_form";
  } else {
    j["method"] = "monte_carlo";
    j["samples"] = e.samples;
    j["std_error"] = e.std_error;
  }
  return j;
}

std::string_view to_string(Tail tail) { return tail == Tail::upper ? "upper" : "two_sided"; }

Tail parse_tail(std::string_view s) {
  if (s == "two_sided") return Tail::two_sided;
  if (s == "upper") return Tail::upper;
  throw Error(Errc::parse, "unknown tail '" + std::string(s) + "' (expected two_sided or upper)");
}

std::string k_label(const ExtraRanks& k) { return k.is_infinite() ? "inf" : std::to_string(*k.k); }

}  // namespace

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string_view to_string(Model model) noexcept {
  switch (model) {
    case Model::homogeneous: return "homogeneous";
    case Model::two_block: return "two_block";
    case Model::planted: return "planted";
  }
  return "homogeneous";
}

Model parse_model(std::string_view name) {
  if (name == "homogeneous") return Model::homogeneous;
  if (name == "two_block") return Model::two_block;
  if (name == "planted") return Model::planted;
  throw Error(Errc::parse, "unknown model '" + std::string(name) + "' (expected homogeneous, two_block or planted)");
}

void ExperimentConfig::validate() const {
  require(n >= 3, "experiment: n must be >= 3");
  require(replicates >= 1, "experiment: replicates must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, "experiment: alpha must lie in (0, 1)");
  require(scale > 0.0, "experiment: scale must be positive");
  if (model == Model::two_block) require(n % 2 == 0, "two_block: n must be even");
  if (model == Model::planted) require(n1 >= 1 && n1 < n, "planted: need 1 <= n1 < n");
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = "rejection_rate";
  if (!cfg.label.empty()) j["label"] = cfg.label;
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  if (cfg.model == Model::planted) j["n1"] = cfg.n1;
  j["f1"] = cfg.f1.to_string();
  if (cfg.model != Model::homogeneous) j["f2"] = cfg.f2.to_string();
  j["replicates"] = cfg.replicates;
  j["alpha"] = cfg.alpha;
  j["tail"] = to_string(cfg.tail);
  j["seed"] = cfg.seed;
  j["scale"] = cfg.scale;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::parse, "config: expected a JSON object");
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment") && j.at("experiment").get<std::string>() != "rejection_rate") {
      throw Error(Errc::parse, "config: only the rejection_rate experiment is configurable");
    }
    if (j.contains("label")) cfg.label = j.at("label").get<std::string>();
    if (j.contains("model")) cfg.model = parse_model(j.at("model").get<std::string>());
    if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
    if (j.contains("n1")) cfg.n1 = j.at("n1").get<std::size_t>();
    if (j.contains("f1")) cfg.f1 = parse_distribution(j.at("f1").get<std::string>());
    cfg.f2 = j.contains("f2") ? parse_distribution(j.at("f2").get<std::string>()) : cfg.f1;
    if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::size_t>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("tail")) cfg.tail = parse_tail(j.at("tail").get<std::string>());
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scale")) cfg.scale = j.at("scale").get<double>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("config: ") + e.what());
  }
  return cfg;
}

std::vector<double> ExperimentReport::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(Errc::invalid_argument, "report has no column '" + std::string(name) + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

nlohmann::ordered_json ExperimentReport::to_json(const std::optional<std::string>& replicates_path,
                                                 bool include_elapsed) const {
  json j{{"config", config}, {"summary", summary}};
  if (replicates_path) j["replicates_path"] = *replicates_path;
  if (include_elapsed) j["elapsed_s"] = elapsed_s;
  return j;
}

void ExperimentReport::write_replicates_csv(std::ostream& out) const {
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << fmt(r[c]);
    out << '\n';
  }
}

nlohmann::ordered_json normality_summary(std::span<const double> x) {
  json qq = json::array();
  for (const auto& p : stats::qq_normal(x)) qq.push_back({p.probability, p.empirical, p.normal});
  return {
      {"count", x.size()},
      {"mean", stats::mean(x)},
      {"variance", stats::variance(x)},
      {"skewness", stats::skewness(x)},
      {"ks_to_normal", stats::ks_normal(x)},
      {"qq", std::move(qq)},
  };
}

SymmetricMatrix generate(const ExperimentConfig& cfg, std::size_t index) {
  const std::uint64_t s = stream_seed(cfg.seed, index);
  switch (cfg.model) {
    case Model::homogeneous: return sample_homogeneous(cfg.n, cfg.f1, s);
    case Model::two_block: return sample_two_block(cfg.n, cfg.f1, cfg.f2, s).matrix;
    case Model::planted: return sample_planted_submatrix(cfg.n, cfg.n1, cfg.f1, cfg.f2, s).matrix;
  }
  return sample_homogeneous(cfg.n, cfg.f1, s);
}

ExperimentReport rejection_rate_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = to_json(cfg);
  report.columns = {"replicate", "lambda1", "t_stat", "p_value", "reject"};
  report.rows.resize(cfg.replicates);
  TestOptions options;
  options.tail = cfg.tail;

  run_replicates(cfg.replicates, cfg.threads, [&](std::size_t i) {
    const SymmetricMatrix a = generate(cfg, i);
    const TestResult r = run_test(a, cfg.alpha, TiePolicy::random(side_seed(stream_seed(cfg.seed, i))), options);
    report.rows[i] = {static_cast<double>(i), r.lambda1, r.t_stat, r.p_value, r.reject ? 1.0 : 0.0};
  });

  const auto t = report.column("t_stat");
  const auto rejects = report.column("reject");
  const double count = std::count(rejects.begin(), rejects.end(), 1.0);
  const EntryDistribution& f2 = cfg.model == Model::homogeneous ? cfg.f1 : cfg.f2;
  report.summary = {
      {"rejection_rate", count / static_cast<double>(cfg.replicates)},
      {"rejections", static_cast<std::size_t>(count)},
      {"replicates", cfg.replicates},
      {"t_stat_mean", stats::mean(t)},
      {"t_stat_variance", cfg.replicates > 1 ? stats::variance(t) : 0.0},
      {"e1f2", describe(e1f2(cfg.f1, f2, stream_seed(cfg.seed, ~std::uint64_t{0})))},
  };
  report.elapsed_s = seconds_since(start);
  return report;
}

ExperimentReport variance_transition_experiment(std::size_t n, std::span<const ExtraRanks> ks,
                                                std::size_t replicates, std::uint64_t seed, unsigned threads) {
  require(n >= 3, "variance_transition: n must be >= 3");
  require(replicates >= 2, "variance_transition: need at least 2 replicates");
  require(!ks.empty(), "variance_transition: empty k list");
  const auto start = Clock::now();
  ExperimentReport report;
  json klist = json::array();
  for (const auto& k : ks) klist.push_back(k_label(k));
  report.config = {{"experiment", "variance_transition"}, {"n", n},        {"k", klist},
                   {"replicates", replicates},            {"seed", seed}};
  report.columns = {"k_index", "replicate", "lambda1"};
  report.rows.resize(ks.size() * replicates);

  run_replicates(report.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t ki = idx / replicates;
    const std::size_t rep = idx % replicates;
    const std::uint64_t s = stream_seed(stream_seed(seed, ki), rep);
    const SymmetricMatrix m = sample_interpolated_rank(n, ks[ki], s);
    const EigenPair pair = leading_eigenpair(m);
    report.rows[idx] = {static_cast<double>(ki), static_cast<double>(rep), pair.lambda};
  });

  const WWMoments mom = moments(n);
  json rows = json::array();
  const auto lambdas = report.column("lambda1");
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    const std::span<const double> slice(lambdas.data() + ki * replicates, replicates);
    json row{{"k", k_label(ks[ki])}, {"mean", stats::mean(slice)}, {"variance", stats::variance(slice)}};
    if (ks[ki].is_infinite()) row["reference_variance"] = 1.0 / 6.0;
    if (!ks[ki].is_infinite() && *ks[ki].k == 0) row["reference_variance"] = mom.sigma_tilde * mom.sigma_tilde;
    rows.push_back(std::move(row));
  }
  report.summary = {{"rows", std::move(rows)}};
  report.elapsed_s = seconds_since(start);
  return report;
}

ExperimentReport null_distribution_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                              NullStatistic which, unsigned threads) {
  require(n >= 3, "null_distribution: n must be >= 3");
  require(replicates >= 2, "null_distribution: need at least 2 replicates");
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = {{"experiment", "null_distribution"},
                   {"statistic", which == NullStatistic::eigenvalue ? "eigenvalue" : "eigenvector"},
                   {"n", n},
                   {"replicates", replicates},
                   {"seed", seed}};
  report.columns = {"replicate", "lambda1", "u1_dot_uhat", "t_stat", "eigenvector_stat"};
  report.rows.resize(replicates);
  const WWMoments mom = moments(n);

  run_replicates(replicates, threads, [&](std::size_t i) {
    const RankMatrix r = sample_rank_matrix(n, stream_seed(seed, i));
    const EigenPair pair = leading_eigenpair(r.matrix());
    const double proj = ones_projection(pair.vector);
    report.rows[i] = {static_cast<double>(i), pair.lambda, proj, (pair.lambda - mom.centering) / mom.sigma_tilde,
                      eigenvector_statistic_from_projection(proj, n)};
  });

  const auto t = report.column("t_stat");
  const auto v = report.column("eigenvector_stat");
  const auto lambdas = report.column("lambda1");
  report.summary = normality_summary(which == NullStatistic::eigenvalue ? t : v);
  report.summary["lambda1_mean"] = stats::mean(lambdas);
  report.summary["lambda1_variance"] = stats::variance(lambdas);
  report.summary["eigenvalue"] = normality_summary(t);
  report.summary["eigenvector"] = normality_summary(v);
  report.elapsed_s = seconds_since(start);
  return report;
}

nlohmann::ordered_json SemicircleReport::to_json(bool include_elapsed) const {
  json j{{"config", {{"experiment", "semicircle"}, {"n", n}, {"bins", esd.masses.size()}, {"seed", seed}}},
         {"summary",
          {{"ks_to_semicircle", esd.ks_to_semicircle},
           {"min_eigenvalue", esd.min_eigenvalue},
           {"max_eigenvalue", esd.max_eigenvalue},
           {"scaled_operator_norm", scaled_norm}}}};
  if (include_elapsed) j["elapsed_s"] = elapsed_s;
  return j;
}

SemicircleReport semicircle_experiment(std::size_t n, std::size_t bins, std::uint64_t seed) {
  require(n >= 3, "semicircle: n must be >= 3");
  const auto start = Clock::now();
  const SymmetricMatrix w = whiten(sample_rank_matrix(n, stream_seed(seed, 0)));
  SemicircleReport out;
  out.n = n;
  out.seed = seed;
  out.esd = esd(w, bins);
  out.scaled_norm = operator_norm(w) / std::sqrt(static_cast<double>(n));
  out.elapsed_s = seconds_since(start);
  return out;
}

ExperimentReport operator_norm_tail_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                               unsigned threads) {
  require(n >= 3, "operator_norm_tail: n must be >= 3");
  require(replicates >= 1, "operator_norm_tail: replicates must be >= 1");
  const auto start = Clock::now();
  const double threshold = 6.0 * std::sqrt(static_cast<double>(n));
  ExperimentReport report;
  report.config = {{"experiment", "operator_norm_tail"}, {"n", n}, {"replicates", replicates}, {"seed", seed}};
  report.columns = {"replicate", "norm"};
  report.rows.resize(replicates);

  run_replicates(replicates, threads, [&](std::size_t i) {
    const std::uint64_t s = stream_seed(seed, i);
    const SymmetricMatrix g = center(sample_rank_matrix(n, s));
    report.rows[i] = {static_cast<double>(i), operator_norm(g, {.tol = 1e-10, .seed = side_seed(s)})};
  });

  const auto norms = report.column("norm");
  const auto exceed = std::count_if(norms.begin(), norms.end(), [&](double x) { return x >= threshold; });
  report.summary = {
      {"threshold", threshold},
      {"exceedances", exceed},
      {"frequency", static_cast<double>(exceed) / static_cast<double>(replicates)},
      {"max_norm", *std::max_element(norms.begin(), norms.end())},
      {"mean_norm", stats::mean(norms)},
      {"mean_scaled_norm", stats::mean(norms) / std::sqrt(static_cast<double>(n))},
  };
  report.elapsed_s = seconds_since(start);
  return report;
}

ExperimentReport fk_comparison_experiment(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                          unsigned threads) {
  require(n >= 3, "fk_comparison: n must be >= 3");
  require(replicates >= 2, "fk_comparison: need at least 2 replicates");
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = {{"experiment", "fk_comparison"}, {"n", n}, {"replicates", replicates}, {"seed", seed}};
  report.columns = {"replicate", "lambda1", "u1_dot_uhat", "fk_stat", "eigenvector_stat"};
  report.rows.resize(replicates);
  // Uniform(0, 1): mean 1/2, variance 1/12, zero diagonal.
  const double var = 1.0 / 12.0;
  const double centering = 0.5 * static_cast<double>(n - 1) + var / 0.5;
  const double scale = std::sqrt(2.0) * std::sqrt(var);

  run_replicates(replicates, threads, [&](std::size_t i) {
    const SymmetricMatrix u = sample_interpolated_rank(n, ExtraRanks::infinite(), stream_seed(seed, i));
    const EigenPair pair = leading_eigenpair(u);
    const double proj = ones_projection(pair.vector);
    report.rows[i] = {static_cast<double>(i), pair.lambda, proj, (pair.lambda - centering) / scale,
                      eigenvector_statistic_from_projection(proj, n)};
  });

  const auto lambdas = report.column("lambda1");
  report.summary = {
      {"fk", normality_summary(report.column("fk_stat"))},
      {"eigenvector", normality_summary(report.column("eigenvector_stat"))},
      {"lambda1_over_n_mean", stats::mean(lambdas) / static_cast<double>(n)},
  };
  report.elapsed_s = seconds_since(start);
  return report;
}

ExperimentReport subspace_recovery_ratio_experiment(std::size_t n, double mu, double sigma, std::size_t replicates,
                                                    std::uint64_t seed, unsigned threads) {
  require(n >= 3, "subspace_recovery_ratio: n must be >= 3");
  require(mu != 0.0 && std::isfinite(mu), "subspace_recovery_ratio: mu must be finite and nonzero");
  require(replicates >= 1, "subspace_recovery_ratio: replicates must be >= 1");
  const EntryDistribution f(Normal{mu, sigma});
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = {{"experiment", "subspace_recovery_ratio"},
                   {"n", n},
                   {"mu", mu},
                   {"sigma", sigma},
                   {"replicates", replicates},
                   {"seed", seed}};
  report.columns = {"replicate", "distance_data", "distance_rank"};
  report.rows.resize(replicates);
  const std::vector<double> u1(n, 1.0 / std::sqrt(static_cast<double>(n)));

  run_replicates(replicates, threads, [&](std::size_t i) {
    const std::uint64_t s = stream_seed(seed, i);
    const SymmetricMatrix a = sample_homogeneous(n, f, s);
    const EigenPair pa = leading_eigenpair(a);
    const EigenPair pr = leading_eigenpair(rank_transform(a, TiePolicy::random(side_seed(s))).matrix());
    report.rows[i] = {static_cast<double>(i), subspace_distance_sq(pa.vector, u1),
                      subspace_distance_sq(pr.vector, u1)};
  });

  const double mean_data = stats::mean(report.column("distance_data"));
  const double mean_rank = stats::mean(report.column("distance_rank"));
  report.summary = {
      {"mean_distance_data", mean_data},
      {"mean_distance_rank", mean_rank},
      {"ratio", mean_rank / mean_data},
      {"limit", mu * mu / (3.0 * sigma * sigma)},
  };
  report.elapsed_s = seconds_since(start);
  return report;
}

ExperimentReport eigen_relationship_experiment(std::span<const std::size_t> ns, std::size_t replicates,
                                               std::uint64_t seed, unsigned threads) {
  require(!ns.empty(), "eigen_relationship: empty n list");
  for (std::size_t n : ns) require(n >= 3, "eigen_relationship: every n must be >= 3");
  require(replicates >= 1, "eigen_relationship: replicates must be >= 1");
  const auto start = Clock::now();
  ExperimentReport report;
  report.config = {{"experiment", "eigen_relationship"},
                   {"n", std::vector<std::size_t>(ns.begin(), ns.end())},
                   {"replicates", replicates},
                   {"seed", seed}};
  report.columns = {"n", "replicate", "lambda1", "u1_dot_uhat", "residual"};
  report.rows.resize(ns.size() * replicates);

  run_replicates(report.rows.size(), threads, [&](std::size_t idx) {
    const std::size_t ni = idx / replicates;
    const std::size_t rep = idx % replicates;
    const std::size_t n = ns[ni];
    const RankMatrix r = sample_rank_matrix(n, stream_seed(stream_seed(seed, ni), rep));
    const EigenPair pair = leading_eigenpair(r.matrix());
    const double proj = ones_projection(pair.vector);
    const double predicted = -pair.lambda / static_cast<double>(n - 1) + 1.5;
    report.rows[idx] = {static_cast<double>(n), static_cast<double>(rep), pair.lambda, proj,
                        std::abs(proj - predicted)};
  });

  const auto residuals = report.column("residual");
  const auto projections = report.column("u1_dot_uhat");
  json rows = json::array();
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::span<const double> res(residuals.data() + ni * replicates, replicates);
    const std::span<const double> proj(projections.data() + ni * replicates, replicates);
    const auto below = std::count_if(res.begin(), res.end(), [](double x) { return x < 1e-4; });
    rows.push_back({{"n", ns[ni]},
                    {"median_residual", stats::median({res.begin(), res.end()})},
                    {"fraction_below_1e-4", static_cast<double>(below) / static_cast<double>(replicates)},
                    {"min_u1_dot_uhat", *std::min_element(proj.begin(), proj.end())}});
  }
  report.summary = {{"rows", std::move(rows)}};
  report.elapsed_s = seconds_since(start);
  return report;
}

}  // namespace wwrank

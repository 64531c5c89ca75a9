#include "wwrank_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wwrank/experiments.hpp"
#include "wwrank/hypothesis.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/spectra.hpp"
#include "wwrank/stats.hpp"
#include "wwrank/symmetric_matrix.hpp"
#include "wwrank_cli/reproduce.hpp"

namespace wwrank::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open '" + path.string() + "' for writing");
  return f;
}

void finish(std::ofstream& f, const fs::path& path) {
  f.flush();
  if (!f) throw Error(Errc::io, "write to '" + path.string() + "' failed");
}

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  auto f = open_out(path);
  f << j.dump(2) << '\n';
  finish(f, path);
}

template <class Write>
void emit_file(const fs::path& path, Write&& write) {
  auto f = open_out(path);
  write(f);
  finish(f, path);
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, std::string_view command) {
  if (!seed) throw UsageError(std::string(command) + ": --seed is required (no implicit entropy)");
  return *seed;
}

void error_record(std::ostream& err, std::string_view kind, int code, std::string_view message) {
  err << json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
}

// ---- test -------------------------------------------------------------------

struct TestArgs {
  std::string path;
  std::string format = "dense-csv";
  double alpha = 0.05;
  std::string ties = "error";
  std::string tail = "two_sided";
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_test(const TestArgs& a, std::ostream& out) {
  TiePolicy policy = TiePolicy::error();
  if (a.ties == "random") policy = TiePolicy::random(require_seed(a.seed, "test --ties random"));
  const SymmetricMatrix m = load_matrix(a.path, parse_matrix_format(a.format));
  TestOptions options;
  options.tail = a.tail == "upper" ? Tail::upper : Tail::two_sided;
  const TestResult r = run_test(m, a.alpha, policy, options);
  emit_json(to_json(r), a.out, out);
  return r.reject ? kRejected : kOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string model;
  std::string f1;
  std::string f2;
  std::size_t n = 1000;
  std::size_t n1 = 0;
  std::size_t replicates = 400;
  double alpha = 0.05;
  std::string tail = "two_sided";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  double scale = 1.0;
  std::string out;
  std::string dump;
  std::string config;
  bool no_timing = false;
};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::io, "cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse, "'" + path + "': " + e.what());
  }
}

int cmd_simulate(const SimulateArgs& a, const CLI::App& sub, std::ostream& out) {
  ExperimentConfig cfg;
  if (!a.config.empty()) {
    const json j = read_json_file(a.config);
    cfg = config_from_json(j);
    if (!a.model.empty()) throw UsageError("simulate: give either --config or a model, not both");
    if (!j.contains("seed") && !a.seed) throw UsageError("simulate: --seed is required (no implicit entropy)");
    if (a.seed) cfg.seed = *a.seed;
    if (sub.count("--threads")) cfg.threads = a.threads;
    if (sub.count("--replicates")) cfg.replicates = a.replicates;
    if (sub.count("--alpha")) cfg.alpha = a.alpha;
    if (sub.count("--scale")) {
      cfg.replicates = scaled_replicates(cfg.replicates, a.scale);
      cfg.scale = a.scale;
    }
  } else {
    if (a.model.empty() || a.f1.empty()) throw UsageError("simulate: need MODEL and F1 (or --config)");
    cfg.model = parse_model(a.model);
    cfg.f1 = parse_distribution(a.f1);
    if (cfg.model == Model::homogeneous) {
      if (!a.f2.empty()) throw UsageError("simulate: the homogeneous model takes a single distribution");
      cfg.f2 = cfg.f1;
    } else {
      if (a.f2.empty()) throw UsageError("simulate: model '" + a.model + "' needs F1 and F2");
      cfg.f2 = parse_distribution(a.f2);
    }
    cfg.n = a.n;
    cfg.n1 = a.n1;
    cfg.replicates = scaled_replicates(a.replicates, a.scale);
    cfg.scale = a.scale;
    cfg.alpha = a.alpha;
    cfg.tail = a.tail == "upper" ? Tail::upper : Tail::two_sided;
    cfg.seed = require_seed(a.seed, "simulate");
    cfg.threads = a.threads;
  }
  if (cfg.model == Model::planted && cfg.n1 == 0) throw UsageError("simulate: the planted model needs --n1");

  const ExperimentReport report = rejection_rate_experiment(cfg);
  std::optional<std::string> dump_path;
  if (!a.dump.empty()) {
    emit_file(a.dump, [&](std::ostream& f) { report.write_replicates_csv(f); });
    dump_path = a.dump;
  }
  emit_json(report.to_json(dump_path, !a.no_timing), a.out, out);
  return kOk;
}

// ---- reproduce --------------------------------------------------------------

struct ReproduceArgs {
  std::string target;
  std::optional<std::uint64_t> seed;
  double scale = 1.0;
  unsigned threads = 0;
  std::string out = "results";
  std::vector<std::size_t> sizes;
  bool no_timing = false;
};

std::vector<std::size_t> sizes_or(const ReproduceArgs& a, std::vector<std::size_t> fallback) {
  return a.sizes.empty() ? fallback : a.sizes;
}

json reproduce_table1(const ReproduceArgs& a, std::uint64_t seed, const fs::path& dir, std::vector<std::string>& files) {
  const auto ns = sizes_or(a, {1000, 2000, 4000});
  const std::size_t reps = std::max<std::size_t>(2, scaled_replicates(3000, a.scale));
  const auto labels = table1_labels();
  std::vector<std::vector<double>> variance(labels.size(), std::vector<double>(ns.size()));
  json reports = json::array();
  for (std::size_t c = 0; c < ns.size(); ++c) {
    const auto ks = table1_ks(ns[c]);
    const auto report = variance_transition_experiment(ns[c], ks, reps, stream_seed(seed, ns[c]), a.threads);
    for (std::size_t k = 0; k < ks.size(); ++k) variance[k][c] = report.summary["rows"][k]["variance"].get<double>();
    reports.push_back(report.to_json({}, !a.no_timing));
  }
  emit_file(dir / "table1.csv", [&](std::ostream& f) {
    f << "k";
    for (std::size_t n : ns) f << ",n=" << n;
    f << '\n';
    for (std::size_t k = 0; k < labels.size(); ++k) {
      f << labels[k];
      for (double v : variance[k]) f << ',' << fmt(v);
      f << '\n';
    }
  });
  files.push_back("table1.csv");
  return reports;
}

json reproduce_rejection_table(const ReproduceArgs& a, std::uint64_t seed, const fs::path& dir,
                               std::vector<std::string>& files, bool planted) {
  const auto ns = sizes_or(a, {2000, 4000});
  const std::size_t reps = scaled_replicates(400, a.scale);
  const std::string name = planted ? "table3" : "table2";
  json reports = json::array();
  std::ostringstream csv;
  csv << (planted ? "row,F1_equals_F2,e1f2_gap,n,n1,F1,F2,replicates,rejection_rate\n"
                  : "row,mu1_equals_mu2,e1f2_gap,n,F1,F2,replicates,rejection_rate\n");
  for (std::size_t n : ns) {
    auto rows = planted ? table3_rows(n, reps, stream_seed(seed, n)) : table2_rows(n, reps, stream_seed(seed, n));
    for (auto& row : rows) {
      row.config.threads = a.threads;
      row.config.scale = a.scale;
      const auto report = rejection_rate_experiment(row.config);
      const double gap = std::abs(report.summary["e1f2"]["value"].get<double>() - 0.5);
      csv << row.id << ',' << row.note << ',' << fmt(gap) << ',' << n << ',';
      if (planted) csv << row.config.n1 << ',';
      csv << '"' << row.config.f1.to_string() << "\",\"" << row.config.f2.to_string() << "\"," << reps << ','
          << fmt(report.summary["rejection_rate"].get<double>()) << '\n';
      reports.push_back(report.to_json({}, !a.no_timing));
    }
  }
  emit_file(dir / (name + ".csv"), [&](std::ostream& f) { f << csv.str(); });
  files.push_back(name + ".csv");
  return reports;
}

json reproduce_fig1(const ReproduceArgs& a, std::uint64_t seed, const fs::path& dir, std::vector<std::string>& files) {
  const auto ns = sizes_or(a, {3000});
  json reports = json::array();
  for (std::size_t n : ns) {
    const auto r = semicircle_experiment(n, 60, stream_seed(seed, n));
    const std::string file = ns.size() == 1 ? "fig1_histogram.csv" : "fig1_histogram_n" + std::to_string(n) + ".csv";
    emit_file(dir / file, [&](std::ostream& f) { write_esd_csv(f, r.esd); });
    files.push_back(file);
    reports.push_back(r.to_json(!a.no_timing));
  }
  return reports;
}

json reproduce_fig2(const ReproduceArgs& a, std::uint64_t seed, const fs::path& dir, std::vector<std::string>& files) {
  const auto ns = sizes_or(a, {2000});
  const std::size_t reps = std::max<std::size_t>(2, scaled_replicates(2000, a.scale));
  json reports = json::array();
  for (std::size_t n : ns) {
    const auto r = null_distribution_experiment(n, reps, stream_seed(seed, n), NullStatistic::eigenvalue, a.threads);
    const std::string suffix = ns.size() == 1 ? "" : "_n" + std::to_string(n);
    const auto ev = stats::qq_normal(r.column("t_stat"));
    const auto vec = stats::qq_normal(r.column("eigenvector_stat"));
    emit_file(dir / ("fig2_qq" + suffix + ".csv"), [&](std::ostream& f) {
      f << "probability,normal_quantile,eigenvalue_quantile,eigenvector_quantile\n";
      for (std::size_t i = 0; i < ev.size(); ++i) {
        f << fmt(ev[i].probability) << ',' << fmt(ev[i].normal) << ',' << fmt(ev[i].empirical) << ','
          << fmt(vec[i].empirical) << '\n';
      }
    });
    emit_file(dir / ("fig2_replicates" + suffix + ".csv"), [&](std::ostream& f) { r.write_replicates_csv(f); });
    files.push_back("fig2_qq" + suffix + ".csv");
    files.push_back("fig2_replicates" + suffix + ".csv");
    reports.push_back(r.to_json("fig2_replicates" + suffix + ".csv", !a.no_timing));
  }
  return reports;
}

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
  const std::uint64_t seed = require_seed(a.seed, "reproduce");
  if (!(a.scale > 0.0)) throw Error(Errc::invalid_argument, "reproduce: --scale must be positive");
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create '" + a.out + "': " + ec.message());

  std::vector<std::string> files;
  json reports;
  if (a.target == "table1") reports = reproduce_table1(a, seed, dir, files);
  if (a.target == "table2") reports = reproduce_rejection_table(a, seed, dir, files, false);
  if (a.target == "table3") reports = reproduce_rejection_table(a, seed, dir, files, true);
  if (a.target == "fig1") reports = reproduce_fig1(a, seed, dir, files);
  if (a.target == "fig2") reports = reproduce_fig2(a, seed, dir, files);

  json summary{{"target", a.target}, {"seed", seed}, {"scale", a.scale}, {"reports", std::move(reports)}};
  const std::string json_name = a.target + ".json";
  emit_json(summary, (dir / json_name).string(), out);
  files.push_back(json_name);

  json index{{"target", a.target}, {"out", a.out}, {"files", files}, {"scale", a.scale}};
  if (!a.no_timing) {
    index["elapsed_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  out << index.dump(2) << '\n';
  return kOk;
}

// ---- esd / qq ---------------------------------------------------------------

struct EsdArgs {
  std::size_t n = 1000;
  std::size_t bins = 50;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool no_timing = false;
};

int cmd_esd(const EsdArgs& a, std::ostream& out) {
  const auto r = semicircle_experiment(a.n, a.bins, require_seed(a.seed, "esd"));
  if (!a.out.empty()) emit_file(a.out, [&](std::ostream& f) { write_esd_csv(f, r.esd); });
  json j = r.to_json(!a.no_timing);
  if (!a.out.empty()) j["histogram_path"] = a.out;
  out << j.dump(2) << '\n';
  return kOk;
}

struct QQArgs {
  std::size_t n = 1000;
  std::size_t replicates = 2000;
  std::string statistic = "eigenvalue";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
  bool no_timing = false;
};

int cmd_qq(const QQArgs& a, std::ostream& out) {
  const auto which = a.statistic == "eigenvector" ? NullStatistic::eigenvector : NullStatistic::eigenvalue;
  const auto r = null_distribution_experiment(a.n, a.replicates, require_seed(a.seed, "qq"), which, a.threads);
  const auto points = stats::qq_normal(r.column(which == NullStatistic::eigenvalue ? "t_stat" : "eigenvector_stat"));
  if (!a.out.empty()) {
    emit_file(a.out, [&](std::ostream& f) {
      f << "probability,empirical,normal\n";
      for (const auto& p : points) f << fmt(p.probability) << ',' << fmt(p.empirical) << ',' << fmt(p.normal) << '\n';
    });
  }
  json j{{"config", r.config}, {"summary", json::object()}};
  for (const char* key : {"count", "mean", "variance", "skewness", "ks_to_normal"}) j["summary"][key] = r.summary[key];
  if (!a.out.empty()) j["qq_path"] = a.out;
  if (!a.no_timing) j["elapsed_s"] = r.elapsed_s;
  out << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return kInvalidArgument;
    case Errc::parse: return kParse;
    case Errc::io: return kIo;
    case Errc::asymmetry: return kAsymmetry;
    case Errc::ties: return kTies;
    case Errc::convergence: return kConvergence;
    case Errc::capacity: return kCapacity;
  }
  return kInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-based spectral tests for latent structure in symmetric matrices", "wwrank"};
  app.set_version_flag("--version", "wwrank 0.1.0");
  app.require_subcommand(1, 1);

  TestArgs test;
  auto* t = app.add_subcommand("test", "Test a data matrix for latent block structure");
  t->add_option("matrix", test.path, "Input matrix file")->required();
  t->add_option("--format", test.format, "Input format")
      ->check(CLI::IsMember({"dense-csv", "upper-triangle-text", "weighted-edge-list"}))
      ->capture_default_str();
  t->add_option("--alpha", test.alpha, "Significance level")->capture_default_str();
  t->add_option("--ties", test.ties, "Tie policy")->check(CLI::IsMember({"error", "random"}))->capture_default_str();
  t->add_option("--tail", test.tail, "Rejection region")
      ->check(CLI::IsMember({"two_sided", "upper"}))
      ->capture_default_str();
  t->add_option("--seed", test.seed, "Seed for random tie breaking");
  t->add_option("--out", test.out, "Write the JSON result here instead of stdout");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo rejection rate for a generative model");
  s->add_option("model", sim.model, "homogeneous | two_block | planted");
  s->add_option("f1", sim.f1, "Entry distribution, e.g. normal(1,0.4)");
  s->add_option("f2", sim.f2, "Background distribution (two_block, planted)");
  s->add_option("--n", sim.n, "Matrix dimension")->capture_default_str();
  s->add_option("--n1", sim.n1, "Planted submatrix size");
  s->add_option("--replicates", sim.replicates, "Replicates before scaling")->capture_default_str();
  s->add_option("--alpha", sim.alpha, "Significance level")->capture_default_str();
  s->add_option("--tail", sim.tail, "Rejection region")
      ->check(CLI::IsMember({"two_sided", "upper"}))
      ->capture_default_str();
  s->add_option("--seed", sim.seed, "Master seed");
  s->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();
  s->add_option("--scale", sim.scale, "Replicate multiplier")->capture_default_str();
  s->add_option("--out", sim.out, "Write the JSON report here instead of stdout");
  s->add_option("--dump", sim.dump, "Write per-replicate statistics as CSV");
  s->add_option("--config", sim.config, "JSON experiment config");
  s->add_flag("--no-timing", sim.no_timing, "Omit wall-time fields");

  ReproduceArgs rep;
  auto* r = app.add_subcommand("reproduce", "Regenerate a reference table or figure");
  r->add_option("target", rep.target, "table1 | table2 | table3 | fig1 | fig2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "fig1", "fig2"}));
  r->add_option("--seed", rep.seed, "Master seed");
  r->add_option("--scale", rep.scale, "Replicate multiplier")->capture_default_str();
  r->add_option("--threads", rep.threads, "Worker threads (0 = all cores)")->capture_default_str();
  r->add_option("--out", rep.out, "Output directory")->capture_default_str();
  r->add_option("--sizes", rep.sizes, "Override the matrix dimensions")->delimiter(',');
  r->add_flag("--no-timing", rep.no_timing, "Omit wall-time fields");

  EsdArgs esd_args;
  auto* e = app.add_subcommand("esd", "Eigenvalue histogram of one whitened null matrix");
  e->add_option("--n", esd_args.n, "Matrix dimension")->capture_default_str();
  e->add_option("--bins", esd_args.bins, "Histogram bins on [-2.5, 2.5]")->capture_default_str();
  e->add_option("--seed", esd_args.seed, "Seed");
  e->add_option("--out", esd_args.out, "Histogram CSV path");
  e->add_flag("--no-timing", esd_args.no_timing, "Omit wall-time fields");

  QQArgs qq;
  auto* q = app.add_subcommand("qq", "Normal QQ points for the null eigenvalue or eigenvector statistic");
  q->add_option("--n", qq.n, "Matrix dimension")->capture_default_str();
  q->add_option("--replicates", qq.replicates, "Replicates")->capture_default_str();
  q->add_option("--statistic", qq.statistic, "eigenvalue | eigenvector")
      ->check(CLI::IsMember({"eigenvalue", "eigenvector"}))
      ->capture_default_str();
  q->add_option("--seed", qq.seed, "Master seed");
  q->add_option("--threads", qq.threads, "Worker threads (0 = all cores)")->capture_default_str();
  q->add_option("--out", qq.out, "QQ CSV path");
  q->add_flag("--no-timing", qq.no_timing, "Omit wall-time fields");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& ok) {
    return app.exit(ok, out, err);
  } catch (const CLI::ParseError& pe) {
    error_record(err, "usage", kUsage, pe.what());
    return kUsage;
  }

  try {
    if (t->parsed()) return cmd_test(test, out);
    if (s->parsed()) return cmd_simulate(sim, *s, out);
    if (r->parsed()) return cmd_reproduce(rep, out);
    if (e->parsed()) return cmd_esd(esd_args, out);
    if (q->parsed()) return cmd_qq(qq, out);
  } catch (const UsageError& ue) {
    error_record(err, "usage", kUsage, ue.what());
    return kUsage;
  } catch (const Error& ex) {
    const int code = exit_code(ex.code());
    error_record(err, to_string(ex.code()), code, ex.what());
    return code;
  } catch (const std::exception& ex) {
    error_record(err, "internal", kInternal, ex.what());
    return kInternal;
  }
  return kUsage;
}

}  // namespace wwrank::cli

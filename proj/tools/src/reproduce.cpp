#include "wwrank_cli/reproduce.hpp"

#include <algorithm>
#include <cmath>

#include "wwrank/distributions.hpp"
#include "wwrank/rng.hpp"

namespace wwrank::cli {
namespace {

double power(std::size_t n, double e) { return std::pow(static_cast<double>(n), e); }

EntryDistribution normal(double mu, double sigma) { return EntryDistribution(Normal{mu, sigma}); }
EntryDistribution pareto(double scale, double shape) { return EntryDistribution(Pareto{scale, shape}); }

TableRow row(std::string id, std::string note, Model model, std::size_t n, std::size_t n1, EntryDistribution f1,
             EntryDistribution f2, std::size_t replicates, std::uint64_t seed, std::size_t index) {
  TableRow r{std::move(id), std::move(note), {}};
  ExperimentConfig& c = r.config;
  c.model = model;
  c.n = n;
  c.n1 = n1;
  c.f1 = f1;
  c.f2 = f2;
  c.replicates = replicates;
  c.seed = stream_seed(seed, index);
  c.label = r.id;
  return r;
}

std::size_t submatrix_size(std::size_t n, std::size_t at2000, std::size_t at4000, double exponent) {
  if (n == 2000) return at2000;
  if (n == 4000) return at4000;
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(power(n, exponent))), 1, n - 1);
}

}  // namespace

std::size_t scaled_replicates(std::size_t base, double scale) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(base) * scale)));
}

std::vector<ExtraRanks> table1_ks(std::size_t n) {
  const auto big_n = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return {ExtraRanks::finite(0), ExtraRanks::finite(n),
          ExtraRanks::finite(static_cast<std::uint64_t>(std::llround(power(n, 1.5)))), ExtraRanks::finite(big_n),
          ExtraRanks::infinite()};
}

std::vector<std::string> table1_labels() { return {"k=0", "k=n", "k=n^{3/2}", "k=N", "k=inf"}; }

std::vector<TableRow> table2_rows(std::size_t n, std::size_t reps, std::uint64_t seed) {
  const auto m = Model::two_block;
  const auto background = normal(1, 0.1);
  return {
      row("a", "NA", m, n, 0, pareto(1, 1), background, reps, seed, 0),
      row("b", "Yes", m, n, 0, pareto(0.5, 2), background, reps, seed, 1),
      row("c", "No", m, n, 0, normal(1, 1), normal(2, 1), reps, seed, 2),
      row("d", "No", m, n, 0, normal(1, 0.4), normal(1 + power(n, -1.0 / 8), 0.4), reps, seed, 3),
      row("e", "No", m, n, 0, normal(1, 0.4), normal(1 + power(n, -1.0 / 4), 0.4), reps, seed, 4),
      row("f", "No", m, n, 0, normal(1, 0.4), normal(1 + power(n, -1.0 / 2), 0.4), reps, seed, 5),
      row("g", "Yes", m, n, 0, normal(1, 1), normal(1, std::sqrt(2.0)), reps, seed, 6),
  };
}

std::vector<TableRow> table3_rows(std::size_t n, std::size_t reps, std::uint64_t seed) {
  const auto m = Model::planted;
  const std::size_t big = submatrix_size(n, 300, 500, 0.75);
  const std::size_t half = submatrix_size(n, 40, 60, 0.5);
  const std::size_t small = submatrix_size(n, 20, 27, 0.4);
  const std::size_t wide = submatrix_size(n, 780, 1400, 0.875);
  const auto base = normal(1, 1);
  return {
      row("a", "Yes", m, n, big, pareto(1, 1), pareto(1, 1), reps, seed, 0),
      row("b", "Yes", m, n, big, base, base, reps, seed, 1),
      row("c", "No", m, n, big, pareto(0.5, 2), base, reps, seed, 2),
      row("d", "No", m, n, big, pareto(1, 1), base, reps, seed, 3),
      row("e", "No", m, n, big, normal(2, 1), base, reps, seed, 4),
      row("f", "No", m, n, half, normal(2, 1), base, reps, seed, 5),
      row("g", "No", m, n, small, normal(2, 1), base, reps, seed, 6),
      row("h", "No", m, n, wide, normal(1 + power(n, -1.0 / 4), 1), base, reps, seed, 7),
      row("i", "No", m, n, wide, normal(1 + power(n, -3.0 / 8), 1), base, reps, seed, 8),
      row("j", "No", m, n, wide, normal(1 + power(n, -3.0 / 4), 1), base, reps, seed, 9),
      row("k", "No", m, n, wide, base, normal(1, std::sqrt(2.0)), reps, seed, 10),
  };
}

}  // namespace wwrank::cli

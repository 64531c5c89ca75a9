#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wwrank/experiments.hpp"
#include "wwrank/models.hpp"

namespace wwrank::cli {

/// One row of a rejection-rate table: its letter, the descriptive column from
/// the reference layout, and the run settings.
struct TableRow {
  std::string id;
  std::string note;
  ExperimentConfig config;
};

/// round(base * scale), at least 1.
std::size_t scaled_replicates(std::size_t base, double scale);

/// k in {0, n, n^{3/2}, N, infinity}.
std::vector<ExtraRanks> table1_ks(std::size_t n);
std::vector<std::string> table1_labels();

/// Community detection rows (a)-(g); n must be even.
std::vector<TableRow> table2_rows(std::size_t n, std::size_t replicates, std::uint64_t seed);

/// Planted submatrix rows (a)-(k). n1 follows the reference values at
/// n = 2000 and 4000, and round(n^e) with the listed exponent elsewhere.
std::vector<TableRow> table3_rows(std::size_t n, std::size_t replicates, std::uint64_t seed);

}  // namespace wwrank::cli

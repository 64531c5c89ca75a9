#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "wwrank/error.hpp"
#include "wwrank/rng.hpp"
#include "wwrank/symmetric_matrix.hpp"

using namespace wwrank;

namespace {

SymmetricMatrix read(const std::string& text, MatrixFormat f) {
  std::istringstream in(text);
  return read_matrix(in, f);
}

Errc error_of(const std::string& text, MatrixFormat f) {
  try {
    read(text, f);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return Errc::invalid_argument;
}

}  // namespace

TEST(MatrixIo, DenseCsv) {
  const auto m = read("0,5,1\n5,0,3\n1,3,0\n", MatrixFormat::dense_csv);
  EXPECT_EQ(m.dim(), 3u);
  EXPECT_EQ(std::vector<double>(m.values().begin(), m.values().end()), (std::vector<double>{5, 1, 3}));
}

TEST(MatrixIo, EdgeListMatchesDense) {
  const auto dense = read("0,5,1\n5,0,3\n1,3,0\n", MatrixFormat::dense_csv);
  const auto edges = read("0 1 5\n0 2 1\n1 2 3\n", MatrixFormat::weighted_edge_list);
  EXPECT_EQ(dense, edges);
  const auto shuffled = read("2 1 3\n1 0 5\n# comment\n\n2 0 1\n", MatrixFormat::weighted_edge_list);
  EXPECT_EQ(dense, shuffled);
}

TEST(MatrixIo, UpperTriangleText) {
  const auto m = read("3\n5 1\n3\n", MatrixFormat::upper_triangle_text);
  EXPECT_EQ(m, read("0,5,1\n5,0,3\n1,3,0\n", MatrixFormat::dense_csv));
}

TEST(MatrixIo, DiagonalIsDiscarded) {
  const auto m = read("9,5,1\n5,-4,3\n1,3,7\n", MatrixFormat::dense_csv);
  EXPECT_EQ(m, read("0,5,1\n5,0,3\n1,3,0\n", MatrixFormat::dense_csv));
  EXPECT_EQ(read("0 0 4\n0 1 5\n0 2 1\n1 2 3\n", MatrixFormat::weighted_edge_list), m);
}

TEST(MatrixIo, AsymmetryBeyondToleranceIsAnError) {
  EXPECT_EQ(error_of("0,1.0\n1.000001,0\n", MatrixFormat::dense_csv), Errc::asymmetry);
}

TEST(MatrixIo, TinyAsymmetryIsAveraged) {
  const auto m = read("0,1.0\n1.0000000000004,0\n", MatrixFormat::dense_csv);
  EXPECT_NEAR(m(0, 1), 1.0000000000002, 1e-15);
}

TEST(MatrixIo, MalformedInputs) {
  EXPECT_EQ(error_of("0,1\n1\n", MatrixFormat::dense_csv), Errc::parse);
  EXPECT_EQ(error_of("0,x\nx,0\n", MatrixFormat::dense_csv), Errc::parse);
  EXPECT_EQ(error_of("3\n1 2\n", MatrixFormat::upper_triangle_text), Errc::parse);
  EXPECT_EQ(error_of("3\n1 2 3 4\n", MatrixFormat::upper_triangle_text), Errc::parse);
  EXPECT_EQ(error_of("0 1 5\n0 2 1\n", MatrixFormat::weighted_edge_list), Errc::parse);
  EXPECT_EQ(error_of("0 1 5\n1 0 6\n0 2 1\n1 2 3\n", MatrixFormat::weighted_edge_list), Errc::parse);
  // A repeated pair with the same weight is harmless.
  EXPECT_NO_THROW(read("0 1 5\n1 0 5\n0 2 1\n1 2 3\n", MatrixFormat::weighted_edge_list));
}

TEST(MatrixIo, RoundTripIsBitExact) {
  SplitMix64 rng(99);
  const std::size_t n = 23;
  std::vector<double> v(packed_size(n));
  for (double& x : v) x = (rng.uniform01() - 0.5) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
  v[0] = std::numeric_limits<double>::denorm_min();
  v[1] = -std::numeric_limits<double>::max();
  v[2] = 0.1;
  const SymmetricMatrix m(n, v);
  for (auto f : {MatrixFormat::dense_csv, MatrixFormat::upper_triangle_text, MatrixFormat::weighted_edge_list}) {
    std::stringstream io;
    write_matrix(io, m, f);
    const auto back = read_matrix(io, f);
    ASSERT_EQ(back.dim(), n) << to_string(f);
    for (std::size_t k = 0; k < v.size(); ++k) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(back.values()[k]), std::bit_cast<std::uint64_t>(v[k])) << to_string(f);
    }
  }
}

TEST(MatrixIo, FormatNames) {
  for (auto f : {MatrixFormat::dense_csv, MatrixFormat::upper_triangle_text, MatrixFormat::weighted_edge_list}) {
    EXPECT_EQ(parse_matrix_format(to_string(f)), f);
  }
  EXPECT_THROW(parse_matrix_format("csv"), Error);
}

TEST(MatrixIo, MissingFileIsIoError) {
  try {
    load_matrix("/nonexistent/matrix.csv", MatrixFormat::dense_csv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::io);
  }
}

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wwrank/error.hpp"
#include "wwrank/symmetric_matrix.hpp"

namespace wwrank {
namespace {

std::string location(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::parse, location(line) + "cannot parse '" + std::string(token) + "' as a real number");
  }
  if (!std::isfinite(value)) {
    throw Error(Errc::parse, location(line) + "non-finite value '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::parse, location(line) + "cannot parse '" + std::string(token) + "' as a node index");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t\r", start);
    if (stop == std::string_view::npos) stop = s.size();
    out.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

SymmetricMatrix read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_real(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n < 2) throw Error(Errc::parse, "dense-csv: need at least 2 rows, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(Errc::parse, "dense-csv: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                   " entries, expected " + std::to_string(n));
    }
  }
  SymmetricMatrix m(n);
  auto values = m.mutable_values();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (std::abs(a - b) > kSymmetryTolerance * std::max(1.0, std::abs(a))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "dense-csv: entries (" << i << "," << j << ")=" << a << " and (" << j << "," << i << ")=" << b
            << " differ beyond the symmetry tolerance";
        throw Error(Errc::asymmetry, msg.str());
      }
      values[k] = a == b ? a : 0.5 * (a + b);
    }
  }
  return m;
}

SymmetricMatrix read_upper_triangle(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto tokens = split_ws(line);
    std::size_t t = 0;
    if (!n) {
      n = parse_index(tokens[0], line_no);
      if (*n < 2) throw Error(Errc::parse, location(line_no) + "dimension must be >= 2");
      values.reserve(packed_size(*n));
      t = 1;
    }
    for (; t < tokens.size(); ++t) values.push_back(parse_real(tokens[t], line_no));
  }
  if (!n) throw Error(Errc::parse, "upper-triangle-text: empty input");
  if (values.size() != packed_size(*n)) {
    throw Error(Errc::parse, "upper-triangle-text: expected " + std::to_string(packed_size(*n)) +
                                 " values for n=" + std::to_string(*n) + ", got " + std::to_string(values.size()));
  }
  return SymmetricMatrix(*n, std::move(values));
}

SymmetricMatrix read_edge_list(std::istream& in) {
  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  std::size_t max_node = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 3) {
      throw Error(Errc::parse, location(line_no) + "expected 'i j w', got " + std::to_string(tokens.size()) + " fields");
    }
    auto i = parse_index(tokens[0], line_no);
    auto j = parse_index(tokens[1], line_no);
    const double w = parse_real(tokens[2], line_no);
    max_node = std::max({max_node, i, j});
    if (i == j) continue;  // diagonal is immaterial
    if (i > j) std::swap(i, j);
    const auto [it, inserted] = edges.emplace(std::pair{i, j}, w);
    if (!inserted && it->second != w) {
      throw Error(Errc::parse, location(line_no) + "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") repeated with a conflicting weight");
    }
  }
  const std::size_t n = max_node + 1;
  if (edges.empty() || n < 2) throw Error(Errc::parse, "weighted-edge-list: no edges");
  if (edges.size() != packed_size(n)) {
    throw Error(Errc::parse, "weighted-edge-list: " + std::to_string(packed_size(n) - edges.size()) +
                                 " of " + std::to_string(packed_size(n)) + " pairs missing for n=" +
                                 std::to_string(n));
  }
  std::vector<double> values;
  values.reserve(edges.size());
  for (const auto& [pair, w] : edges) values.push_back(w);  // map order == pack order
  return SymmetricMatrix(n, std::move(values));
}

void put_real(std::ostream& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

}  // namespace

std::string_view to_string(MatrixFormat format) noexcept {
  switch (format) {
    case MatrixFormat::dense_csv: return "dense-csv";
    case MatrixFormat::upper_triangle_text: return "upper-triangle-text";
    case MatrixFormat::weighted_edge_list: return "weighted-edge-list";
  }
  return "unknown";
}

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "dense-csv") return MatrixFormat::dense_csv;
  if (name == "upper-triangle-text") return MatrixFormat::upper_triangle_text;
  if (name == "weighted-edge-list") return MatrixFormat::weighted_edge_list;
  throw Error(Errc::invalid_argument, "unknown matrix format '" + std::string(name) + "'");
}

SymmetricMatrix read_matrix(std::istream& in, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::dense_csv: return read_dense_csv(in);
    case MatrixFormat::upper_triangle_text: return read_upper_triangle(in);
    case MatrixFormat::weighted_edge_list: return read_edge_list(in);
  }
  throw Error(Errc::invalid_argument, "read_matrix: unknown format");
}

SymmetricMatrix load_matrix(const std::string& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "' for reading");
  return read_matrix(in, format);
}

void write_matrix(std::ostream& out, const SymmetricMatrix& m, MatrixFormat format) {
  const std::size_t n = m.dim();
  switch (format) {
    case MatrixFormat::dense_csv:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (j) out << ',';
          put_real(out, m(i, j));
        }
        out << '\n';
      }
      break;
    case MatrixFormat::upper_triangle_text: {
      out << n << '\n';
      const auto values = m.values();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto off = m.row_offset(i);
        for (std::size_t k = 0; k < n - i - 1; ++k) {
          if (k) out << ' ';
          put_real(out, values[off + k]);
        }
        out << '\n';
      }
      break;
    }
    case MatrixFormat::weighted_edge_list:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          out << i << ' ' << j << ' ';
          put_real(out, m(i, j));
          out << '\n';
        }
      }
      break;
  }
}

void save_matrix(const std::string& path, const SymmetricMatrix& m, MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  write_matrix(out, m, format);
  if (!out) throw Error(Errc::io, "write to '" + path + "' failed");
}

}  // namespace wwrank

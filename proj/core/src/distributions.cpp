#include "wwrank/distributions.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "wwrank/error.hpp"
#include "wwrank/stats.hpp"

namespace wwrank {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void validate(const EntryDistribution::Family& f) {
  std::visit(overloaded{
                 [](const Normal& d) {
                   if (!std::isfinite(d.mu) || !positive_finite(d.sigma)) {
                     throw Error(Errc::invalid_argument, "normal: need finite mu and sigma > 0");
                   }
                 },
                 [](const Uniform& d) {
                   if (!std::isfinite(d.a) || !std::isfinite(d.b) || !(d.a < d.b)) {
                     throw Error(Errc::invalid_argument, "uniform: need finite a < b");
                   }
                 },
                 [](const Exponential& d) {
                   if (!positive_finite(d.rate)) throw Error(Errc::invalid_argument, "exponential: need rate > 0");
                 },
                 [](const Pareto& d) {
                   if (!positive_finite(d.scale) || !positive_finite(d.shape)) {
                     throw Error(Errc::invalid_argument, "pareto: need scale > 0 and shape > 0");
                   }
                 },
             },
             f);
}

std::string fmt(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

[[noreturn]] void fail_at(std::size_t column, const std::string& what, std::string_view spec) {
  throw Error(Errc::parse, "distribution spec '" + std::string(spec) + "', column " + std::to_string(column) +
                               ": " + what);
}

}  // namespace

EntryDistribution::EntryDistribution(Family family) : family_(family) { validate(family_); }

double EntryDistribution::cdf(double x) const noexcept {
  return std::visit(overloaded{
                        [x](const Normal& d) { return stats::normal_cdf((x - d.mu) / d.sigma); },
                        [x](const Uniform& d) {
                          if (x <= d.a) return 0.0;
                          if (x >= d.b) return 1.0;
                          return (x - d.a) / (d.b - d.a);
                        },
                        [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-d.rate * x); },
                        [x](const Pareto& d) { return x <= d.scale ? 0.0 : 1.0 - std::pow(d.scale / x, d.shape); },
                    },
                    family_);
}

std::string EntryDistribution::to_string() const {
  return std::visit(overloaded{
                        [](const Normal& d) { return "normal(" + fmt(d.mu) + "," + fmt(d.sigma) + ")"; },
                        [](const Uniform& d) { return "uniform(" + fmt(d.a) + "," + fmt(d.b) + ")"; },
                        [](const Exponential& d) { return "exponential(" + fmt(d.rate) + ")"; },
                        [](const Pareto& d) { return "pareto(" + fmt(d.scale) + "," + fmt(d.shape) + ")"; },
                    },
                    family_);
}

bool operator==(const EntryDistribution& a, const EntryDistribution& b) noexcept {
  if (a.family_.index() != b.family_.index()) return false;
  return std::visit(
      [&b](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.family_);
        if constexpr (std::is_same_v<T, Normal>) return x.mu == y.mu && x.sigma == y.sigma;
        if constexpr (std::is_same_v<T, Uniform>) return x.a == y.a && x.b == y.b;
        if constexpr (std::is_same_v<T, Exponential>) return x.rate == y.rate;
        if constexpr (std::is_same_v<T, Pareto>) return x.scale == y.scale && x.shape == y.shape;
      },
      a.family_);
}

EntryDistribution parse_distribution(std::string_view spec) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < spec.size() && (spec[pos] == ' ' || spec[pos] == '\t')) ++pos;
  };
  skip_ws();
  const std::size_t name_start = pos;
  while (pos < spec.size() && std::isalpha(static_cast<unsigned char>(spec[pos]))) ++pos;
  const std::string_view name = spec.substr(name_start, pos - name_start);
  if (name.empty()) fail_at(name_start + 1, "expected a distribution name", spec);
  skip_ws();
  if (pos >= spec.size() || spec[pos] != '(') fail_at(pos + 1, "expected '('", spec);
  ++pos;

  std::vector<double> args;
  while (true) {
    skip_ws();
    const std::size_t start = pos;
    const char* first = spec.data() + pos;
    if (pos < spec.size() && spec[pos] == '+') ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, spec.data() + spec.size(), value);
    if (ec != std::errc() || !std::isfinite(value)) fail_at(start + 1, "expected a number", spec);
    args.push_back(value);
    pos = static_cast<std::size_t>(ptr - spec.data());
    skip_ws();
    if (pos < spec.size() && spec[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < spec.size() && spec[pos] == ')') {
      ++pos;
      break;
    }
    fail_at(pos + 1, "expected ',' or ')'", spec);
  }
  skip_ws();
  if (pos != spec.size()) fail_at(pos + 1, "unexpected trailing characters", spec);

  auto arity = [&](std::size_t expected) {
    if (args.size() != expected) {
      fail_at(name_start + 1,
              std::string(name) + " takes " + std::to_string(expected) + " parameter(s), got " +
                  std::to_string(args.size()),
              spec);
    }
  };
  try {
    if (name == "normal") {
      arity(2);
      return EntryDistribution(Normal{args[0], args[1]});
    }
    if (name == "uniform") {
      arity(2);
      return EntryDistribution(Uniform{args[0], args[1]});
    }
    if (name == "exponential") {
      arity(1);
      return EntryDistribution(Exponential{args[0]});
    }
    if (name == "pareto") {
      arity(2);
      return EntryDistribution(Pareto{args[0], args[1]});
    }
  } catch (const Error& e) {
    if (e.code() == Errc::parse) throw;
    fail_at(name_start + 1, e.what(), spec);
  }
  fail_at(name_start + 1, "unknown distribution '" + std::string(name) + "'", spec);
}

EntrySampler::EntrySampler(const EntryDistribution& dist) : family_(dist.family()) {
  std::visit(overloaded{
                 [this](const Normal& d) { normal_ = std::normal_distribution<double>(d.mu, d.sigma); },
                 [this](const Uniform& d) { uniform_ = std::uniform_real_distribution<double>(d.a, d.b); },
                 [this](const Exponential& d) { exponential_ = std::exponential_distribution<double>(d.rate); },
                 [this](const Pareto& d) { exponential_ = std::exponential_distribution<double>(d.shape); },
             },
             family_);
}

double EntrySampler::operator()(SplitMix64& rng) {
  return std::visit(overloaded{
                        [&](const Normal&) { return normal_(rng); },
                        [&](const Uniform&) { return uniform_(rng); },
                        [&](const Exponential&) { return exponential_(rng); },
                        // log(X / scale) ~ Exponential(shape)
                        [&](const Pareto& d) { return d.scale * std::exp(exponential_(rng)); },
                    },
                    family_);
}

}  // namespace wwrank

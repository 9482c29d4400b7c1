// Copyright 2026 The distbackbone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file algebra.hpp
 * @brief Path-length algebras on [0, +inf].
 *
 * A length operator g combines two distances into the length of their
 * concatenation. Every operator here is commutative, associative, monotone
 * in both arguments, has 0 as identity and +inf as absorbing element, and
 * therefore satisfies g(a, b) >= max(a, b). The last property is what lets a
 * label-setting search compute shortest paths under g.
 *
 * The paths' candidate lengths are always aggregated with min.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "distbackbone/errors.hpp"

namespace distbackbone {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance used when comparing operator results for equality.
inline constexpr double kLawTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Built-in operators. Each is a stateless (or parameter-only) functor so the
// closure kernels can be instantiated per operator.
// ---------------------------------------------------------------------------

struct SumLength {
  constexpr double operator()(double a, double b) const noexcept { return a + b; }
};

struct MaxLength {
  constexpr double operator()(double a, double b) const noexcept { return std::max(a, b); }
};

/// (a^r + b^r)^(1/r), evaluated as M * (1 + (m/M)^r)^(1/r) with M = max(a, b)
/// so that large r neither overflows nor underflows.
struct MinkowskiLength {
  double r = 2.0;

  double operator()(double a, double b) const noexcept {
    if (r == 1.0) return a + b;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (lo == 0.0 || hi == kInfinity) return hi;
    const double ratio = lo / hi;
    // exp(r * log(ratio)) is (lo/hi)^r computed in the log domain.
    const double tail = std::exp(r * std::log(ratio));
    return hi * std::exp(std::log1p(tail) / r);
  }
};

/// (a + 1)(b + 1) - 1; the distance-side image of the product t-norm.
struct ProductLength {
  constexpr double operator()(double a, double b) const noexcept {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return a + b + a * b;
  }
};

/// a if b == 0, b if a == 0, +inf otherwise.
struct DrasticLength {
  constexpr double operator()(double a, double b) const noexcept {
    if (b == 0.0) return a;
    if (a == 0.0) return b;
    return kInfinity;
  }
};

/// User-supplied operator. Its laws are not assumed; closure routines check
/// them before use.
struct CustomLength {
  std::function<double(double, double)> fn;

  double operator()(double a, double b) const { return fn(a, b); }
};

enum class OperatorKind : std::uint8_t { sum = 0, max = 1, minkowski = 2, product = 3, drastic = 4, custom = 255 };

/// Type-erased handle on one of the operators above. Cheap to copy.
class LengthOperator {
 public:
  static LengthOperator sum() { return LengthOperator(OperatorKind::sum, 1.0, "sum"); }
  static LengthOperator max() { return LengthOperator(OperatorKind::max, 0.0, "max"); }
  static LengthOperator product() { return LengthOperator(OperatorKind::product, 0.0, "product"); }
  static LengthOperator drastic() { return LengthOperator(OperatorKind::drastic, 0.0, "drastic"); }

  static LengthOperator minkowski(double r) {
    if (!(r >= 1.0) || !std::isfinite(r)) {
      throw Error("minkowski exponent must be a finite value >= 1, got " + std::to_string(r));
    }
    std::ostringstream id;
    id << "minkowski(r=" << r << ")";
    return LengthOperator(OperatorKind::minkowski, r, id.str());
  }

  static LengthOperator custom(std::string id, std::function<double(double, double)> fn) {
    LengthOperator op(OperatorKind::custom, 0.0, std::move(id));
    op.custom_ = CustomLength{std::move(fn)};
    return op;
  }

  /// Looks up a built-in operator by name. `r` is only read for minkowski.
  static LengthOperator from_name(std::string_view name, double r = 2.0) {
    if (name == "sum" || name == "metric") return sum();
    if (name == "max" || name == "ultrametric") return max();
    if (name == "minkowski") return minkowski(r);
    if (name == "product") return product();
    if (name == "drastic") return drastic();
    throw Error("unknown operator '" + std::string(name) + "' (expected sum, max, minkowski, product or drastic)");
  }

  /// Calls `f` with the concrete functor so hot loops can be specialized.
  template <class F>
  decltype(auto) dispatch(F&& f) const {
    switch (kind_) {
      case OperatorKind::sum: return f(SumLength{});
      case OperatorKind::max: return f(MaxLength{});
      case OperatorKind::minkowski: return f(MinkowskiLength{param_});
      case OperatorKind::product: return f(ProductLength{});
      case OperatorKind::drastic: return f(DrasticLength{});
      case OperatorKind::custom: break;
    }
    return f(custom_);
  }

  double operator()(double a, double b) const {
    return dispatch([a, b](const auto& op) { return op(a, b); });
  }

  OperatorKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  const std::string& id() const noexcept { return id_; }
  bool is_builtin() const noexcept { return kind_ != OperatorKind::custom; }

 private:
  LengthOperator(OperatorKind kind, double param, std::string id)
      : kind_(kind), param_(param), id_(std::move(id)) {}

  OperatorKind kind_;
  double param_;
  std::string id_;
  CustomLength custom_;
};

/// All five built-ins, Minkowski at r = 2.
inline std::vector<LengthOperator> builtin_operators() {
  return {LengthOperator::sum(), LengthOperator::max(), LengthOperator::minkowski(2.0),
          LengthOperator::product(), LengthOperator::drastic()};
}

/// Left fold of `op` over a path's edge weights.
inline double path_length(const LengthOperator& op, std::span<const double> weights) {
  if (weights.empty()) throw Error("path_length: empty weight list");
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error("path_length: negative or NaN weight");
  }
  return op.dispatch([&](const auto& g) {
    double acc = weights.front();
    for (std::size_t i = 1; i < weights.size(); ++i) acc = g(acc, weights[i]);
    return acc;
  });
}

// ---------------------------------------------------------------------------
// Proximity <-> distance isomorphism: d = 1/p - 1, p = 1/(d + 1).
// ---------------------------------------------------------------------------

inline double proximity_to_distance(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error("proximity must lie in [0, 1], got " + std::to_string(p));
  }
  if (p == 0.0) return kInfinity;
  return 1.0 / p - 1.0;
}

inline double distance_to_proximity(double d) {
  if (!(d >= 0.0)) throw Error("distance must be >= 0, got " + std::to_string(d));
  if (d == kInfinity) return 0.0;
  return 1.0 / (d + 1.0);
}

/// The t-norm induced on proximities by `op` through the isomorphism.
/// Arguments outside [0, 1] are clamped; 0 behaves as +inf distance.
inline double derive_conjunction(const LengthOperator& op, double p1, double p2) {
  p1 = std::clamp(p1, 0.0, 1.0);
  p2 = std::clamp(p2, 0.0, 1.0);
  return distance_to_proximity(op(proximity_to_distance(p1), proximity_to_distance(p2)));
}

// ---------------------------------------------------------------------------
// Law checking.
// ---------------------------------------------------------------------------

inline bool nearly_equal(double a, double b, double rel_tol = kLawTolerance) {
  if (a == b) return true;
  if (std::isnan(a) || std::isnan(b) || std::isinf(a) || std::isinf(b)) return false;
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

inline bool leq_with_tolerance(double a, double b, double rel_tol = kLawTolerance) {
  if (std::isnan(a) || std::isnan(b)) return false;
  return a <= b || nearly_equal(a, b, rel_tol);
}

enum class Law { commutativity, associativity, monotonicity, identity, extension_bound };

inline const char* law_name(Law law) {
  switch (law) {
    case Law::commutativity: return "commutativity";
    case Law::associativity: return "associativity";
    case Law::monotonicity: return "monotonicity";
    case Law::identity: return "identity";
    case Law::extension_bound: return "extension_bound";
  }
  return "?";
}

struct LawCounterexample {
  Law law;
  std::vector<double> arguments;
  std::string detail;
};

struct LawReport {
  std::string operator_id;
  std::size_t samples = 0;
  std::vector<LawCounterexample> failures;  // at most one per law, first found

  bool passed() const noexcept { return failures.empty(); }
  bool passed(Law law) const noexcept {
    return std::none_of(failures.begin(), failures.end(),
                        [law](const LawCounterexample& c) { return c.law == law; });
  }
};

namespace detail {

/// Draws from [0, 1e6] mixing uniform, log-uniform and the special values
/// 0 and +inf.
class OperandSampler {
 public:
  explicit OperandSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    const int bucket = std::uniform_int_distribution<int>(0, 19)(rng_);
    if (bucket == 0) return 0.0;
    if (bucket == 1) return kInfinity;
    if (bucket < 10) return std::uniform_real_distribution<double>(0.0, 1e6)(rng_);
    return std::pow(10.0, std::uniform_real_distribution<double>(-6.0, 6.0)(rng_));
  }

  double finite_non_negative() {
    return std::uniform_real_distribution<double>(0.0, 1e3)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string format_args(std::initializer_list<double> args) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  bool first = true;
  for (double v : args) {
    if (!first) os << ", ";
    os << v;
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace detail

/// Randomized check of the operator laws over `samples` seeded triples.
inline LawReport check_operator_laws(const LengthOperator& op, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error("check_operator_laws: samples must be >= 1");
  LawReport report{op.id(), samples, {}};
  detail::OperandSampler draw(seed);
  auto fail = [&](Law law, std::initializer_list<double> args, const std::string& detail) {
    if (!report.passed(law)) return;
    report.failures.push_back({law, std::vector<double>(args), detail + " at " + detail::format_args(args)});
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const double a = draw(), b = draw(), c = draw();

    const double ab = op(a, b), ba = op(b, a);
    if (!(ab == ba || nearly_equal(ab, ba))) fail(Law::commutativity, {a, b}, "g(a,b) != g(b,a)");

    const double left = op(op(a, b), c), right = op(a, op(b, c));
    if (!(left == right || nearly_equal(left, right))) {
      fail(Law::associativity, {a, b, c}, "g(g(a,b),c) != g(a,g(b,c))");
    }

    if (!(op(a, 0.0) == a || nearly_equal(op(a, 0.0), a))) fail(Law::identity, {a}, "g(a,0) != a");

    if (!leq_with_tolerance(std::max(a, b), ab)) fail(Law::extension_bound, {a, b}, "g(a,b) < max(a,b)");

    const double a2 = a + draw.finite_non_negative(), b2 = b + draw.finite_non_negative();
    if (!leq_with_tolerance(ab, op(a2, b2))) {
      fail(Law::monotonicity, {a, b, a2, b2}, "g(a,b) > g(a',b') with a<=a', b<=b'");
    }
  }
  return report;
}

struct DominanceVerdict {
  bool holds = true;
  std::optional<std::pair<double, double>> counterexample;  // (a, b) with g1 > g2
};

/// Checks g1(a, b) <= g2(a, b) on sampled pairs plus a fixed set of corner
/// cases (including a = b = 1).
inline DominanceVerdict dominance_check(const LengthOperator& g1, const LengthOperator& g2,
                                        std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error("dominance_check: samples must be >= 1");
  DominanceVerdict verdict;
  auto probe = [&](double a, double b) {
    if (!verdict.holds) return;
    if (!leq_with_tolerance(g1(a, b), g2(a, b))) {
      verdict.holds = false;
      verdict.counterexample = std::make_pair(a, b);
    }
  };
  for (double a : {0.0, 0.5, 1.0, 2.0, kInfinity}) {
    for (double b : {0.0, 0.5, 1.0, 2.0, kInfinity}) probe(a, b);
  }
  detail::OperandSampler draw(seed);
  for (std::size_t s = 0; s < samples && verdict.holds; ++s) probe(draw(), draw());
  return verdict;
}

}  // namespace distbackbone

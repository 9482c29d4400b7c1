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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "distbackbone/algebra.hpp"

using namespace distbackbone;

TEST(Operators, BasicValues) {
  EXPECT_EQ(LengthOperator::sum()(2, 3), 5);
  EXPECT_EQ(LengthOperator::max()(2, 3), 3);
  EXPECT_DOUBLE_EQ(LengthOperator::minkowski(2)(3, 4), 5.0);
  EXPECT_EQ(LengthOperator::minkowski(1)(0.1, 0.2), 0.1 + 0.2);
  EXPECT_EQ(LengthOperator::product()(1, 2), 5);
  EXPECT_EQ(LengthOperator::drastic()(0, 7), 7);
  EXPECT_EQ(LengthOperator::drastic()(7, 0), 7);
  EXPECT_EQ(LengthOperator::drastic()(1e-300, 1e-300), kInfinity);
}

TEST(Operators, InfinityAndZeroBehave) {
  for (const auto& op : builtin_operators()) {
    SCOPED_TRACE(op.id());
    EXPECT_EQ(op(kInfinity, 3.0), kInfinity);
    EXPECT_EQ(op(3.0, kInfinity), kInfinity);
    EXPECT_EQ(op(0.0, 3.0), 3.0);
    EXPECT_EQ(op(0.0, 0.0), 0.0);
  }
}

TEST(Operators, MinkowskiHugeExponentStaysFinite) {
  const auto op = LengthOperator::minkowski(1e6);
  EXPECT_TRUE(std::isfinite(op(1e300, 1e300)));
  EXPECT_NEAR(op(1e300, 1e300) / 1e300, 1.0, 1e-5);
  EXPECT_EQ(op(2.0, 1.0), 2.0);
}

// Minkowski approaches max as r grows. The gap is at most hi * (2^(1/r) - 1),
// attained when both arguments are equal; it vanishes fast when they differ.
TEST(Operators, MinkowskiApproachesMax) {
  const auto op = LengthOperator::minkowski(64);
  const double bound = std::pow(2.0, 1.0 / 64) - 1.0;
  for (double a : {0.1, 1.0, 7.0, 1e5}) {
    for (double b : {0.1, 1.0, 3.0, 7.0, 1e5}) {
      const double hi = std::max(a, b);
      EXPECT_LE(op(a, b) - hi, hi * bound * (1 + 1e-12));
      EXPECT_GE(op(a, b), hi);
      if (std::min(a, b) <= 0.8 * hi) {
        EXPECT_LE((op(a, b) - hi) / hi, 1e-6);
      }
    }
  }
}

TEST(Operators, RejectsBadMinkowskiExponent) {
  EXPECT_THROW(LengthOperator::minkowski(0.5), Error);
  EXPECT_THROW(LengthOperator::minkowski(std::nan("")), Error);
  EXPECT_THROW(LengthOperator::from_name("hyperbolic"), Error);
}

TEST(Operators, NamesAndAliases) {
  EXPECT_EQ(LengthOperator::from_name("metric").kind(), OperatorKind::sum);
  EXPECT_EQ(LengthOperator::from_name("ultrametric").kind(), OperatorKind::max);
  EXPECT_EQ(LengthOperator::from_name("minkowski", 3).param(), 3);
  EXPECT_EQ(LengthOperator::minkowski(2).id(), "minkowski(r=2)");
}

TEST(PathLength, LeftFold) {
  const std::vector<double> w = {1, 2, 3};
  EXPECT_EQ(path_length(LengthOperator::sum(), w), 6);
  EXPECT_EQ(path_length(LengthOperator::max(), w), 3);
  EXPECT_EQ(path_length(LengthOperator::product(), w), 23);  // 2*3*4 - 1
  EXPECT_THROW(path_length(LengthOperator::sum(), std::vector<double>{}), Error);
  EXPECT_THROW(path_length(LengthOperator::sum(), std::vector<double>{-1}), Error);
}

TEST(Isomorphism, RoundTrip) {
  EXPECT_EQ(proximity_to_distance(1.0), 0.0);
  EXPECT_EQ(proximity_to_distance(0.0), kInfinity);
  EXPECT_EQ(proximity_to_distance(0.5), 1.0);
  EXPECT_EQ(distance_to_proximity(kInfinity), 0.0);
  EXPECT_EQ(distance_to_proximity(0.0), 1.0);
  for (double p : {0.01, 0.2, 0.37, 0.9, 1.0}) EXPECT_NEAR(distance_to_proximity(proximity_to_distance(p)), p, 1e-15);
  EXPECT_THROW(proximity_to_distance(1.5), Error);
  EXPECT_THROW(distance_to_proximity(-1.0), Error);
}

TEST(Isomorphism, DerivedConjunctions) {
  // sum <-> Hamacher product, product <-> algebraic product, max <-> min.
  EXPECT_NEAR(derive_conjunction(LengthOperator::sum(), 0.5, 0.5), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(derive_conjunction(LengthOperator::product(), 0.5, 0.4), 0.2, 1e-15);
  EXPECT_EQ(derive_conjunction(LengthOperator::max(), 0.3, 0.7), 0.3);
  EXPECT_EQ(derive_conjunction(LengthOperator::drastic(), 1.0, 0.7), 0.7);
  EXPECT_EQ(derive_conjunction(LengthOperator::drastic(), 0.9, 0.7), 0.0);
}

TEST(Laws, BuiltinsPass) {
  for (const auto& op : builtin_operators()) {
    const auto r = check_operator_laws(op, 3000, 7);
    EXPECT_TRUE(r.passed()) << op.id() << ": " << (r.failures.empty() ? "" : r.failures.front().detail);
  }
  EXPECT_TRUE(check_operator_laws(LengthOperator::minkowski(37.5), 1000, 3).passed());
}

TEST(Laws, CatchBrokenCustomOperators) {
  const auto mean = LengthOperator::custom("mean", [](double a, double b) { return (a + b) / 2; });
  const auto r = check_operator_laws(mean, 500, 1);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.passed(Law::identity));

  const auto skew = LengthOperator::custom("skew", [](double a, double b) { return a + 2 * b; });
  const auto s = check_operator_laws(skew, 500, 1);
  EXPECT_FALSE(s.passed(Law::commutativity));
  ASSERT_FALSE(s.failures.empty());
  EXPECT_FALSE(s.failures.front().arguments.empty());
}

TEST(Laws, LawfulCustomOperatorPasses) {
  const auto l3 = LengthOperator::custom("l3", [](double a, double b) { return MinkowskiLength{3}(a, b); });
  EXPECT_TRUE(check_operator_laws(l3, 500, 5).passed());
}

TEST(Dominance, ChainOrder) {
  const auto ops = std::vector<LengthOperator>{LengthOperator::max(), LengthOperator::minkowski(2), LengthOperator::sum(),
                                               LengthOperator::product(), LengthOperator::drastic()};
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    EXPECT_TRUE(dominance_check(ops[i], ops[i + 1], 2000, 9).holds) << ops[i].id();
    const auto rev = dominance_check(ops[i + 1], ops[i], 2000, 9);
    EXPECT_FALSE(rev.holds) << ops[i + 1].id();
    EXPECT_TRUE(rev.counterexample.has_value());
  }
}

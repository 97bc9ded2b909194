// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "anticonc/subsetsum.hpp"
#include "anticonc/sumsets.hpp"
#include "oracles.hpp"

using namespace anticonc;

namespace {

std::vector<oracle::Vec> vecs(const CubeSet& c) {
  std::vector<oracle::Vec> out;
  for (auto m : c) {
    oracle::Vec v(static_cast<std::size_t>(c.n()));
    for (int i = 0; i < c.n(); ++i) v[i] = static_cast<int>((m >> i) & 1u);
    out.push_back(v);
  }
  return out;
}

std::map<oracle::Vec, long long> as_map(const MultiSumset& s) {
  std::map<oracle::Vec, long long> m;
  for (const auto& e : s.entries()) m[s.vector_of(e)] = e.multiplicity.get_si();
  return m;
}

CubeSet random_cube_set(std::mt19937_64& rng, int n, std::size_t max_size) {
  std::vector<CubeSet::Member> members;
  const std::size_t size = 1 + rng() % max_size;
  for (std::size_t i = 0; i < size; ++i) members.push_back(rng() & ((CubeSet::Member{1} << n) - 1));
  return CubeSet(n, members);
}

CubeSet S(std::vector<std::string> rows) { return CubeSet::from_strings(rows); }

}  // namespace

TEST(CubeSetType, ParsingAndValidation) {
  const CubeSet c = S({"10", "01", "10"});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.to_strings(), (std::vector<std::string>{"10", "01"}));
  EXPECT_TRUE(c.contains(CubeSet::parse_member("01", 2)));
  EXPECT_THROW(S({"10", "1"}), ParseError);
  EXPECT_THROW(S({"12"}), ParseError);
  EXPECT_THROW(CubeSet(2, {4}), BadParams);
  EXPECT_EQ(CubeSet::full(3).size(), 8u);
}

TEST(RadixCodecType, AdditionOfKeysIsVectorAddition) {
  const RadixCodec codec(5, 4);
  const std::vector<int> a{1, 0, 2, 0, 1}, b{0, 1, 1, 2, 1};
  std::vector<int> sum(5);
  for (int i = 0; i < 5; ++i) sum[i] = a[i] + b[i];
  EXPECT_EQ(codec.encode(a) + codec.encode(b), codec.encode(sum));
  EXPECT_EQ(codec.decode(codec.encode(sum)), sum);
  EXPECT_THROW(RadixCodec(64, 4), BudgetExceeded);
}

TEST(IteratedSumset, Examples) {
  const MultiSumset s = iterated_sumset(S({"10", "01"}), 2);
  EXPECT_EQ(as_map(s), (std::map<oracle::Vec, long long>{{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}));
  EXPECT_EQ(s.multiplicity({1, 1}), 2);
  EXPECT_EQ(s.multiplicity({2, 2}), 0);

  const CubeSet B = S({"110", "011", "000"});
  const MultiSumset one = iterated_sumset(B, 1);
  EXPECT_EQ(one.support_size(), 3u);
  for (const auto& e : one.entries()) EXPECT_EQ(e.multiplicity, 1);

  const MultiSumset zero = iterated_sumset(CubeSet::singleton_zero(4), 5);
  ASSERT_EQ(zero.support_size(), 1u);
  EXPECT_EQ(zero.multiplicity({0, 0, 0, 0}), 1);
}

TEST(IteratedSumset, Budget) {
  Limits lim;
  lim.sumset_budget = 100;
  EXPECT_THROW(iterated_sumset_enumerate(CubeSet::full(3), 3, lim), BudgetExceeded);
  EXPECT_THROW(iterated_sumset(CubeSet::full(6), 4, lim), BudgetExceeded);
  EXPECT_THROW(iterated_sumset(CubeSet::full(2), 0), BadParams);
}

TEST(Injectivity, Examples) {
  const Weights w{1, 1, 2};
  const ExactInt tau = concentration(w).tau;
  EXPECT_EQ(tau, 1);
  const InjectivityResult r = check_injectivity(unique_preimages(w), fiber(w, tau), 1);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.product_size, 10u);
  EXPECT_EQ(r.sumset_size, 10u);

  // 10 + 01 = 01 + 10.
  const InjectivityResult v = check_injectivity(S({"01", "10"}), S({"10", "01"}), 1);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  std::vector<int> s1(2), s2(2);
  for (int i = 0; i < 2; ++i) {
    s1[i] = static_cast<int>((v.witness->a1 >> i) & 1u) + v.witness->c1[i];
    s2[i] = static_cast<int>((v.witness->a2 >> i) & 1u) + v.witness->c2[i];
  }
  EXPECT_EQ(s1, s2);
  EXPECT_NE(v.witness->a1, v.witness->a2);

  // {00, 11} + {10, 01} gives four distinct sums.
  EXPECT_TRUE(check_injectivity(S({"00", "11"}), S({"10", "01"}), 1).holds);

  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_injectivity(CubeSet::singleton_zero(3), CubeSet::full(3), k).holds);
  EXPECT_THROW(check_injectivity(S({"0"}), S({"00"}), 1), BadParams);
}

TEST(Density, Examples) {
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(density_ratio_max(CubeSet::full(1), k), 1);
  EXPECT_EQ(density_ratio_max(CubeSet::full(2), 1), 1);
  const CubeSet B = fiber({1, 1, 1}, 1);
  const ExactRat v = density_ratio_max(B, 2);
  EXPECT_LE(v, make_rat(64, 9));
  EXPECT_EQ(density_cap(B, 2), make_rat(64, 9));
  ExactRat best = 0;
  for (const auto& [c, m] : oracle::sumset(vecs(B), 3, 2)) {
    mpq_class bin = 1;
    for (int x : c) bin *= oracle::pmf(2, x);
    best = std::max(best, ExactRat(mpq_class(static_cast<long>(m), 9) / bin));
  }
  EXPECT_EQ(v, best);
  EXPECT_EQ(v, make_rat(64, 9));  // attained at c = (2,0,0)
}

TEST(Partition, Examples) {
  const Weights w{1, 1, 2};
  const CubeSet A = unique_preimages(w);
  const CubeSet B = fiber(w, concentration(w).tau);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(partition_total(A, B, k), 1);
  EXPECT_EQ(partition_total(CubeSet::singleton_zero(4), CubeSet::singleton_zero(4), 3), 1);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(SumsetProperty, ConvolutionMatchesEnumerationAndOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % 4);
    const CubeSet B = random_cube_set(rng, n, 6);
    const MultiSumset conv = iterated_sumset(B, k);
    const MultiSumset direct = iterated_sumset_enumerate(B, k);
    EXPECT_EQ(conv, direct);
    EXPECT_EQ(as_map(conv), oracle::sumset(vecs(B), n, k));
    EXPECT_EQ(conv.total(), pow_ui(ExactInt(static_cast<unsigned long>(B.size())), static_cast<unsigned long>(k)));
  }
}

TEST(SumsetProperty, InjectivityMatchesOracle) {
  std::mt19937_64 rng(78);
  int violated = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int k = 1 + static_cast<int>(rng() % 3);
    const CubeSet A = random_cube_set(rng, n, 5);
    const CubeSet B = random_cube_set(rng, n, 4);
    const bool expected = oracle::injective(vecs(A), vecs(B), n, k);
    EXPECT_EQ(check_injectivity(A, B, k).holds, expected);
    violated += expected ? 0 : 1;
  }
  EXPECT_GT(violated, 0);  // the sample exercises both outcomes
}

TEST(SumsetProperty, LemmaInstancesAndDensityCap) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const auto raw = oracle::random_weights(rng, 7, 4);
    std::vector<ExactInt> v;
    for (long long x : raw) v.emplace_back(static_cast<long>(x));
    const Weights w(v);
    const CubeSet A = unique_preimages(w);
    const CubeSet B = fiber(w, concentration(w).tau);
    for (int k = 1; k <= 3; ++k) {
      EXPECT_TRUE(check_injectivity(A, B, k).holds) << w.str() << " k=" << k;
      EXPECT_LE(density_ratio_max(B, k), density_cap(B, k)) << w.str() << " k=" << k;
      EXPECT_EQ(partition_total(A, B, k), 1);
    }
  }
}

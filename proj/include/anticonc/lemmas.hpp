// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "anticonc/bound_expr.hpp"
#include "anticonc/cube_set.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/numerics.hpp"
#include "anticonc/random.hpp"
#include "anticonc/subsetsum.hpp"

namespace anticonc {

enum class Verdict { Holds, Fails, Undecidable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Undecidable: return "Undecidable";
  }
  return "?";
}

/// Verdict of "q <= e".
inline Verdict verdict_le(const ExactRat& q, const BoundExpr& e, PrecisionPolicy policy = {}) {
  try {
    return cmp_bound(q, e, policy) == Ordering::Greater ? Verdict::Fails : Verdict::Holds;
  } catch (const Undecidable&) {
    return Verdict::Undecidable;
  }
}

// ---------------------------------------------------------------------------
// One-dimensional binomial facts
// ---------------------------------------------------------------------------

/// P[Bin(k) = x - a] / P[Bin(k) = x] for a in {0, 1}; equals x / (k+1-x) when a = 1.
inline ExactRat coordinate_ratio(int x, int a, int k) {
  if (k < 0 || x < 0 || x > k) throw BadParams("coordinate_ratio: need 0 <= x <= k");
  if (a != 0 && a != 1) throw BadParams("coordinate_ratio: a must be 0 or 1");
  if (a == 0) return 1;
  return make_rat(ExactInt(x), ExactInt(k + 1 - x));
}

/// E_{x ~ Bin(k)} (x / (k+1-x))^s, exactly.
inline ExactRat ratio_moment(int k, int s) {
  if (k < 1) throw BadParams("ratio_moment: k must be >= 1");
  if (s < 1) throw BadParams("ratio_moment: s must be >= 1");
  ExactRat total = 0;
  for (int x = 1; x <= k; ++x)
    total += pow_ui(make_rat(ExactInt(x), ExactInt(k + 1 - x)), static_cast<unsigned long>(s)) *
             binom_pmf(k, x);
  return total;
}

struct MomentRecord {
  int k = 0;
  int s = 0;
  ExactRat lhs;
  BoundExpr rhs = 0;
  Verdict verdict = Verdict::Undecidable;
  bool in_hypothesis = false;  // 1 <= s <= k / (16 pi)
};

/// exp(10 pi s^2 / k) + 2 k^s (4/5)^k
inline BoundExpr initial_bound_rhs(int k, int s) {
  const BoundExpr growth = exp(BoundExpr(make_rat(ExactInt(10L * s * s), ExactInt(k))) * BoundExpr::pi());
  const BoundExpr tail = BoundExpr(2) * pow(BoundExpr(k), static_cast<unsigned long>(s)) *
                         pow(BoundExpr(ExactRat(4, 5)), static_cast<unsigned long>(k));
  return growth + tail;
}

/// s <= k / (16 pi), decided without floating point: 16 pi s <= k.
inline bool moment_hypothesis(int k, int s, PrecisionPolicy policy = {}) {
  if (s < 1) return false;
  const BoundExpr lhs = BoundExpr(16L * s) * BoundExpr::pi();
  return cmp_bound(ExactRat(k), lhs, policy) != Ordering::Less;
}

/// Largest integer s with 16 pi s <= k.
inline int max_hypothesis_s(int k, PrecisionPolicy policy = {}) {
  int s = 0;
  while (moment_hypothesis(k, s + 1, policy)) ++s;
  return s;
}

inline MomentRecord check_initial_bound(int k, int s, PrecisionPolicy policy = {}) {
  if (k < 1 || s < 1) throw BadParams("check_initial_bound: need k >= 1 and s >= 1");
  MomentRecord r;
  r.k = k;
  r.s = s;
  r.lhs = ratio_moment(k, s);
  r.rhs = initial_bound_rhs(k, s);
  r.in_hypothesis = moment_hypothesis(k, s, policy);
  r.verdict = verdict_le(r.lhs, r.rhs, policy);
  return r;
}

struct SecondMomentResult {
  int k = 0;
  ExactRat lhs;     // E[x^2 / (k+1-x)^2]
  ExactRat series;  // sum_{l=0}^{k-1} (l+1)/(k-l) C(k,l) 2^-k
  ExactRat mid;     // (k+2)/k - (3k+4)/k 2^-k
  bool identity = false;     // lhs == series
  bool above_mid = false;    // series >= mid
  bool mid_at_least_one = false;
  Verdict verdict = Verdict::Fails;
};

inline SecondMomentResult second_moment_identity(int k) {
  if (k < 3) throw BadParams("second_moment_identity: k must be >= 3");
  SecondMomentResult r;
  r.k = k;
  r.lhs = ratio_moment(k, 2);
  r.series = 0;
  for (int l = 0; l <= k - 1; ++l)
    r.series += make_rat(ExactInt(l + 1), ExactInt(k - l)) * binom_pmf(k, l);
  r.mid = make_rat(ExactInt(k + 2), ExactInt(k)) -
          make_rat(ExactInt(3 * k + 4), ExactInt(k) * pow2(static_cast<unsigned long>(k)));
  r.identity = r.lhs == r.series;
  r.above_mid = r.series >= r.mid;
  r.mid_at_least_one = r.mid >= 1;
  r.verdict = (r.identity && r.above_mid && r.mid_at_least_one) ? Verdict::Holds : Verdict::Fails;
  return r;
}

struct TailResult {
  int k = 0;
  ExactRat tail;  // P[|x - k/2| >= k/3]
  ExactRat bound;  // 2 (4/5)^k
  Verdict verdict = Verdict::Fails;
};

inline TailResult tail_check(int k, PrecisionPolicy policy = {}) {
  if (k < 1) throw BadParams("tail_check: k must be >= 1");
  TailResult r;
  r.k = k;
  r.tail = 0;
  // |x - k/2| >= k/3  <=>  |6x - 3k| >= 2k
  for (int x = 0; x <= k; ++x)
    if (std::abs(6 * x - 3 * k) >= 2 * k) r.tail += binom_pmf(k, x);
  const BoundExpr rhs = BoundExpr(2) * pow(BoundExpr(ExactRat(4, 5)), static_cast<unsigned long>(k));
  r.bound = *rhs.exact_value();
  r.verdict = verdict_le(r.tail, rhs, policy);
  return r;
}

struct MaxRatioResult {
  int k = 0;
  ExactRat max_ratio;  // max_l max{C(k,l-1), C(k,l)} / C(k,l)
  Verdict verdict = Verdict::Fails;
};

inline MaxRatioResult max_ratio_bound(int k) {
  if (k < 2) throw BadParams("max_ratio_bound: k must be >= 2");
  MaxRatioResult r;
  r.k = k;
  r.max_ratio = 0;
  for (int l = 0; l <= k; ++l) {
    ExactInt top = std::max(binom(k, l - 1), binom(k, l));
    ExactRat q = make_rat(top, binom(k, l));
    if (q > r.max_ratio) r.max_ratio = q;
  }
  r.verdict = r.max_ratio <= k ? Verdict::Holds : Verdict::Fails;
  return r;
}

// ---------------------------------------------------------------------------
// Sup-ratio expectation over Bin(k)^n
// ---------------------------------------------------------------------------

namespace detail {

// Since C(k,x) * x/(k+1-x) = C(k,x-1), the weighted integrand at x is
//   max_a prod_i C(k, x_i - a_i) / 2^(kn),
// an integer numerator. Acc must hold (k+1)^n * max_x C(k,x)^n.
template <class Acc>
ExactInt sup_ratio_numerator(const CubeSet& A, int k) {
  const int n = A.n();
  std::vector<Acc> row;
  for (int x = 0; x <= k; ++x) {
    if constexpr (std::is_same_v<Acc, ExactInt>)
      row.push_back(binom(k, x));
    else
      row.push_back(static_cast<Acc>(binom(k, x).get_ui()));
  }
  const Acc kpow = [&] {
    Acc p = Acc(1);
    for (int i = 0; i < n; ++i) p *= Acc(k);
    return p;
  }();

  std::vector<int> x(static_cast<std::size_t>(n), 0);
  Acc total = Acc(0);
  while (true) {
    Acc best = Acc(0);
    for (auto a : A) {
      Acc prod = Acc(1);
      for (int i = 0; i < n; ++i) {
        const int shifted = x[static_cast<std::size_t>(i)] - static_cast<int>((a >> i) & 1u);
        if (shifted < 0) {
          prod = Acc(0);
          break;
        }
        prod *= row[static_cast<std::size_t>(shifted)];
      }
      if (prod > best) best = prod;
    }
    Acc base = Acc(1);
    for (int i = 0; i < n; ++i) base *= row[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    if (best > kpow * base) throw InvariantViolated("sup-ratio integrand exceeds k^n");
    total += best;

    int pos = 0;
    while (pos < n && ++x[static_cast<std::size_t>(pos)] > k) x[static_cast<std::size_t>(pos++)] = 0;
    if (pos == n) break;
  }
  return to_exact(total);
}

}  // namespace detail

/// E_{x ~ Bin(k)^n} [ sup_{a in A} P[b = x - a] / P[b = x] ], exactly.
/// The supremum over an empty A is 0.
inline ExactRat sup_ratio_exact(const CubeSet& A, int k, const Limits& limits = {}) {
  if (k < 1) throw BadParams("sup_ratio_exact: k must be >= 1");
  const int n = A.n();
  const long double points = std::pow(static_cast<long double>(k + 1), n);
  if (points > static_cast<long double>(limits.enum_budget))
    throw BudgetExceeded("(k+1)^n = " + std::to_string(static_cast<double>(points)) +
                         " exceeds enumeration budget");
  if (A.empty()) return 0;
  const double bits = n * (std::log2(static_cast<double>(k + 1)) + std::log2(binom(k, k / 2).get_d()) +
                           std::log2(static_cast<double>(k)));
  const ExactInt num = (k <= 62 && bits < 120) ? detail::sup_ratio_numerator<UInt128>(A, k)
                                               : detail::sup_ratio_numerator<ExactInt>(A, k);
  return make_rat(num, pow2(static_cast<unsigned long>(k) * static_cast<unsigned long>(n)));
}

struct SupRatioEstimate {
  int n = 0;
  int k = 0;
  std::string a_set_id;
  double mean = 0;
  double std_error = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<ExactRat> exact;
};

/// Stable identifier for a cube set: dimension, size and an FNV-1a digest.
inline std::string cube_set_id(const CubeSet& A) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto m : A) {
    for (int b = 0; b < 8; ++b) {
      h ^= (m >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "n%d-s%zu-%016llx", A.n(), A.size(), static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline double sup_ratio_integrand(const CubeSet& A, const std::vector<int>& x, int k) {
  double best = 0;
  for (auto a : A) {
    double prod = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((a >> i) & 1u) prod *= static_cast<double>(x[i]) / static_cast<double>(k + 1 - x[i]);
    }
    best = std::max(best, prod);
  }
  return best;
}

inline double sup_ratio_sample(const CubeSet& A, int k, std::uint64_t seed, std::int64_t index,
                               std::vector<int>& x) {
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  for (auto& xi : x) xi = draw_binomial(rng, k);
  return sup_ratio_integrand(A, x, k);
}

// Fixed-size blocks reduced in index order keep the floating-point result
// independent of how blocks are spread over workers.
inline constexpr std::int64_t kMcBlock = 4096;

template <class BlockFn>
std::vector<double> run_blocks(std::int64_t samples, int workers, BlockFn&& fn) {
  const std::int64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<double> out(static_cast<std::size_t>(blocks), 0.0);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::int64_t>(blocks, 1))));
  auto work = [&](int w) {
    for (std::int64_t b = w; b < blocks; b += workers) {
      const std::int64_t lo = b * kMcBlock;
      const std::int64_t hi = std::min(samples, lo + kMcBlock);
      out[static_cast<std::size_t>(b)] = fn(lo, hi);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return out;
}

}  // namespace detail

/// Monte Carlo estimate of the sup-ratio expectation. Sample j is drawn from
/// CounterRng(seed, j), so the result depends only on (A, k, samples, seed).
inline SupRatioEstimate sup_ratio_mc(const CubeSet& A, int k, std::int64_t samples, std::uint64_t seed,
                                     int workers = 1) {
  if (samples < 1) throw BadParams("sup_ratio_mc: samples must be >= 1");
  if (k < 1) throw BadParams("sup_ratio_mc: k must be >= 1");
  const int n = A.n();
  auto sum_block = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> x(static_cast<std::size_t>(n));
    double s = 0;
    for (std::int64_t j = lo; j < hi; ++j) s += detail::sup_ratio_sample(A, k, seed, j, x);
    return s;
  };
  double total = 0;
  for (double b : detail::run_blocks(samples, workers, sum_block)) total += b;
  const double mean = total / static_cast<double>(samples);

  auto sq_block = [&](std::int64_t lo, std::int64_t hi) {
    std::vector<int> x(static_cast<std::size_t>(n));
    double s = 0;
    for (std::int64_t j = lo; j < hi; ++j) {
      const double d = detail::sup_ratio_sample(A, k, seed, j, x) - mean;
      s += d * d;
    }
    return s;
  };
  double sq = 0;
  for (double b : detail::run_blocks(samples, workers, sq_block)) sq += b;

  SupRatioEstimate e;
  e.n = n;
  e.k = k;
  e.a_set_id = cube_set_id(A);
  e.samples = samples;
  e.seed = seed;
  e.mean = mean;
  e.std_error = samples > 1 ? std::sqrt(sq / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0.0;
  return e;
}

struct SupRatioBoundReport {
  int n = 0;
  int k = 0;
  std::size_t a_size = 0;
  ExactRat C;
  double delta = 0;  // ln|A| / n
  BoundExpr rhs = 0;
  double rhs_approx = 0;
  std::optional<ExactRat> exact;
  std::optional<SupRatioEstimate> estimate;
  double margin = 0;  // ln(rhs) - ln(lhs); lhs is the exact value or the MC upper 3-sigma point
  Verdict verdict = Verdict::Undecidable;
};

/// exp(C (1/k + sqrt(delta / k)) n) with delta = ln|A| / n.
inline BoundExpr sup_ratio_rhs(const ExactRat& C, int n, int k, std::size_t a_size) {
  const BoundExpr delta_over_k =
      log(BoundExpr(ExactRat(ExactInt(static_cast<unsigned long>(a_size))))) * BoundExpr(make_rat(1, ExactInt(n) * k));
  return exp(BoundExpr(C) * (BoundExpr(make_rat(1, k)) + sqrt(delta_over_k)) * BoundExpr(n));
}

/// Compares the sup-ratio expectation with its claimed bound. With
/// mc_samples == 0 the exact value is used and the verdict is decisive;
/// otherwise the MC mean plus three standard errors is compared in floating point.
inline SupRatioBoundReport check_sup_ratio_bound(const CubeSet& A, int k, const ExactRat& C,
                                                 const Limits& limits = {}, std::int64_t mc_samples = 0,
                                                 std::uint64_t seed = 0, PrecisionPolicy policy = {}) {
  if (A.empty()) throw BadParams("check_sup_ratio_bound: A must be nonempty");
  SupRatioBoundReport r;
  r.n = A.n();
  r.k = k;
  r.a_size = A.size();
  r.C = C;
  r.delta = std::log(static_cast<double>(A.size())) / r.n;
  r.rhs = sup_ratio_rhs(C, r.n, k, A.size());
  r.rhs_approx = r.rhs.approx();
  const double ln_rhs = (C.get_d() * (1.0 / k + std::sqrt(r.delta / k))) * r.n;
  if (mc_samples == 0) {
    r.exact = sup_ratio_exact(A, k, limits);
    r.verdict = verdict_le(*r.exact, r.rhs, policy);
    r.margin = ln_rhs - ln(*r.exact);
  } else {
    r.estimate = sup_ratio_mc(A, k, mc_samples, seed);
    const double upper = r.estimate->mean + 3 * r.estimate->std_error;
    r.margin = ln_rhs - std::log(upper);
    r.verdict = r.margin >= 0 ? Verdict::Holds : Verdict::Fails;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Block construction and exponent check
// ---------------------------------------------------------------------------

struct BlockParams {
  int n = 0;
  int k = 0;
  Weights weights{0};
};

/// n/k blocks of k equal weights; block i has weight (k+1)^(i-1), so each
/// block's partial sum 0..k occupies its own base-(k+1) digit.
inline BlockParams block_construction(int n, int k) {
  if (k < 1 || n < 1 || n % k != 0) throw BadParams("block construction needs k >= 1 and k | n");
  std::vector<ExactInt> w;
  ExactInt c = 1;
  for (int block = 0; block < n / k; ++block) {
    for (int j = 0; j < k; ++j) w.push_back(c);
    c *= k + 1;
  }
  return BlockParams{n, k, Weights(std::move(w))};
}

struct BlockTheory {
  ExactRat rho;
  ExactInt range;
};

/// rho = (C(k, floor(k/2)) / 2^k)^(n/k), |R| = (k+1)^(n/k).
inline BlockTheory block_theory(int n, int k) {
  if (k < 1 || n < 1 || n % k != 0) throw BadParams("block construction needs k >= 1 and k | n");
  const auto blocks = static_cast<unsigned long>(n / k);
  return BlockTheory{pow_ui(binom_pmf(k, k / 2), blocks), pow_ui(ExactInt(k + 1), blocks)};
}

struct TheoremCheck {
  double epsilon = 0;  // max(report epsilon, 1/n^2)
  double delta = 0;
  double bound = 0;  // C sqrt(epsilon)
  double ratio = 0;  // delta / sqrt(epsilon)
  bool holds = false;
};

inline TheoremCheck theorem_check(const ConcentrationReport& rep, double C) {
  TheoremCheck t;
  const double floor_eps = 1.0 / (static_cast<double>(rep.n) * rep.n);
  t.epsilon = std::max(rep.epsilon, floor_eps);
  t.delta = rep.delta;
  t.bound = C * std::sqrt(t.epsilon);
  t.ratio = t.delta / std::sqrt(t.epsilon);
  t.holds = t.delta <= t.bound;
  return t;
}

}  // namespace anticonc

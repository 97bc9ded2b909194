// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "anticonc/errors.hpp"
#include "anticonc/lemmas.hpp"
#include "anticonc/numerics.hpp"
#include "anticonc/subsetsum.hpp"

namespace anticonc {

/// Representative of w under coordinate permutation, sign flips and positive
/// scaling, none of which change rho or |R|: entries made non-negative,
/// sorted ascending and divided by the gcd of the nonzero entries.
inline Weights canonicalize(const Weights& w) {
  std::vector<ExactInt> v;
  v.reserve(w.entries().size());
  ExactInt g = 0;
  for (const auto& x : w) {
    v.push_back(abs(x));
    g = gcd(g, v.back());
  }
  std::sort(v.begin(), v.end());
  if (g > 1)
    for (auto& x : v) x /= g;
  return Weights(std::move(v));
}

struct FrontierPoint {
  Weights weights{0};
  double epsilon = 0;
  double delta = 0;
  ExactRat rho;
  ExactInt range_size;

  int n() const { return weights.n(); }

  /// delta / epsilon, defined as 1 at epsilon = 0 (only w = 0 gets there, where delta = 0 too).
  double delta_over_eps() const { return rho == 1 ? 1.0 : delta / epsilon; }

  /// delta / sqrt(epsilon) with epsilon clamped below at 1/n^2.
  double delta_over_sqrt_eps() const {
    const double floor_eps = 1.0 / (static_cast<double>(n()) * n());
    return delta / std::sqrt(std::max(epsilon, floor_eps));
  }
};

inline FrontierPoint make_point(const Weights& w, const Limits& limits = {}) {
  const ConcentrationReport rep = concentration(w, limits);
  FrontierPoint p;
  p.weights = w;
  p.epsilon = rep.epsilon;
  p.delta = rep.delta;
  p.rho = rep.rho;
  p.range_size = rep.range_size;
  return p;
}

struct SweepConfig {
  int n = 1;
  int max_weight = 0;
  int workers = 1;
};

/// Number of nondecreasing vectors in {0..max_weight}^n, i.e. C(max_weight + n, n).
inline ExactInt sweep_candidates(const SweepConfig& cfg) { return binom(cfg.max_weight + cfg.n, cfg.n); }

/// Every canonical vector of {0..max_weight}^n in lexicographic order.
inline std::vector<Weights> canonical_vectors(const SweepConfig& cfg, const Limits& limits = {}) {
  if (cfg.n < 1 || cfg.max_weight < 0) throw BadParams("sweep needs n >= 1 and max_weight >= 0");
  if (sweep_candidates(cfg) > limits.enum_budget)
    throw BudgetExceeded("sweep has " + sweep_candidates(cfg).get_str() + " candidates, budget " +
                         std::to_string(limits.enum_budget));
  std::vector<Weights> out;
  std::vector<long> cur(static_cast<std::size_t>(cfg.n), 0);
  auto emit = [&] {
    long g = 0;
    for (long x : cur) g = std::gcd(g, x);
    if (g > 1) return;
    std::vector<ExactInt> v(cur.begin(), cur.end());
    out.emplace_back(std::move(v));
  };
  auto rec = [&](auto&& self, int pos, long lo) -> void {
    if (pos == cfg.n) {
      emit();
      return;
    }
    for (long x = lo; x <= cfg.max_weight; ++x) {
      cur[static_cast<std::size_t>(pos)] = x;
      self(self, pos + 1, x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// Evaluates every canonical vector. Work is split into contiguous static
/// chunks and written by index, so the result does not depend on cfg.workers.
inline std::vector<FrontierPoint> sweep(const SweepConfig& cfg, const Limits& limits = {}) {
  const auto candidates = canonical_vectors(cfg, limits);
  std::vector<FrontierPoint> points(candidates.size());
  const std::size_t total = candidates.size();
  const auto workers = static_cast<std::size_t>(std::max(1, cfg.workers));
  auto work = [&](std::size_t w) {
    const std::size_t lo = total * w / workers;
    const std::size_t hi = total * (w + 1) / workers;
    for (std::size_t i = lo; i < hi; ++i) points[i] = make_point(candidates[i], limits);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return points;
}

/// Points attaining the largest |R| at their (exact) rho, in input order.
inline std::vector<FrontierPoint> pareto_filter(const std::vector<FrontierPoint>& points) {
  std::map<ExactRat, ExactInt> best;
  for (const auto& p : points) {
    auto [it, fresh] = best.try_emplace(p.rho, p.range_size);
    if (!fresh && p.range_size > it->second) it->second = p.range_size;
  }
  std::vector<FrontierPoint> out;
  for (const auto& p : points)
    if (p.range_size == best.at(p.rho)) out.push_back(p);
  return out;
}

inline std::vector<FrontierPoint> enumerate_frontier(const SweepConfig& cfg, const Limits& limits = {}) {
  return pareto_filter(sweep(cfg, limits));
}

struct AuditReport {
  std::size_t points = 0;
  double max_delta_over_eps = 0;
  std::optional<Weights> argmax_delta_over_eps;
  double max_delta_over_sqrt_eps = 0;
  std::optional<Weights> argmax_delta_over_sqrt_eps;
  std::size_t above_conjecture = 0;  // points with |R| > rho^-2, i.e. delta > 2 epsilon
  std::optional<Weights> first_above_conjecture;
  double C = 0;
  std::size_t above_theorem_bound = 0;  // points with delta > C sqrt(epsilon)
};

/// Asserts |R| * rho >= 1 everywhere and summarizes the exponent ratios.
inline AuditReport audit(const std::vector<FrontierPoint>& points, double C) {
  if (points.empty()) throw BadParams("audit: no points");
  AuditReport r;
  r.points = points.size();
  r.C = C;
  for (const auto& p : points) {
    if (ExactRat(p.range_size * p.rho) < 1)
      throw InvariantViolated("|R| * rho < 1 at w = (" + p.weights.str() + ")");
    const double de = p.delta_over_eps();
    if (!r.argmax_delta_over_eps || de > r.max_delta_over_eps) {
      r.max_delta_over_eps = de;
      r.argmax_delta_over_eps = p.weights;
    }
    const double ds = p.delta_over_sqrt_eps();
    if (!r.argmax_delta_over_sqrt_eps || ds > r.max_delta_over_sqrt_eps) {
      r.max_delta_over_sqrt_eps = ds;
      r.argmax_delta_over_sqrt_eps = p.weights;
    }
    // delta > 2 epsilon  <=>  |R| > rho^-2, decided exactly.
    if (ExactRat(p.range_size * p.rho * p.rho) > 1) {
      if (r.above_conjecture++ == 0) r.first_above_conjecture = p.weights;
    }
    if (theorem_check(ConcentrationReport{p.n(), p.rho, 0, p.range_size, p.epsilon, p.delta}, C).holds == false)
      ++r.above_theorem_bound;
  }
  return r;
}

}  // namespace anticonc

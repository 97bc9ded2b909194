// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "anticonc/cube_set.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/numerics.hpp"

namespace anticonc {

/// Size caps for the enumeration strategies. All are configurable.
struct Limits {
  int naive_cap = 24;                        // max n for 2^n enumeration
  std::int64_t dp_cap = 10'000'000;          // max width of the DP sum range
  int mitm_cap = 48;                         // max n for meet-in-the-middle
  std::int64_t enum_budget = 10'000'000;     // points for sup-ratio and sweep candidates
  std::int64_t sumset_budget = 100'000'000;  // tuples/convolution steps for sumsets
};

/// An integer weight vector w = (w_1, ..., w_n), n >= 1.
class Weights {
 public:
  explicit Weights(std::vector<ExactInt> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw BadParams("weights: need at least one entry");
  }
  Weights(std::initializer_list<long> values) {
    for (long v : values) entries_.emplace_back(v);
    if (entries_.empty()) throw BadParams("weights: need at least one entry");
  }

  int n() const { return static_cast<int>(entries_.size()); }
  const ExactInt& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<ExactInt>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Sum of |w_i|; every subset sum lies in [-abs_sum, abs_sum].
  ExactInt abs_sum() const {
    ExactInt s = 0;
    for (const auto& v : entries_) s += abs(v);
    return s;
  }

  std::string str(char sep = ',') const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += sep;
      out += entries_[i].get_str();
    }
    return out;
  }

  friend bool operator==(const Weights&, const Weights&) = default;

 private:
  std::vector<ExactInt> entries_;
};

struct ProfileEntry {
  ExactInt sum;
  ExactInt count;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

/// Multiset of all 2^n subset sums: strictly increasing sums with positive counts.
struct SumProfile {
  int n = 0;
  std::vector<ProfileEntry> entries;

  ExactInt total() const {
    ExactInt t = 0;
    for (const auto& e : entries) t += e.count;
    return t;
  }

  friend bool operator==(const SumProfile&, const SumProfile&) = default;
};

struct ConcentrationReport {
  int n = 0;
  ExactRat rho;
  ExactInt tau;
  ExactInt range_size;
  double epsilon = 0;  // ln(1/rho) / n
  double delta = 0;    // ln|R| / n

  /// |R| * rho >= 1, decided exactly.
  bool satisfies_lower_bound() const { return ExactRat(range_size * rho) >= 1; }
};

struct LevyResult {
  ExactRat tau;
  ExactRat prob;
};

namespace detail {

template <class T>
T from_exact(const ExactInt& z) {
  if constexpr (std::is_same_v<T, ExactInt>) {
    return z;
  } else if constexpr (std::is_same_v<T, std::int64_t>) {
    return static_cast<std::int64_t>(z.get_si());
  } else {
    static_assert(std::is_same_v<T, Int128>);
    ExactInt mag = abs(z);
    UInt128 lo = mpz_getlimbn(mag.get_mpz_t(), 0);
    UInt128 hi = mpz_size(mag.get_mpz_t()) > 1 ? mpz_getlimbn(mag.get_mpz_t(), 1) : 0;
    auto v = static_cast<Int128>((hi << 64) | lo);
    return z < 0 ? -v : v;
  }
}

template <class T>
struct TypeTag {
  using type = T;
};

/// Runs f(TypeTag<T>{}) with the narrowest signed type that holds every
/// subset sum (and any difference of two) of w without overflow.
template <class F>
decltype(auto) with_sum_type(const Weights& w, F&& f) {
  const std::size_t bits = mpz_sizeinbase(w.abs_sum().get_mpz_t(), 2);
  if (bits <= 61) return f(TypeTag<std::int64_t>{});
  if (bits <= 125) return f(TypeTag<Int128>{});
  return f(TypeTag<ExactInt>{});
}

template <class T>
std::vector<T> narrow(const Weights& w) {
  std::vector<T> out;
  out.reserve(w.entries().size());
  for (const auto& v : w) out.push_back(from_exact<T>(v));
  return out;
}

/// sums[mask] = sum of w_i over bits i of mask, for all 2^n masks.
template <class T>
std::vector<T> all_subset_sums(const std::vector<T>& w) {
  const std::size_t n = w.size();
  std::vector<T> sums(std::size_t{1} << n);
  sums[0] = T(0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const int i = std::countr_zero(mask);
    sums[mask] = sums[mask & (mask - 1)] + w[static_cast<std::size_t>(i)];
  }
  return sums;
}

template <class T>
std::vector<std::pair<T, std::uint64_t>> run_lengths(std::vector<T> sums) {
  std::sort(sums.begin(), sums.end());
  std::vector<std::pair<T, std::uint64_t>> out;
  for (auto& s : sums) {
    if (!out.empty() && out.back().first == s)
      ++out.back().second;
    else
      out.emplace_back(std::move(s), 1);
  }
  return out;
}

template <class T>
SumProfile to_profile(int n, const std::vector<std::pair<T, std::uint64_t>>& rl) {
  SumProfile p;
  p.n = n;
  p.entries.reserve(rl.size());
  for (const auto& [s, c] : rl) p.entries.push_back({to_exact(s), to_exact(c)});
  return p;
}

inline void check_naive(const Weights& w, const Limits& limits) {
  if (w.n() > limits.naive_cap || w.n() > 40)
    throw TooLarge("n = " + std::to_string(w.n()) + " exceeds naive cap " +
                   std::to_string(limits.naive_cap));
}

template <class Count>
SumProfile dp_profile_impl(const Weights& w, const std::vector<std::int64_t>& ws, std::int64_t neg,
                           std::int64_t width) {
  std::vector<Count> table(static_cast<std::size_t>(width), Count(0));
  std::int64_t lo = neg, hi = neg;
  table[static_cast<std::size_t>(neg)] = Count(1);
  for (std::int64_t v : ws) {
    if (v > 0) {
      for (std::int64_t j = hi; j >= lo; --j)
        table[static_cast<std::size_t>(j + v)] += table[static_cast<std::size_t>(j)];
      hi += v;
    } else if (v < 0) {
      for (std::int64_t j = lo; j <= hi; ++j)
        table[static_cast<std::size_t>(j + v)] += table[static_cast<std::size_t>(j)];
      lo += v;
    } else {
      for (std::int64_t j = lo; j <= hi; ++j) table[static_cast<std::size_t>(j)] *= 2;
    }
  }
  SumProfile p;
  p.n = w.n();
  for (std::int64_t j = lo; j <= hi; ++j) {
    const Count& c = table[static_cast<std::size_t>(j)];
    if (c != Count(0)) p.entries.push_back({to_exact(j - neg), to_exact(c)});
  }
  return p;
}

}  // namespace detail

/// Exact profile by enumerating all 2^n subsets.
inline SumProfile profile_naive(const Weights& w, const Limits& limits = {}) {
  detail::check_naive(w, limits);
  return detail::with_sum_type(w, [&](auto tag) {
    using T = typename decltype(tag)::type;
    auto sums = detail::all_subset_sums(detail::narrow<T>(w));
    return detail::to_profile(w.n(), detail::run_lengths(std::move(sums)));
  });
}

/// Exact profile by per-item convolution over an offset table spanning
/// [-sum of negative weights, sum of positive weights].
inline SumProfile profile_dp(const Weights& w, const Limits& limits = {}) {
  ExactInt pos = 0, neg = 0;
  for (const auto& v : w) (v > 0 ? pos : neg) += abs(v);
  const ExactInt width = pos + neg + 1;
  if (width > limits.dp_cap)
    throw CapacityExceeded("sum range width " + width.get_str() + " exceeds DP capacity " +
                           std::to_string(limits.dp_cap));
  std::vector<std::int64_t> ws;
  for (const auto& v : w) ws.push_back(v.get_si());
  const auto neg64 = neg.get_si();
  const auto width64 = width.get_si();
  if (w.n() <= 63) return detail::dp_profile_impl<std::uint64_t>(w, ws, neg64, width64);
  if (w.n() <= 127) return detail::dp_profile_impl<UInt128>(w, ws, neg64, width64);
  return detail::dp_profile_impl<ExactInt>(w, ws, neg64, width64);
}

/// Exact profile by meet-in-the-middle: profile each half by enumeration and
/// combine the sorted half-profiles with a heap-ordered merge, so the output
/// is produced in increasing order with memory proportional to the result.
inline SumProfile profile_mitm(const Weights& w, const Limits& limits = {}) {
  const int n = w.n();
  if (n > limits.mitm_cap || n > 2 * limits.naive_cap || n > 63)
    throw TooLarge("n = " + std::to_string(n) + " exceeds meet-in-the-middle cap " +
                   std::to_string(limits.mitm_cap));
  return detail::with_sum_type(w, [&](auto tag) {
    using T = typename decltype(tag)::type;
    auto ws = detail::narrow<T>(w);
    const auto mid = ws.begin() + n / 2;
    auto left = detail::run_lengths(detail::all_subset_sums(std::vector<T>(ws.begin(), mid)));
    auto right = detail::run_lengths(detail::all_subset_sums(std::vector<T>(mid, ws.end())));
    if (left.size() > right.size()) std::swap(left, right);

    struct Cursor {
      T sum;
      std::size_t i;
      std::size_t j;
    };
    auto later = [](const Cursor& a, const Cursor& b) { return b.sum < a.sum; };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
    for (std::size_t i = 0; i < left.size(); ++i) heap.push({left[i].first + right[0].first, i, 0});

    std::vector<std::pair<T, std::uint64_t>> merged;
    while (!heap.empty()) {
      Cursor c = heap.top();
      heap.pop();
      const std::uint64_t cnt = left[c.i].second * right[c.j].second;
      if (!merged.empty() && merged.back().first == c.sum)
        merged.back().second += cnt;
      else
        merged.emplace_back(c.sum, cnt);
      if (c.j + 1 < right.size()) heap.push({left[c.i].first + right[c.j + 1].first, c.i, c.j + 1});
    }
    return detail::to_profile(n, merged);
  });
}

/// Picks the cheapest applicable strategy: DP for narrow sum ranges, then
/// enumeration, then meet-in-the-middle.
inline SumProfile profile(const Weights& w, const Limits& limits = {}) {
  if (w.abs_sum() + 1 <= limits.dp_cap) return profile_dp(w, limits);
  if (w.n() <= limits.naive_cap) return profile_naive(w, limits);
  return profile_mitm(w, limits);
}

/// rho = largest fiber / 2^n with the smallest maximizing sum as witness.
inline ConcentrationReport concentration(const SumProfile& p) {
  if (p.entries.empty()) throw BadParams("concentration: empty profile");
  ConcentrationReport r;
  r.n = p.n;
  const ProfileEntry* best = &p.entries.front();
  for (const auto& e : p.entries)
    if (e.count > best->count) best = &e;
  r.tau = best->sum;
  r.rho = make_rat(best->count, pow2(static_cast<unsigned long>(p.n)));
  r.range_size = static_cast<unsigned long>(p.entries.size());
  const double n = p.n;
  r.epsilon = ln(ExactRat(1 / r.rho)) / n;
  r.delta = ln(r.range_size) / n;
  return r;
}

inline ConcentrationReport concentration(const Weights& w, const Limits& limits = {}) {
  return concentration(profile(w, limits));
}

/// Levy concentration at radius r: the heaviest closed window of width 2r
/// over the sorted sums. The first heaviest window wins; tau is the midpoint
/// of the extreme sums it covers.
inline LevyResult levy(const SumProfile& p, const ExactRat& r) {
  if (r < 0) throw BadParams("levy: radius must be non-negative");
  if (p.entries.empty()) throw BadParams("levy: empty profile");
  const ExactRat width = 2 * r;
  const auto& e = p.entries;
  ExactInt window = 0, best = -1;
  std::size_t best_i = 0, best_j = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (j < i) {
      j = i;
      window = 0;
    }
    while (j < e.size() && ExactRat(e[j].sum - e[i].sum) <= width) window += e[j++].count;
    if (window > best) {
      best = window;
      best_i = i;
      best_j = j - 1;
    }
    window -= e[i].count;
  }
  LevyResult out;
  out.tau = make_rat(e[best_i].sum + e[best_j].sum, 2);
  out.prob = make_rat(best, pow2(static_cast<unsigned long>(p.n)));
  return out;
}

/// All 0/1 vectors xi with <w, xi> = tau.
inline CubeSet fiber(const Weights& w, const ExactInt& tau, const Limits& limits = {}) {
  detail::check_naive(w, limits);
  if (abs(tau) > w.abs_sum()) return CubeSet(w.n(), {});
  return detail::with_sum_type(w, [&](auto tag) {
    using T = typename decltype(tag)::type;
    const auto sums = detail::all_subset_sums(detail::narrow<T>(w));
    const T target = detail::from_exact<T>(tau);
    std::vector<CubeSet::Member> members;
    for (std::size_t m = 0; m < sums.size(); ++m)
      if (sums[m] == target) members.push_back(m);
    return CubeSet(w.n(), std::move(members));
  });
}

/// One preimage per distinct subset sum: the one with the smallest mask, i.e.
/// the first hit when counting masks upward with coordinate 1 as the low bit.
inline CubeSet unique_preimages(const Weights& w, const Limits& limits = {}) {
  detail::check_naive(w, limits);
  return detail::with_sum_type(w, [&](auto tag) {
    using T = typename decltype(tag)::type;
    const auto sums = detail::all_subset_sums(detail::narrow<T>(w));
    std::vector<std::size_t> order(sums.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });
    std::vector<CubeSet::Member> members;
    for (std::size_t k = 0; k < order.size(); ++k)
      if (k == 0 || sums[order[k]] != sums[order[k - 1]]) members.push_back(order[k]);
    return CubeSet(w.n(), std::move(members));
  });
}

}  // namespace anticonc

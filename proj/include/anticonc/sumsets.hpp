// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "anticonc/cube_set.hpp"
#include "anticonc/errors.hpp"
#include "anticonc/numerics.hpp"
#include "anticonc/subsetsum.hpp"

namespace anticonc {

/// Fixed-radix encoding of vectors in {0, ..., base-1}^n as one 64-bit key.
/// Keys add like vectors as long as no coordinate reaches the base.
class RadixCodec {
 public:
  RadixCodec(int n, std::uint64_t base) : n_(n), base_(base) {
    if (base < 2) throw BadParams("RadixCodec: base must be >= 2");
    std::uint64_t p = 1;
    for (int i = 0; i < n; ++i) {
      place_.push_back(p);
      if (p > std::numeric_limits<std::uint64_t>::max() / base)
        throw BudgetExceeded("vectors in {0.." + std::to_string(base - 1) + "}^" + std::to_string(n) +
                             " do not fit a 64-bit key");
      p *= base;
    }
  }

  int n() const { return n_; }
  std::uint64_t base() const { return base_; }

  std::uint64_t encode_cube(CubeSet::Member m) const {
    std::uint64_t key = 0;
    for (int i = 0; i < n_; ++i)
      if ((m >> i) & 1u) key += place_[static_cast<std::size_t>(i)];
    return key;
  }

  std::uint64_t encode(const std::vector<int>& v) const {
    std::uint64_t key = 0;
    for (int i = 0; i < n_; ++i) key += place_[static_cast<std::size_t>(i)] * static_cast<std::uint64_t>(v[i]);
    return key;
  }

  std::vector<int> decode(std::uint64_t key) const {
    std::vector<int> v(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(key % base_);
      key /= base_;
    }
    return v;
  }

 private:
  int n_;
  std::uint64_t base_;
  std::vector<std::uint64_t> place_;
};

/// k*B together with its multiplicity function: for each c in k*B, the number
/// of ordered k-tuples of B-elements summing to c.
class MultiSumset {
 public:
  struct Entry {
    std::uint64_t key;
    ExactInt multiplicity;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  MultiSumset(int n, int k, std::vector<Entry> entries)
      : n_(n), k_(k), codec_(n, static_cast<std::uint64_t>(k) + 2), entries_(std::move(entries)) {}

  int n() const { return n_; }
  int k() const { return k_; }
  const RadixCodec& codec() const { return codec_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  std::vector<int> vector_of(const Entry& e) const { return codec_.decode(e.key); }

  ExactInt multiplicity(const std::vector<int>& c) const {
    const auto key = codec_.encode(c);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const Entry& e, std::uint64_t k) { return e.key < k; });
    return (it != entries_.end() && it->key == key) ? it->multiplicity : ExactInt(0);
  }

  ExactInt total() const {
    ExactInt t = 0;
    for (const auto& e : entries_) t += e.multiplicity;
    return t;
  }

  friend bool operator==(const MultiSumset& a, const MultiSumset& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  int n_;
  int k_;
  RadixCodec codec_;
  std::vector<Entry> entries_;
};

namespace detail {

template <class Count>
std::vector<MultiSumset::Entry> finish_entries(const std::unordered_map<std::uint64_t, Count>& acc) {
  std::vector<MultiSumset::Entry> out;
  out.reserve(acc.size());
  for (const auto& [key, c] : acc) out.push_back({key, to_exact(c)});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return out;
}

template <class Count>
std::vector<MultiSumset::Entry> convolve_sumset(const std::vector<std::uint64_t>& b_keys, int k,
                                                std::int64_t budget) {
  std::unordered_map<std::uint64_t, Count> current;
  for (auto key : b_keys) current[key] = Count(1);
  for (int step = 1; step < k; ++step) {
    const long double work = static_cast<long double>(current.size()) * b_keys.size();
    if (work > static_cast<long double>(budget))
      throw BudgetExceeded("sumset convolution step needs " + std::to_string(static_cast<double>(work)) +
                           " updates, budget " + std::to_string(budget));
    std::unordered_map<std::uint64_t, Count> next;
    next.reserve(current.size() * 2);
    for (const auto& [c, m] : current)
      for (auto b : b_keys) next[c + b] += m;
    current = std::move(next);
  }
  return finish_entries(current);
}

inline bool fits_u64_power(std::size_t base, int k) {
  return base == 0 || static_cast<double>(k) * std::log2(static_cast<double>(base)) < 63.0;
}

inline void check_same_dim(const CubeSet& a, const CubeSet& b) {
  if (a.n() != b.n()) throw BadParams("cube sets live in different dimensions");
}

}  // namespace detail

/// k*B with multiplicities via k-1 sparse convolutions of B's indicator.
inline MultiSumset iterated_sumset(const CubeSet& B, int k, const Limits& limits = {}) {
  if (k < 1) throw BadParams("iterated_sumset: k must be >= 1");
  RadixCodec codec(B.n(), static_cast<std::uint64_t>(k) + 2);
  std::vector<std::uint64_t> keys;
  for (auto m : B) keys.push_back(codec.encode_cube(m));
  auto entries = detail::fits_u64_power(B.size(), k)
                     ? detail::convolve_sumset<std::uint64_t>(keys, k, limits.sumset_budget)
                     : detail::convolve_sumset<ExactInt>(keys, k, limits.sumset_budget);
  return MultiSumset(B.n(), k, std::move(entries));
}

/// Same result as iterated_sumset, by walking all |B|^k ordered tuples.
inline MultiSumset iterated_sumset_enumerate(const CubeSet& B, int k, const Limits& limits = {}) {
  if (k < 1) throw BadParams("iterated_sumset: k must be >= 1");
  RadixCodec codec(B.n(), static_cast<std::uint64_t>(k) + 2);
  if (B.empty()) return MultiSumset(B.n(), k, {});
  const long double tuples = std::pow(static_cast<long double>(B.size()), k);
  if (tuples > static_cast<long double>(limits.sumset_budget))
    throw BudgetExceeded("|B|^k = " + std::to_string(static_cast<double>(tuples)) + " exceeds budget");
  std::vector<std::uint64_t> keys;
  for (auto m : B) keys.push_back(codec.encode_cube(m));
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    std::uint64_t key = 0;
    for (auto i : idx) key += keys[i];
    ++acc[key];
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == keys.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return MultiSumset(B.n(), k, detail::finish_entries(acc));
}

struct InjectivityWitness {
  CubeSet::Member a1;
  std::vector<int> c1;
  CubeSet::Member a2;
  std::vector<int> c2;
};

struct InjectivityResult {
  bool holds = true;
  std::size_t sumset_size = 0;  // |A + k*B|
  std::size_t product_size = 0;  // |A| * |k*B|
  std::optional<InjectivityWitness> witness;
};

/// Decides whether (a, c) -> a + c is injective on A x (k*B). On failure the
/// first collision in (a, c) order is returned.
inline InjectivityResult check_injectivity(const CubeSet& A, const CubeSet& B, int k,
                                           const Limits& limits = {}) {
  detail::check_same_dim(A, B);
  const MultiSumset kb = iterated_sumset(B, k, limits);
  const long double work = static_cast<long double>(A.size()) * kb.support_size();
  if (work > static_cast<long double>(limits.sumset_budget))
    throw BudgetExceeded("|A| * |k*B| exceeds budget");
  const RadixCodec& codec = kb.codec();

  InjectivityResult r;
  r.product_size = A.size() * kb.support_size();
  std::unordered_map<std::uint64_t, std::pair<CubeSet::Member, std::uint64_t>> seen;
  seen.reserve(r.product_size);
  for (auto a : A) {
    const auto ak = codec.encode_cube(a);
    for (const auto& e : kb.entries()) {
      auto [it, fresh] = seen.try_emplace(ak + e.key, a, e.key);
      if (!fresh && !r.witness) {
        r.holds = false;
        r.witness = InjectivityWitness{it->second.first, codec.decode(it->second.second), a,
                                       codec.decode(e.key)};
      }
    }
  }
  r.sumset_size = seen.size();
  return r;
}

/// max over c in k*B of mu_k(c) / prod_i P[Bin(k) = c_i], with mu_k the
/// normalized multiplicity.
inline ExactRat density_ratio_max(const CubeSet& B, int k, const Limits& limits = {}) {
  if (B.empty()) throw BadParams("density_ratio_max: B must be nonempty");
  const MultiSumset kb = iterated_sumset(B, k, limits);
  const auto row = binom_row(k);
  const ExactInt scale = pow2(static_cast<unsigned long>(k) * static_cast<unsigned long>(B.n()));
  const ExactInt norm = pow_ui(ExactInt(static_cast<unsigned long>(B.size())), static_cast<unsigned long>(k));
  ExactRat best = 0;
  for (const auto& e : kb.entries()) {
    ExactInt denom = norm;
    for (int c : kb.vector_of(e)) denom *= row[static_cast<std::size_t>(c)];
    ExactRat ratio = make_rat(e.multiplicity * scale, denom);
    if (ratio > best) best = ratio;
  }
  return best;
}

/// (2^n / |B|)^k, the density cap that density_ratio_max must respect.
inline ExactRat density_cap(const CubeSet& B, int k) {
  return pow_ui(make_rat(pow2(static_cast<unsigned long>(B.n())), ExactInt(static_cast<unsigned long>(B.size()))),
                static_cast<unsigned long>(k));
}

/// P[a + b_1 + ... + b_k in {0..k+1}^n] for a uniform on A and b_j uniform on B.
inline ExactRat partition_total(const CubeSet& A, const CubeSet& B, int k, const Limits& limits = {}) {
  detail::check_same_dim(A, B);
  if (A.empty() || B.empty()) throw BadParams("partition_total: A and B must be nonempty");
  const MultiSumset kb = iterated_sumset(B, k, limits);
  const RadixCodec& codec = kb.codec();
  ExactInt hits = 0;
  for (auto a : A) {
    for (const auto& e : kb.entries()) {
      const auto v = codec.decode(codec.encode_cube(a) + e.key);
      bool inside = std::all_of(v.begin(), v.end(), [&](int x) { return x >= 0 && x <= k + 1; });
      if (inside) hits += e.multiplicity;
    }
  }
  const ExactInt norm = ExactInt(static_cast<unsigned long>(A.size())) *
                        pow_ui(ExactInt(static_cast<unsigned long>(B.size())), static_cast<unsigned long>(k));
  return make_rat(hits, norm);
}

}  // namespace anticonc

// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anticonc/errors.hpp"

namespace anticonc {

/// An explicit subset of the cube {0,1}^n, n <= 64.
///
/// A member is stored as a bit mask where bit i holds coordinate i+1, so
/// coordinate 1 is the least significant bit. Members are kept sorted by mask
/// value and free of duplicates.
class CubeSet {
 public:
  using Member = std::uint64_t;
  static constexpr int kMaxDim = 64;

  CubeSet() = default;

  CubeSet(int n, std::vector<Member> members) : n_(n), members_(std::move(members)) {
    if (n < 0 || n > kMaxDim) throw BadParams("CubeSet: dimension must be in [0, 64]");
    for (Member m : members_)
      if (n < kMaxDim && (m >> n) != 0) throw BadParams("CubeSet: member outside {0,1}^n");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  /// Every vector of {0,1}^n; n must be small enough to materialize.
  static CubeSet full(int n) {
    if (n < 0 || n > 30) throw BadParams("CubeSet::full: dimension too large");
    std::vector<Member> all(std::size_t{1} << n);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return CubeSet(n, std::move(all));
  }

  static CubeSet singleton_zero(int n) { return CubeSet(n, {0}); }

  /// Parses strings such as "100" (x1=1, x2=0, x3=0). All strings must share a length.
  static CubeSet from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ParseError("CubeSet: need at least one vector to fix the dimension");
    const int n = static_cast<int>(rows.front().size());
    std::vector<Member> members;
    for (const auto& r : rows) members.push_back(parse_member(r, n));
    return CubeSet(n, std::move(members));
  }

  static Member parse_member(std::string_view text, int n) {
    if (static_cast<int>(text.size()) != n) throw ParseError("CubeSet: vector length mismatch");
    if (n > kMaxDim) throw ParseError("CubeSet: vector longer than 64");
    Member m = 0;
    for (int i = 0; i < n; ++i) {
      if (text[i] == '1')
        m |= Member{1} << i;
      else if (text[i] != '0')
        throw ParseError("CubeSet: expected only '0' and '1'");
    }
    return m;
  }

  static std::string format_member(Member m, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) s[i] = '1';
    return s;
  }

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Member>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(Member m) const { return std::binary_search(members_.begin(), members_.end(), m); }

  bool is_subset_of(const CubeSet& other) const {
    return n_ == other.n_ &&
           std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (Member m : members_) out.push_back(format_member(m, n_));
    return out;
  }

  friend bool operator==(const CubeSet&, const CubeSet&) = default;

 private:
  int n_ = 0;
  std::vector<Member> members_;
};

}  // namespace anticonc

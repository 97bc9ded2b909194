// Copyright 2026 The anticonc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mpfr.h>

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include "anticonc/errors.hpp"
#include "anticonc/numerics.hpp"

namespace anticonc {

/// RAII handle for an MPFR value at a fixed precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints.
struct Interval {
  BigFloat lo;
  BigFloat hi;

  explicit Interval(mpfr_prec_t bits) : lo(bits), hi(bits) {}

  /// Where q falls relative to the interval: -1 below, +1 above, 0 inside.
  int locate(const ExactRat& q) const {
    if (mpfr_cmp_q(lo.get(), q.get_mpq_t()) > 0) return -1;
    if (mpfr_cmp_q(hi.get(), q.get_mpq_t()) < 0) return 1;
    return 0;
  }

  double width() const {
    BigFloat w(lo.precision());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w.to_double();
  }
};

enum class Ordering { Less, Equal, Greater };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "?";
}

/// Immutable real-valued expression over rationals, pi, exp, log, sqrt,
/// integer powers, sums and products. Cheap to copy; nodes are shared.
class BoundExpr {
 public:
  struct Const;
  struct Pi;
  struct Exp;
  struct Log;
  struct Sqrt;
  struct Pow;
  struct Add;
  struct Mul;
  struct Neg;
  using Node = std::variant<Const, Pi, Exp, Log, Sqrt, Pow, Add, Mul, Neg>;

  BoundExpr(const ExactRat& q);  // NOLINT
  BoundExpr(long v);             // NOLINT

  static BoundExpr pi();

  friend BoundExpr exp(BoundExpr e);
  friend BoundExpr log(BoundExpr e);
  friend BoundExpr sqrt(BoundExpr e);
  friend BoundExpr pow(BoundExpr e, unsigned long n);
  friend BoundExpr operator+(BoundExpr a, BoundExpr b);
  friend BoundExpr operator*(BoundExpr a, BoundExpr b);
  friend BoundExpr operator-(BoundExpr a);
  friend BoundExpr operator-(BoundExpr a, BoundExpr b);

  const Node& node() const;

  /// The exact value when the expression is provably rational, e.g. exp(0) or 2*(4/5)^3.
  std::optional<ExactRat> exact_value() const;

  /// Encloses the true value at the given working precision.
  Interval evaluate(mpfr_prec_t bits) const;

  /// Round-to-nearest approximation for reporting only.
  double approx(mpfr_prec_t bits = 128) const {
    Interval iv = evaluate(bits);
    BigFloat mid(bits);
    mpfr_add(mid.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    return mid.to_double();
  }

  std::string str() const;

 private:
  explicit BoundExpr(Node n);
  std::shared_ptr<const Node> node_;
};

struct BoundExpr::Const { ExactRat value; };
struct BoundExpr::Pi {};
struct BoundExpr::Exp { BoundExpr arg; };
struct BoundExpr::Log { BoundExpr arg; };
struct BoundExpr::Sqrt { BoundExpr arg; };
struct BoundExpr::Pow { BoundExpr base; unsigned long exponent; };
struct BoundExpr::Add { BoundExpr lhs; BoundExpr rhs; };
struct BoundExpr::Mul { BoundExpr lhs; BoundExpr rhs; };
struct BoundExpr::Neg { BoundExpr arg; };

inline BoundExpr::BoundExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline BoundExpr::BoundExpr(const ExactRat& q) : BoundExpr(Node{Const{q}}) {}
inline BoundExpr::BoundExpr(long v) : BoundExpr(ExactRat(v)) {}
inline const BoundExpr::Node& BoundExpr::node() const { return *node_; }
inline BoundExpr BoundExpr::pi() { return BoundExpr(Node{Pi{}}); }

inline BoundExpr exp(BoundExpr e) { return BoundExpr(BoundExpr::Node{BoundExpr::Exp{std::move(e)}}); }
inline BoundExpr log(BoundExpr e) { return BoundExpr(BoundExpr::Node{BoundExpr::Log{std::move(e)}}); }
inline BoundExpr sqrt(BoundExpr e) { return BoundExpr(BoundExpr::Node{BoundExpr::Sqrt{std::move(e)}}); }
inline BoundExpr pow(BoundExpr e, unsigned long n) {
  return BoundExpr(BoundExpr::Node{BoundExpr::Pow{std::move(e), n}});
}
inline BoundExpr operator+(BoundExpr a, BoundExpr b) {
  return BoundExpr(BoundExpr::Node{BoundExpr::Add{std::move(a), std::move(b)}});
}
inline BoundExpr operator*(BoundExpr a, BoundExpr b) {
  return BoundExpr(BoundExpr::Node{BoundExpr::Mul{std::move(a), std::move(b)}});
}
inline BoundExpr operator-(BoundExpr a) { return BoundExpr(BoundExpr::Node{BoundExpr::Neg{std::move(a)}}); }
inline BoundExpr operator-(BoundExpr a, BoundExpr b) { return std::move(a) + (-std::move(b)); }

namespace detail {

inline void interval_mul(Interval& out, const Interval& a, const Interval& b) {
  const mpfr_prec_t bits = out.lo.precision();
  BigFloat t(bits);
  bool first = true;
  for (const BigFloat* x : {&a.lo, &a.hi}) {
    for (const BigFloat* y : {&b.lo, &b.hi}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), out.lo.get())) mpfr_set(out.lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), out.hi.get())) mpfr_set(out.hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
}

}  // namespace detail

inline std::optional<ExactRat> BoundExpr::exact_value() const {
  return std::visit(
      [](const auto& n) -> std::optional<ExactRat> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Pi>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Exp>) {
          auto a = n.arg.exact_value();
          if (a && *a == 0) return ExactRat(1);
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Log>) {
          auto a = n.arg.exact_value();
          if (a && *a == 1) return ExactRat(0);
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Sqrt>) {
          auto a = n.arg.exact_value();
          if (!a || *a < 0) return std::nullopt;
          if (!mpz_perfect_square_p(a->get_num_mpz_t()) || !mpz_perfect_square_p(a->get_den_mpz_t()))
            return std::nullopt;
          ExactInt num = sqrt(ExactInt(a->get_num()));
          ExactInt den = sqrt(ExactInt(a->get_den()));
          return make_rat(num, den);
        } else if constexpr (std::is_same_v<T, Pow>) {
          auto a = n.base.exact_value();
          if (!a) return std::nullopt;
          return pow_ui(*a, n.exponent);
        } else if constexpr (std::is_same_v<T, Add>) {
          auto a = n.lhs.exact_value();
          auto b = n.rhs.exact_value();
          if (!a || !b) return std::nullopt;
          return ExactRat(*a + *b);
        } else if constexpr (std::is_same_v<T, Mul>) {
          auto a = n.lhs.exact_value();
          auto b = n.rhs.exact_value();
          if (!a || !b) return std::nullopt;
          return ExactRat(*a * *b);
        } else {
          auto a = n.arg.exact_value();
          if (!a) return std::nullopt;
          return ExactRat(-*a);
        }
      },
      *node_);
}

inline Interval BoundExpr::evaluate(mpfr_prec_t bits) const {
  Interval out(bits);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          mpfr_set_q(out.lo.get(), n.value.get_mpq_t(), MPFR_RNDD);
          mpfr_set_q(out.hi.get(), n.value.get_mpq_t(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Pi>) {
          mpfr_const_pi(out.lo.get(), MPFR_RNDD);
          mpfr_const_pi(out.hi.get(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Exp>) {
          Interval a = n.arg.evaluate(bits);
          mpfr_exp(out.lo.get(), a.lo.get(), MPFR_RNDD);
          mpfr_exp(out.hi.get(), a.hi.get(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Log>) {
          Interval a = n.arg.evaluate(bits);
          // A lower endpoint at or below zero only loosens the enclosure.
          if (mpfr_sgn(a.lo.get()) <= 0)
            mpfr_set_inf(out.lo.get(), -1);
          else
            mpfr_log(out.lo.get(), a.lo.get(), MPFR_RNDD);
          mpfr_log(out.hi.get(), a.hi.get(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Sqrt>) {
          Interval a = n.arg.evaluate(bits);
          if (mpfr_sgn(a.lo.get()) <= 0)
            mpfr_set_zero(out.lo.get(), 1);
          else
            mpfr_sqrt(out.lo.get(), a.lo.get(), MPFR_RNDD);
          mpfr_sqrt(out.hi.get(), a.hi.get(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Pow>) {
          Interval a = n.base.evaluate(bits);
          const unsigned long e = n.exponent;
          if (e == 0) {
            mpfr_set_ui(out.lo.get(), 1, MPFR_RNDD);
            mpfr_set_ui(out.hi.get(), 1, MPFR_RNDU);
          } else if (e % 2 == 1 || mpfr_sgn(a.lo.get()) >= 0) {
            mpfr_pow_ui(out.lo.get(), a.lo.get(), e, MPFR_RNDD);
            mpfr_pow_ui(out.hi.get(), a.hi.get(), e, MPFR_RNDU);
          } else if (mpfr_sgn(a.hi.get()) <= 0) {
            mpfr_pow_ui(out.lo.get(), a.hi.get(), e, MPFR_RNDD);
            mpfr_pow_ui(out.hi.get(), a.lo.get(), e, MPFR_RNDU);
          } else {
            BigFloat m(bits);
            mpfr_neg(m.get(), a.lo.get(), MPFR_RNDU);
            mpfr_max(m.get(), m.get(), a.hi.get(), MPFR_RNDU);
            mpfr_set_zero(out.lo.get(), 1);
            mpfr_pow_ui(out.hi.get(), m.get(), e, MPFR_RNDU);
          }
        } else if constexpr (std::is_same_v<T, Add>) {
          Interval a = n.lhs.evaluate(bits);
          Interval b = n.rhs.evaluate(bits);
          mpfr_add(out.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
          mpfr_add(out.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
        } else if constexpr (std::is_same_v<T, Mul>) {
          Interval a = n.lhs.evaluate(bits);
          Interval b = n.rhs.evaluate(bits);
          detail::interval_mul(out, a, b);
        } else {
          Interval a = n.arg.evaluate(bits);
          mpfr_neg(out.lo.get(), a.hi.get(), MPFR_RNDD);
          mpfr_neg(out.hi.get(), a.lo.get(), MPFR_RNDU);
        }
      },
      *node_);
  return out;
}

inline std::string BoundExpr::str() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return n.value.get_den() == 1 ? n.value.get_num().get_str() : "(" + n.value.get_str() + ")";
        } else if constexpr (std::is_same_v<T, Pi>) {
          return "pi";
        } else if constexpr (std::is_same_v<T, Exp>) {
          return "exp(" + n.arg.str() + ")";
        } else if constexpr (std::is_same_v<T, Log>) {
          return "log(" + n.arg.str() + ")";
        } else if constexpr (std::is_same_v<T, Sqrt>) {
          return "sqrt(" + n.arg.str() + ")";
        } else if constexpr (std::is_same_v<T, Pow>) {
          return n.base.str() + "^" + std::to_string(n.exponent);
        } else if constexpr (std::is_same_v<T, Add>) {
          return "(" + n.lhs.str() + " + " + n.rhs.str() + ")";
        } else if constexpr (std::is_same_v<T, Mul>) {
          return n.lhs.str() + "*" + n.rhs.str();
        } else {
          return "-(" + n.arg.str() + ")";
        }
      },
      *node_);
}

struct PrecisionPolicy {
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t cap_bits = 4096;
};

/// Decides q versus the real value of e. Exactly rational expressions are
/// compared exactly; everything else by interval evaluation at doubling
/// precision. Throws Undecidable once the cap is reached without separation.
inline Ordering cmp_bound(const ExactRat& q, const BoundExpr& e, PrecisionPolicy policy = {}) {
  if (auto exact = e.exact_value()) {
    int c = cmp(q, *exact);
    return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
  }
  if (policy.start_bits < MPFR_PREC_MIN) policy.start_bits = MPFR_PREC_MIN;
  for (mpfr_prec_t bits = policy.start_bits;; bits *= 2) {
    if (bits > policy.cap_bits) bits = policy.cap_bits;
    Interval iv = e.evaluate(bits);
    int where = iv.locate(q);
    if (where < 0) return Ordering::Less;
    if (where > 0) return Ordering::Greater;
    if (bits >= policy.cap_bits) break;
  }
  std::ostringstream msg;
  msg << "cannot separate " << to_string(q) << " from " << e.str() << " within " << policy.cap_bits
      << " bits";
  throw Undecidable(msg.str());
}

}  // namespace anticonc

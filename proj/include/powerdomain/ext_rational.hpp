#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "powerdomain/error.hpp"

namespace powerdomain {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// A value in [0, ∞]: an exact nonnegative rational or ∞.
///
/// Arithmetic is total: ∞ + x = ∞, ∞ · x = ∞ for x > 0, and ∞ · 0 = 0.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(std::int64_t n) : value_(n) { check_nonnegative(); }  // NOLINT: implicit by design of literals
  ExtRational(std::int64_t n, std::int64_t d) : value_(Rational(n, d)) { check_nonnegative(); }
  explicit ExtRational(Rational q) : value_(std::move(q)) { check_nonnegative(); }

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }
  bool is_positive() const { return infinite_ || value_ > 0; }

  /// The finite value; throws on ∞.
  const Rational& finite() const {
    if (infinite_) fail(ErrorKind::PreconditionFailed, "finite() called on infinity");
    return value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtRational(a.value_ + b.value_, Unchecked{});
  }
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.is_zero() || b.is_zero()) return ExtRational();
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtRational(a.value_ * b.value_, Unchecked{});
  }
  ExtRational& operator+=(const ExtRational& o) { return *this = *this + o; }
  ExtRational& operator*=(const ExtRational& o) { return *this = *this * o; }

  /// a − b for b ≤ a with b finite. ∞ − finite = ∞.
  friend ExtRational difference(const ExtRational& a, const ExtRational& b) {
    if (b.infinite_) fail(ErrorKind::InfinityIndeterminate, "subtracting infinity");
    if (a.infinite_) return infinity();
    if (a.value_ < b.value_) fail(ErrorKind::PreconditionFailed, "negative difference");
    return ExtRational(a.value_ - b.value_, Unchecked{});
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q", "p", or "inf".
  std::string str() const {
    if (infinite_) return "inf";
    return value_.str();
  }

  /// Parses the grammar "p/q" | "p" | "inf" with p, q decimal digit strings
  /// and q > 0. Throws std::invalid_argument on malformed text.
  static ExtRational parse(std::string_view text) {
    if (text == "inf") return infinity();
    auto slash = text.find('/');
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(num) || !digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer d(std::string{den});
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return ExtRational(Rational(Integer(std::string{num}), d));
  }

 private:
  struct Unchecked {};
  ExtRational(Rational q, Unchecked) : value_(std::move(q)) {}

  void check_nonnegative() const {
    if (value_ < 0) fail(ErrorKind::PreconditionFailed, "negative value " + value_.str());
  }

  bool infinite_ = false;
  Rational value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

inline const ExtRational& min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
inline const ExtRational& max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

/// The sign map [0, ∞] → {0, 1}; ∞ has sign 1.
inline bool sgn(const ExtRational& x) { return x.is_positive(); }

/// Accumulator for alternating sums of [0, ∞] terms in a signed scratch
/// domain. Fails with InfinityIndeterminate when both +∞ and −∞ occur.
class SignedSum {
 public:
  void add(const ExtRational& x, bool negative = false) {
    if (x.is_infinite()) {
      (negative ? neg_inf_ : pos_inf_) = true;
      return;
    }
    if (negative)
      finite_ -= x.finite();
    else
      finite_ += x.finite();
  }

  ExtRational result() const {
    if (pos_inf_ && neg_inf_) fail(ErrorKind::InfinityIndeterminate, "inclusion-exclusion meets inf - inf");
    if (neg_inf_) fail(ErrorKind::Anomaly, "inclusion-exclusion yields -inf");
    if (pos_inf_) return ExtRational::infinity();
    if (finite_ < 0) fail(ErrorKind::Anomaly, "inclusion-exclusion yields negative value " + finite_.str());
    return ExtRational(finite_);
  }

 private:
  Rational finite_ = 0;
  bool pos_inf_ = false;
  bool neg_inf_ = false;
};

}  // namespace powerdomain

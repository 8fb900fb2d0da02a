#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtop {

// Error with a stable machine-readable code, e.g. "NonIncreasingDiffHier".
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Exact nonnegative rational. Every distance in the workbench is one of
// these; nothing ever rounds. Backed by an arbitrary-precision integer
// rational so formulas like 2^-i-1, 1/d and d/(1+d) stay exact.
class Rat {
 public:
  using big_rational = boost::multiprecision::cpp_rational;
  using big_int = boost::multiprecision::cpp_int;

  Rat() : v_(0) {}
  Rat(long long num) : v_(num) {
    if (num < 0) throw error("NegativeRational", "negative literal");
  }
  Rat(long long num, long long den) {
    if (den == 0) throw error("DivisionByZero", "rational with zero denominator");
    if ((num < 0) != (den < 0) && num != 0)
      throw error("NegativeRational", "negative ratio");
    v_ = big_rational(big_int(num), big_int(den));
  }
  explicit Rat(big_rational v) : v_(std::move(v)) {
    if (v_ < 0) throw error("NegativeRational", "negative value");
  }

  static Rat zero() { return Rat(); }
  static Rat one() { return Rat(1); }

  // 2^-k for k >= 0.
  static Rat pow2_neg(unsigned k) {
    big_int den = big_int(1) << k;
    return Rat(big_rational(big_int(1), den));
  }

  // Parses "p", "p/q".
  static Rat parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(big_rational(big_int(s)));
      big_int num(s.substr(0, slash));
      big_int den(s.substr(slash + 1));
      if (den == 0) throw error("DivisionByZero", "zero denominator in '" + s + "'");
      return Rat(big_rational(num, den));
    } catch (const std::exception& e) {
      throw error("BadRational", "cannot parse '" + s + "'");
    }
  }

  std::string str() const {
    big_int num = boost::multiprecision::numerator(v_);
    big_int den = boost::multiprecision::denominator(v_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  bool is_zero() const { return v_ == 0; }

  Rat operator+(const Rat& o) const { return Rat(big_rational(v_ + o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(big_rational(v_ * o.v_)); }

  // Subtraction that must not go negative.
  Rat sub_checked(const Rat& o) const {
    if (v_ < o.v_) throw error("NegativeRational", "checked subtraction went negative");
    return Rat(big_rational(v_ - o.v_));
  }
  // Truncated subtraction: max{0, *this - o}.
  Rat monus(const Rat& o) const {
    if (v_ <= o.v_) return Rat();
    return Rat(big_rational(v_ - o.v_));
  }

  Rat reciprocal() const {
    if (v_ == 0) throw error("DivisionByZero", "reciprocal of zero");
    return Rat(big_rational(1 / v_));
  }
  Rat div(const Rat& o) const {
    if (o.v_ == 0) throw error("DivisionByZero", "division by zero");
    return Rat(big_rational(v_ / o.v_));
  }
  Rat half() const { return Rat(big_rational(v_ / 2)); }

  auto operator<=>(const Rat& o) const { return v_.compare(o.v_) <=> 0; }
  bool operator==(const Rat& o) const { return v_ == o.v_; }

  const big_rational& raw() const { return v_; }

 private:
  big_rational v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

// Distance to a set: empty set gives +infinity, encoded as nullopt.
using DistToSet = std::optional<Rat>;

// 1/d with the convention 1/infinity = 0. Zero is the caller's problem.
inline Rat reciprocal_or_zero(const DistToSet& d) {
  if (!d.has_value()) return Rat::zero();
  return d->reciprocal();
}

}  // namespace qtop

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "lattopt/errors.hpp"

namespace lattopt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Objective value: arbitrary-precision integer, rational, or a
// lexicographically ordered pair of scores. Integers and rationals compare
// numerically with each other; pairs compare only with pairs.
class Score {
 public:
  Score() : value_(BigInt(0)) {}

  static Score integer(BigInt v) {
    Score s;
    s.value_ = std::move(v);
    return s;
  }

  static Score integer(long long v) { return integer(BigInt(v)); }

  static Score rational(BigRational v) {
    Score s;
    s.value_ = std::move(v);
    return s;
  }

  static Score pair(Score first, Score second);

  bool is_integer() const { return std::holds_alternative<BigInt>(value_); }
  bool is_rational() const { return std::holds_alternative<BigRational>(value_); }
  bool is_pair() const { return std::holds_alternative<PairPtr>(value_); }

  const BigInt& as_integer() const {
    if (!is_integer()) throw ContractViolation("score is not an integer");
    return std::get<BigInt>(value_);
  }

  BigRational numeric() const {
    if (is_integer()) return BigRational(std::get<BigInt>(value_));
    if (is_rational()) return std::get<BigRational>(value_);
    throw ContractViolation("pair score used as a number");
  }

  const Score& first() const;
  const Score& second() const;

  Score operator+(const Score& o) const;
  Score negated() const;

  std::string str() const;

  friend bool operator==(const Score& a, const Score& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Score& a, const Score& b) { return compare(a, b) != 0; }
  friend bool operator<(const Score& a, const Score& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Score& a, const Score& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Score& a, const Score& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Score& a, const Score& b) { return compare(a, b) >= 0; }

  // -1 / 0 / 1; throws ContractViolation when shapes are incomparable.
  static int compare(const Score& a, const Score& b);

 private:
  struct PairRep;
  using PairPtr = std::shared_ptr<const PairRep>;
  std::variant<BigInt, BigRational, PairPtr> value_;
};

struct Score::PairRep {
  Score first;
  Score second;
};

inline Score Score::pair(Score first, Score second) {
  Score s;
  s.value_ = std::make_shared<const PairRep>(PairRep{std::move(first), std::move(second)});
  return s;
}

inline const Score& Score::first() const {
  if (!is_pair()) throw ContractViolation("score is not a pair");
  return std::get<PairPtr>(value_)->first;
}

inline const Score& Score::second() const {
  if (!is_pair()) throw ContractViolation("score is not a pair");
  return std::get<PairPtr>(value_)->second;
}

inline int Score::compare(const Score& a, const Score& b) {
  if (a.is_pair() || b.is_pair()) {
    if (!a.is_pair() || !b.is_pair()) {
      throw ContractViolation("cannot compare a pair score with a scalar score");
    }
    int c = compare(a.first(), b.first());
    if (c != 0) return c;
    return compare(a.second(), b.second());
  }
  if (a.is_integer() && b.is_integer()) {
    const BigInt& x = a.as_integer();
    const BigInt& y = b.as_integer();
    return x < y ? -1 : (x == y ? 0 : 1);
  }
  BigRational x = a.numeric();
  BigRational y = b.numeric();
  return x < y ? -1 : (x == y ? 0 : 1);
}

inline Score Score::operator+(const Score& o) const {
  if (is_pair() && o.is_pair()) {
    return pair(first() + o.first(), second() + o.second());
  }
  if (is_pair() || o.is_pair()) {
    throw ContractViolation("cannot add a pair score and a scalar score");
  }
  if (is_integer() && o.is_integer()) {
    return integer(as_integer() + o.as_integer());
  }
  return rational(numeric() + o.numeric());
}

inline Score Score::negated() const {
  if (is_pair()) return pair(first().negated(), second().negated());
  if (is_integer()) return integer(BigInt(-as_integer()));
  return rational(BigRational(-numeric()));
}

inline std::string Score::str() const {
  if (is_pair()) return "(" + first().str() + "," + second().str() + ")";
  if (is_integer()) return as_integer().str();
  return numeric().str();
}

}  // namespace lattopt

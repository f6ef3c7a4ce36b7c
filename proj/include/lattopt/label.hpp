#pragma once

#include <any>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lattopt/errors.hpp"

namespace lattopt {

// Closed interval over the integers, possibly unbounded on either side, or
// the empty interval. Endpoint fields of the empty interval are normalized
// to zero so that equality is structural.
struct IntervalValue {
  bool empty = true;
  bool lo_unbounded = false;
  bool hi_unbounded = false;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  static IntervalValue make_empty() { return IntervalValue{}; }

  static IntervalValue range(bool lo_inf, std::int64_t lo_val, bool hi_inf,
                             std::int64_t hi_val) {
    IntervalValue v;
    v.empty = false;
    v.lo_unbounded = lo_inf;
    v.hi_unbounded = hi_inf;
    v.lo = lo_inf ? 0 : lo_val;
    v.hi = hi_inf ? 0 : hi_val;
    return v;
  }

  bool contains(std::int64_t x) const {
    if (empty) return false;
    if (!lo_unbounded && x < lo) return false;
    if (!hi_unbounded && x > hi) return false;
    return true;
  }

  std::string str() const {
    if (empty) return "empty";
    std::string s = lo_unbounded ? "(-inf," : "[" + std::to_string(lo) + ",";
    s += hi_unbounded ? "+inf)" : std::to_string(hi) + "]";
    return s;
  }

  friend bool operator==(const IntervalValue&, const IntervalValue&) = default;
};

// Node label. The closed set of shapes covers every lattice family in the
// library; module-specific payloads (e.g. clause substitutions) travel in the
// opaque arm.
class Label {
 public:
  Label() = default;

  static Label unit() { return Label(); }

  static Label integer(std::int64_t v) {
    Label l;
    l.value_ = v;
    return l;
  }

  static Label set(std::vector<std::int64_t> values) {
    Label l;
    l.value_ = std::make_shared<const std::vector<std::int64_t>>(std::move(values));
    return l;
  }

  static Label interval(IntervalValue v) {
    Label l;
    l.value_ = v;
    return l;
  }

  static Label pair(Label first, Label second);

  template <typename T>
  static Label opaque(T payload) {
    Label l;
    l.value_ = std::make_shared<const std::any>(std::move(payload));
    return l;
  }

  bool is_unit() const { return std::holds_alternative<std::monostate>(value_); }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_set() const { return std::holds_alternative<SetPtr>(value_); }
  bool is_interval() const { return std::holds_alternative<IntervalValue>(value_); }
  bool is_pair() const { return std::holds_alternative<PairPtr>(value_); }
  bool is_opaque() const { return std::holds_alternative<AnyPtr>(value_); }

  std::int64_t as_integer() const {
    require(is_integer(), "integer");
    return std::get<std::int64_t>(value_);
  }

  const std::vector<std::int64_t>& as_set() const {
    require(is_set(), "set");
    return *std::get<SetPtr>(value_);
  }

  const IntervalValue& as_interval() const {
    require(is_interval(), "interval");
    return std::get<IntervalValue>(value_);
  }

  const Label& first() const;
  const Label& second() const;

  template <typename T>
  const T& as() const {
    require(is_opaque(), "opaque");
    const std::any& a = *std::get<AnyPtr>(value_);
    const T* p = std::any_cast<T>(&a);
    if (p == nullptr) throw ContractViolation("label payload has a different type");
    return *p;
  }

  std::string str() const;

  friend bool operator==(const Label& a, const Label& b);

 private:
  struct Pair;
  using SetPtr = std::shared_ptr<const std::vector<std::int64_t>>;
  using PairPtr = std::shared_ptr<const Pair>;
  using AnyPtr = std::shared_ptr<const std::any>;

  void require(bool ok, const char* kind) const {
    if (!ok) throw ContractViolation(std::string("label is not a ") + kind);
  }

  std::variant<std::monostate, std::int64_t, SetPtr, IntervalValue, PairPtr, AnyPtr> value_;
};

struct Label::Pair {
  Label first;
  Label second;
};

inline Label Label::pair(Label first, Label second) {
  Label l;
  l.value_ = std::make_shared<const Pair>(Pair{std::move(first), std::move(second)});
  return l;
}

inline const Label& Label::first() const {
  require(is_pair(), "pair");
  return std::get<PairPtr>(value_)->first;
}

inline const Label& Label::second() const {
  require(is_pair(), "pair");
  return std::get<PairPtr>(value_)->second;
}

inline bool operator==(const Label& a, const Label& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (a.is_unit()) return true;
  if (a.is_integer()) return a.as_integer() == b.as_integer();
  if (a.is_set()) return a.as_set() == b.as_set();
  if (a.is_interval()) return a.as_interval() == b.as_interval();
  if (a.is_pair()) return a.first() == b.first() && a.second() == b.second();
  // Opaque payloads compare by identity.
  return std::get<Label::AnyPtr>(a.value_) == std::get<Label::AnyPtr>(b.value_);
}

inline std::string Label::str() const {
  if (is_unit()) return "()";
  if (is_integer()) return std::to_string(as_integer());
  if (is_set()) {
    std::string s = "{";
    bool sep = false;
    for (auto v : as_set()) {
      if (sep) s += ",";
      s += std::to_string(v);
      sep = true;
    }
    return s + "}";
  }
  if (is_interval()) return as_interval().str();
  if (is_pair()) return "(" + first().str() + "," + second().str() + ")";
  return "<opaque>";
}

}  // namespace lattopt

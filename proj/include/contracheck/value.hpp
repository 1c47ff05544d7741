#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <variant>

namespace contracheck {

// Arbitrary-precision integer used for both runtime values and literals.
using Int = boost::multiprecision::cpp_int;

enum class Ty { Int, Bool, Unit };

std::string ty_name(Ty t);

// A runtime value: integer, boolean, or unit. Construct through the
// factories; the raw variant would happily convert an int to bool.
class Value {
 public:
  // Default-constructs to unit so Value can live in standard containers.
  Value() : v_(std::monostate{}) {}

  static Value integer(Int v) { return Value(V(std::in_place_index<0>, std::move(v))); }
  static Value boolean(bool v) { return Value(V(std::in_place_index<1>, v)); }
  static Value unit() { return Value(V(std::in_place_index<2>, std::monostate{})); }

  bool is_int() const { return v_.index() == 0; }
  bool is_bool() const { return v_.index() == 1; }
  bool is_unit() const { return v_.index() == 2; }

  const Int& as_int() const { return std::get<0>(v_); }
  bool as_bool() const { return std::get<1>(v_); }

  Ty type() const {
    switch (v_.index()) {
      case 0: return Ty::Int;
      case 1: return Ty::Bool;
      default: return Ty::Unit;
    }
  }

  bool operator==(const Value& o) const { return v_ == o.v_; }
  bool operator!=(const Value& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  using V = std::variant<Int, bool, std::monostate>;
  explicit Value(V v) : v_(std::move(v)) {}
  V v_;
};

// Euclidean division and remainder: the remainder is always in
// [0, |divisor|), so -7 div 2 = -4 and -7 mod 2 = 1. Divisor must be
// non-zero; callers guard for that.
Int euclid_div(const Int& a, const Int& b);
Int euclid_mod(const Int& a, const Int& b);

}  // namespace contracheck

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace condsets {

// Carrier point: integer, symbol, or tuple (products nest as tuples).
// Totally ordered so carriers, picks and reports are deterministic.
class Value {
 public:
  using Tuple = std::vector<Value>;

  Value() : v_(std::int64_t{0}) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(Tuple t) : v_(std::move(t)) {}

  bool is_int() const { return v_.index() == 0; }
  bool is_str() const { return v_.index() == 1; }
  bool is_tuple() const { return v_.index() == 2; }

  std::int64_t as_int() const { return std::get<0>(v_); }
  const std::string& as_str() const { return std::get<1>(v_); }
  const Tuple& as_tuple() const { return std::get<2>(v_); }

  std::string str() const {
    if (is_int()) return std::to_string(as_int());
    if (is_str()) return as_str();
    std::string out = "(";
    for (size_t i = 0; i < as_tuple().size(); i++) {
      if (i) out += ",";
      out += as_tuple()[i].str();
    }
    return out + ")";
  }

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    switch (a.v_.index()) {
      case 0: return std::get<0>(a.v_) < std::get<0>(b.v_);
      case 1: return std::get<1>(a.v_) < std::get<1>(b.v_);
      default: {
        const auto& x = std::get<2>(a.v_);
        const auto& y = std::get<2>(b.v_);
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
      }
    }
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }

 private:
  std::variant<std::int64_t, std::string, Tuple> v_;
};

}  // namespace condsets

#ifndef SATEN_DEGREE_H_
#define SATEN_DEGREE_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace saten {

using Rational = boost::multiprecision::cpp_rational;

// An exact degree of belief. Explicit beliefs live strictly inside (0,1);
// tautologies sit implicitly at 1 and nonbeliefs at 0, so both endpoints are
// representable for query results.
class Degree {
 public:
  Degree() = default;
  explicit Degree(Rational value) : value_(std::move(value)) {}
  Degree(std::int64_t num, std::int64_t den) : value_(num, den) {}

  static Degree Zero() { return Degree(0, 1); }
  static Degree One() { return Degree(1, 1); }

  // Accepts "0.7", ".7", "7/10", "1", "0".
  static Degree Parse(std::string_view text);

  const Rational& value() const { return value_; }

  // Terminating decimal when the denominator has only 2 and 5 as prime
  // factors, otherwise "p/q". Parse(ToString()) is the identity.
  std::string ToString() const;
  double ToDouble() const { return value_.convert_to<double>(); }

  bool IsOpenUnit() const { return value_ > 0 && value_ < 1; }

  friend Degree operator*(const Degree& a, const Degree& b) {
    return Degree(a.value_ * b.value_);
  }
  friend Degree operator+(const Degree& a, const Degree& b) {
    return Degree(a.value_ + b.value_);
  }
  friend Degree operator/(const Degree& a, std::int64_t k) {
    return Degree(Rational(a.value_ / k));
  }

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Rational value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Degree& d) {
  return os << d.ToString();
}

}  // namespace saten

#endif  // SATEN_DEGREE_H_

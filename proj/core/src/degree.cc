#include "saten/degree.h"

#include <cctype>

#include "saten/error.h"

namespace saten {

namespace {

using boost::multiprecision::cpp_int;

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void BadDegree(std::string_view text) {
  throw Error(ErrorKind::kDomain,
              "malformed degree '" + std::string(text) + "'");
}

}  // namespace

Degree Degree::Parse(std::string_view text) {
  if (text.empty()) BadDegree(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!AllDigits(num) || !AllDigits(den)) BadDegree(text);
    cpp_int d{std::string(den)};
    if (d == 0) BadDegree(text);
    return Degree(Rational(cpp_int{std::string(num)}, d));
  }
  std::string_view whole = text;
  std::string_view frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (!frac.empty() && !AllDigits(frac)) BadDegree(text);
    if (whole.empty() && frac.empty()) BadDegree(text);
  }
  if (!whole.empty() && !AllDigits(whole)) BadDegree(text);
  cpp_int num = whole.empty() ? cpp_int(0) : cpp_int(std::string(whole));
  cpp_int den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return Degree(Rational(num, den));
}

std::string Degree::ToString() const {
  cpp_int num = boost::multiprecision::numerator(value_);
  cpp_int den = boost::multiprecision::denominator(value_);
  if (num < 0) return "-" + Degree(Rational(-value_)).ToString();

  cpp_int rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  int digits = std::max(twos, fives);
  if (digits == 0) return num.str();
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  cpp_int scaled = num * (scale / den);
  std::string s = scaled.str();
  if (s.size() <= static_cast<std::size_t>(digits)) {
    s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
  }
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return s;
}

}  // namespace saten

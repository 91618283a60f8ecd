#include "pbisim/rational.hpp"

#include <cctype>
#include <ostream>

#include "pbisim/error.hpp"

namespace pbisim {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) {
    throw InvalidInput("not a probability literal: '" + std::string(whole) + "'");
  }
  return BigInt(std::string(s), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw InvalidInput("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (sgn(denominator) == 0) throw InvalidInput("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash), text),
                    parse_integer(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt int_part = whole.empty() ? BigInt(0) : parse_integer(whole, text);
    BigInt frac_part = parse_integer(frac, text);
    return Rational(int_part * scale + frac_part, scale);
  }
  return Rational(parse_integer(text, text), BigInt(1));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw InvalidInput("division by zero");
  value_ /= other.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace pbisim

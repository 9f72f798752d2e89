#include "mhdflow/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "mhdflow/error.hpp"

namespace mhdflow {

namespace {

[[noreturn]] void reject(std::string_view text, const char* why) {
  throw SolverError(ErrorCode::NotRepresentable,
                    "'" + std::string(text) + "' is not an exact decimal: " + why);
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;  // number of digits after the decimal point
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) reject(text, "no digits");

  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr == first) reject(text, "bad exponent");
    pos = static_cast<std::size_t>(ptr - text.data());
    if (exponent > 4096 || exponent < -4096) reject(text, "exponent out of range");
  }
  if (pos != text.size()) reject(text, "trailing characters");

  BigInt numerator(digits, 10);
  const long power = exponent - scale;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
  Rational result = power < 0 ? Rational(numerator, ten_pow) : Rational(numerator * ten_pow);
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw SolverError(ErrorCode::NotRepresentable, "non-finite value");
  }
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw SolverError(ErrorCode::NotRepresentable, "formatting failed");
  const std::string_view text(buf.data(), static_cast<std::size_t>(end - buf.data()));

  int significant = 0;
  bool leading = true;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (!std::isdigit(static_cast<unsigned char>(c))) continue;
    if (leading && c == '0') continue;
    leading = false;
    ++significant;
  }
  if (significant > 15) {
    throw SolverError(ErrorCode::NotRepresentable,
                      std::string(text) +
                          " has no short decimal form; use the floating-point ansatz/ivp paths");
  }
  return parse_decimal(text);
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational dyadic(const BigInt& k, unsigned shift) {
  BigInt den = 1;
  den <<= shift;
  Rational r(k, den);
  r.canonicalize();
  return r;
}

}  // namespace mhdflow

#include "bagpdb/rational.hpp"

#include <cctype>
#include <vector>

#include "bagpdb/errors.hpp"

namespace bagpdb {

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  Rational r(negative ? Integer(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(value) * scale;
  // Round half away from zero.
  Integer twice_num = scaled.get_num() * 2 + scaled.get_den();
  Integer rounded = twice_num / (scaled.get_den() * 2);
  std::string s = rounded.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sgn(value) < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

Integer factorial(std::uint64_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer falling_factorial(std::uint64_t n, std::uint64_t j) {
  if (j > n) return 0;
  Integer r = 1;
  for (std::uint64_t i = 0; i < j; ++i) r *= static_cast<unsigned long>(n - i);
  return r;
}

Integer stirling2(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  // Row-by-row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1).
  std::vector<Integer> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = std::min(i, k); j >= 1; --j) {
      row[j] = row[j] * static_cast<unsigned long>(j) + row[j - 1];
    }
    row[0] = 0;
  }
  return row[k];
}

Rational rational_sqrt(const Rational& value) {
  if (sgn(value) < 0) {
    throw ArithmeticError("square root of negative value " + to_string(value));
  }
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    throw ArithmeticError(to_string(value) + " is not the square of a rational");
  }
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace bagpdb

#include "capcomp/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "capcomp/errors.hpp"

namespace capcomp {
namespace {

constexpr std::size_t kMaxFractionDigits = 12;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text, const char* why) {
  throw ParseError("invalid rational literal '" + std::string(text) + "': " + why);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text, "expected p/q");
    BigInt q{std::string(den)};
    if (q == 0) bad_literal(text, "zero denominator");
    result = Rational(BigInt{std::string(num)}, q);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_literal(text, "expected a finite decimal");
    if (frac.size() > kMaxFractionDigits) bad_literal(text, "more than 12 fractional digits");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt digits{std::string(whole) + std::string(frac)};
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) bad_literal(text, "expected an integer, decimal or p/q");
    result = Rational(BigInt{std::string(body)});
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

BigInt ceil(const Rational& value) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

BigInt floor(const Rational& value) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

long to_long(const BigInt& value) {
  if (!value.fits_slong_p()) throw DomainError("integer " + value.get_str() + " out of range");
  return value.get_si();
}

double to_double(const Rational& value) { return value.get_d(); }

double log2(const BigInt& value) {
  if (value <= 0) throw DomainError("log2 of a non-positive integer");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exponent);
}

}  // namespace capcomp

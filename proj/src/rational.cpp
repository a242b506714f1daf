#include "rbu3/rational.hpp"

#include <cctype>
#include <functional>

#include "rbu3/errors.hpp"

namespace rbu3 {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long value) : value_(std::to_string(value)) {}

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw Error("zero denominator");
  value_ = mpq_class(mpz_class(std::to_string(numerator)), mpz_class(std::to_string(denominator)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  const std::size_t slash = text.find('/', i);
  const std::string_view num = text.substr(i, slash == std::string_view::npos ? std::string_view::npos : slash - i);
  if (!all_digits(num)) throw ParseError("expected integer", i);
  mpz_class n{std::string(num)};
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!all_digits(den)) throw ParseError("expected denominator", slash + 1);
    d = mpz_class(std::string(den));
    if (d == 0) throw ParseError("zero denominator", slash + 1);
  }
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error("division by zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), value_.get_mpq_t());
  return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::size_t Rational::hash() const {
  // Limb-level hash: cheap and stable for a given GMP build.
  const auto h1 = mpz_get_si(value_.get_num_mpz_t());
  const auto h2 = mpz_get_si(value_.get_den_mpz_t());
  const auto size = mpz_size(value_.get_num_mpz_t());
  return std::hash<long>{}(h1) * 1000003u ^ std::hash<long>{}(h2) ^ (size << 7);
}

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
  return Rational(mpq_class(n, d));
}

}  // namespace rbu3

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rbu3/errors.hpp"
#include "rbu3/rational.hpp"
#include "rbu3/utmatrix.hpp"

using namespace rbu3;

namespace {

QMatrix e(const char* name) { return parse_rational_matrix(name); }

QMatrix random_matrix(std::mt19937& rng, bool strict = false) {
  QMatrix m;
  for (const auto& b : basis_of(3)) {
    if (strict && b.row == b.col) continue;
    m.set(b, oracle::small_rational(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("rational canonical form") {
  const Rational q(6, -4);
  CHECK(q.numerator_string() == "-3");
  CHECK(q.denominator_string() == "2");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7").to_string() == "-7");
  CHECK(Rational::parse(Rational(-22, 6).to_string()) == Rational(-11, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/x"), ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational field axioms on random values") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Rational a = oracle::small_rational(rng, 50), b = oracle::small_rational(rng, 50),
                   c = oracle::small_rational(rng, 50);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
  }
}

TEST_CASE("matrix unit products") {
  CHECK(e("e12") * e("e23") == e("e13"));
  CHECK((e("e23") * e("e22")).is_zero());
  CHECK((e("e12") + e("e23")) * (e("e12") + e("e23")) == e("e13"));
  CHECK(QMatrix::unit(3) * e("e13") == e("e13"));
  CHECK(QMatrix::unit(3) == e("e11 + e22 + e33"));
  CHECK(QMatrix::unit(3).trace() == Rational(3));
}

TEST_CASE("basis order and parsing") {
  std::vector<std::string> names;
  for (const auto& b : basis_of(3)) names.push_back(b.name());
  CHECK(names == std::vector<std::string>{"e11", "e12", "e13", "e22", "e23", "e33"});
  CHECK_FALSE(parse_basis_name("e21", 3).has_value());
  CHECK_THROWS_AS(parse_rational_matrix("e21"), ParseError);
  CHECK_THROWS(QMatrix(3).set({2, 1}, Rational(1)));
  CHECK_THROWS_AS(QMatrix(3) + QMatrix(2), IncompatibleOperands);
}

TEST_CASE("associativity on all basis triples") {
  for (const auto& a : basis_of(3)) {
    for (const auto& b : basis_of(3)) {
      for (const auto& c : basis_of(3)) {
        const QMatrix x = QMatrix::basis(3, a), y = QMatrix::basis(3, b), z = QMatrix::basis(3, c);
        CHECK((x * y) * z == x * (y * z));
      }
    }
  }
}

TEST_CASE("products agree with dense 3x3 multiplication") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    const QMatrix a = random_matrix(rng), b = random_matrix(rng), c = random_matrix(rng);
    CHECK(oracle::same(oracle::mul(oracle::from_lib(a), oracle::from_lib(b)), a * b));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(QMatrix::unit(3) * a == a);
    CHECK(a * QMatrix::unit(3) == a);
    const QMatrix n = random_matrix(rng, true);
    CHECK((n * n * n).is_zero());
    CHECK(rank(a) == oracle::rank(oracle::from_lib(a)));
  }
}

TEST_CASE("nilpotency degree, idempotents and rank") {
  CHECK(nilpotency_degree(e("e12 + e23")) == 3);
  CHECK(nilpotency_degree(e("e13")) == 2);
  CHECK_FALSE(nilpotency_degree(e("e11")).has_value());
  CHECK(is_idempotent(e("e11 + 3*e12 + 5*e13")));
  CHECK(rank(e("e11 + 3*e12 + 5*e13")) == 1);
  CHECK(is_idempotent(e("e11 + e22")));
  CHECK(rank(e("e11 + e22")) == 2);
  CHECK_FALSE(is_idempotent(e("e12")));
  CHECK(rank(e("e12")) == 1);
}

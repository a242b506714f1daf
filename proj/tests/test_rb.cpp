#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rbu3/catalog.hpp"
#include "rbu3/rb.hpp"

using namespace rbu3;

namespace {

QOperator rational_op(const std::map<std::string, std::string>& images, Rational weight = Rational(0)) {
  return to_rational(make_operator({}, images, 3, weight));
}

QMatrix e(const char* s) { return parse_rational_matrix(s); }

QOperator random_op(std::mt19937& rng, int density) {
  QOperator op;
  std::uniform_int_distribution<int> coin(0, 9);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      if (coin(rng) < density) op.set(i, j, oracle::small_rational(rng, 3));
  return op;
}

}  // namespace

TEST_CASE("apply") {
  const QOperator r5 = rational_op({{"e12", "e11"}});
  CHECK(r5.apply(e("e12")) == e("e11"));
  CHECK(r5.apply(QMatrix(3)).is_zero());
  const auto r40 = find_entry(catalog_entries(), "R40");
  REQUIRE(r40);
  CHECK(image_of_unit(r40->op) == to_poly(e("e12 + 2*e23")));
}

TEST_CASE("residual of simple operators") {
  const QOperator r5 = rational_op({{"e12", "e11"}});
  CHECK(is_rota_baxter(r5));
  CHECK(residual_at(r5, e("e12"), e("e12")).is_zero());
  CHECK(is_rota_baxter(QOperator(3)));
  const auto res = rb_residual(QOperator::identity(3));
  CHECK_FALSE(res.is_rb());
  const auto first = res.first_failure();
  REQUIRE(first);
  CHECK(first->u.name() == "e11");
  CHECK(first->v.name() == "e11");
  CHECK(first->value == -e("e11"));
}

TEST_CASE("residual table agrees with the dense oracle") {
  std::mt19937 rng(29);
  for (int t = 0; t < 300; ++t) {
    const Rational w = t % 3 == 0 ? oracle::small_rational(rng) : Rational(0);
    QOperator op = random_op(rng, t % 4 == 0 ? 1 : 3);
    op.set_weight(w);
    const auto res = rb_residual(op);
    const oracle::Op o = oracle::from_lib(op);
    int k = 0;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b, ++k) {
        CHECK(oracle::same(oracle::residual(o, oracle::unit_matrix(a), oracle::unit_matrix(b), w), res.entries[k].value));
      }
    }
    CHECK(static_cast<int>(res.failures()) == oracle::failing_pairs(o, w));
  }
}

TEST_CASE("residual is bilinear") {
  std::mt19937 rng(31);
  for (int t = 0; t < 50; ++t) {
    const QOperator op = random_op(rng, 3);
    const auto res = rb_residual(op);
    std::vector<Rational> x(6), y(6);
    for (auto& v : x) v = oracle::small_rational(rng);
    for (auto& v : y) v = oracle::small_rational(rng);
    QMatrix combo(3);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) combo += (x[a] * y[b]) * res.entries[a * 6 + b].value;
    CHECK(residual_at(op, QMatrix::from_coords(3, x), QMatrix::from_coords(3, y)) == combo);
  }
}

TEST_CASE("scaling") {
  const QOperator r5 = rational_op({{"e12", "e11"}});
  const QOperator half = scale_operator(r5, Rational(2));
  CHECK(half.apply(e("e12")) == Rational(1, 2) * e("e11"));
  CHECK(oracle::failing_pairs(oracle::from_lib(half)) == 0);
  CHECK(scale_operator(r5, Rational(1)) == r5);
  CHECK(scale_operator(scale_operator(r5, Rational(3, 7)), Rational(7, 3)) == r5);
  CHECK_THROWS(scale_operator(r5, Rational(0)));
  // Weight scales along with the operator.
  QOperator id = QOperator::identity(3);
  id.set_weight(Rational(-1));
  CHECK(is_rota_baxter(id));
  CHECK(is_rota_baxter(scale_operator(id, Rational(5))));
}

TEST_CASE("generated systems") {
  Ansatz fixed;
  fixed.fix_image({1, 2}, e("e11"));
  for (const auto& b : basis_of(3))
    if (b.name() != "e12") fixed.fix_image(b, QMatrix(3));
  const GeneratedSystem g = generate_system(fixed);
  CHECK(g.system.generators.empty());
  CHECK(g.generic == to_poly(rational_op({{"e12", "e11"}})));

  Ansatz bad = fixed;
  bad.fix_image({1, 2}, e("e12"));
  CHECK_THROWS_AS(generate_system(bad), ContradictoryAnsatz);

  Ansatz identity;
  for (const auto& b : basis_of(3)) identity.fix_image(b, QMatrix::basis(3, b));
  const GeneratedSystem gi = generate_system(identity);
  REQUIRE(gi.system.generators.size() == 1);
  CHECK(gi.system.generators[0].is_constant());
}

TEST_CASE("split construction") {
  const std::vector<QMatrix> b = {e("e11"), e("e22"), e("e33"), e("e23")};
  const TablePtr t = make_table({"p", "q", "r", "s", "u", "v", "w", "z"});
  const std::vector<PMatrix> images = {parse_matrix("p*e12 + q*e13", t), parse_matrix("r*e12 + s*e13", t),
                                       parse_matrix("u*e12 + v*e13", t), parse_matrix("w*e12 + z*e13", t)};
  const POperator r1 = split_construction(b, {e("e12"), e("e13")}, images);
  CHECK(is_rota_baxter(r1));
  CHECK(r1.apply(to_poly(e("e12"))).is_zero());

  const TablePtr t2 = make_table({"p", "q", "r", "s", "u"});
  const std::vector<QMatrix> b2 = {e("e11"), e("e12"), e("e22"), e("e23"), e("e33")};
  std::vector<PMatrix> im2;
  for (const char* x : {"p", "q", "r", "s", "u"}) im2.push_back(parse_matrix(std::string(x) + "*e13", t2));
  CHECK(is_rota_baxter(split_construction(b2, {e("e13")}, im2)));

  // C must multiply to zero.
  const std::vector<QMatrix> b3 = {e("e11"), e("e12"), e("e13"), e("e23"), e("e33")};
  CHECK_THROWS_AS(split_construction(b3, {e("e22")}, std::vector<PMatrix>(5, PMatrix(3))), SplitHypothesisError);
}

TEST_CASE("lemma checks on small operators") {
  const auto r40 = find_entry(catalog_entries(), "R40");
  REQUIRE(r40);
  const PMatrix u = image_of_unit(r40->op);
  CHECK(u * u == to_poly(e("2*e13")));
  CHECK(MultiPoly(2) * r40->op.apply(u) == to_poly(e("2*e13")));
  CHECK(check_lemma3(r40->op).ok());

  const QOperator r5 = rational_op({{"e12", "e11"}});
  const Lemma3Report l5 = check_lemma3(r5);
  CHECK(l5.r1_zero);
  CHECK(l5.ok());
  CHECK(r5.compose(r5).is_zero());

  const Lemma3Report z = check_lemma3(QOperator(3));
  CHECK(z.ok());
  CHECK(z.r1_zero);

  // The identity (weight 0) is not RB and has 1 in its image.
  CHECK_FALSE(check_lemma3(QOperator::identity(3)).unit_not_in_image);
}

TEST_CASE("operator nilpotency and generic rank") {
  const QOperator r5 = rational_op({{"e12", "e11"}});
  CHECK(operator_nilpotency(r5) == 2);
  CHECK_FALSE(operator_nilpotency(QOperator::identity(3)).has_value());
  const auto r1 = find_entry(catalog_entries(), "R1");
  REQUIRE(r1);
  CHECK(generic_rank(r1->op) == 2);
}

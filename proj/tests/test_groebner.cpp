#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "rbu3/groebner.hpp"

using namespace rbu3;

namespace {

std::vector<MultiPoly> polys(const TablePtr& t, std::initializer_list<const char*> src) {
  std::vector<MultiPoly> out;
  for (const char* s : src) out.push_back(parse_poly(s, t));
  return out;
}

GroebnerBasis gb_of(const TablePtr& t, std::initializer_list<const char*> src, const MonomialOrder& ord) {
  return buchberger(PolySystem::make(t, polys(t, src), ord));
}

}  // namespace

TEST_CASE("s-polynomials") {
  const TablePtr t = make_table({"x", "y"});
  const auto lex = MonomialOrder::lex(2);
  const MultiPoly f = parse_poly("x^2 - 1", t), g = parse_poly("x*y - 1", t);
  const MultiPoly s = s_polynomial(f, g, lex);
  CHECK((s == parse_poly("x - y", t) || s == parse_poly("y - x", t)));
  CHECK(s_polynomial(f, f, lex).is_zero());
  const MultiPoly a = parse_poly("x^2", t), b = parse_poly("y^2", t);
  CHECK(normal_form(s_polynomial(a, b, lex), {a, b}, lex).is_zero());
}

TEST_CASE("normal forms") {
  const TablePtr t = make_table({"x", "y"});
  const auto grl = MonomialOrder::grevlex(2), lex = MonomialOrder::lex(2);
  CHECK(normal_form(parse_poly("x^2*y", t), polys(t, {"x^2 - y"}), grl) == parse_poly("y^2", t));
  const MultiPoly f = parse_poly("x^3 - 2*x*y + 5", t);
  CHECK(normal_form(f, {f}, grl).is_zero());
  CHECK(normal_form(parse_poly("x - y", t), polys(t, {"x - y", "y^2 - 1"}), lex).is_zero());
}

TEST_CASE("reduced basis of the hyperbola system") {
  const TablePtr t = make_table({"x", "y"});
  const GroebnerBasis gb = gb_of(t, {"x^2 - 1", "x*y - 1"}, MonomialOrder::lex(2));
  CHECK(gb.reduced);
  CHECK(gb.basis == polys(t, {"x - y", "y^2 - 1"}));
  CHECK(verify_groebner(gb).ok());
  CHECK(ideal_member(parse_poly("x - y", t), gb));
  CHECK_FALSE(ideal_member(parse_poly("x", t), gb));
  CHECK(gb_of(t, {"x - y"}, MonomialOrder::lex(2)).basis == polys(t, {"x - y"}));
  CHECK_FALSE(ideal_member(parse_poly("x", t), gb_of(t, {"x^2"}, MonomialOrder::lex(2))));
}

TEST_CASE("reduced basis is independent of generator order and stable") {
  const TablePtr t = make_table({"x", "y", "z"});
  const auto ord = MonomialOrder::grevlex(3);
  auto gens = polys(t, {"x^2 + y*z - 2", "x*y - z^2 + 1", "y^2 - x*z"});
  const GroebnerBasis ref = buchberger(PolySystem::make(t, gens, ord));
  CHECK(verify_groebner(ref).ok());
  std::sort(gens.begin(), gens.end(), [](const MultiPoly& a, const MultiPoly& b) { return a.to_string() < b.to_string(); });
  do {
    CHECK(buchberger(PolySystem::make(t, gens, ord)).basis == ref.basis);
  } while (std::next_permutation(gens.begin(), gens.end(),
                                 [](const MultiPoly& a, const MultiPoly& b) { return a.to_string() < b.to_string(); }));
  CHECK(buchberger(PolySystem::make(t, ref.basis, ord)).basis == ref.basis);
}

TEST_CASE("normal form is idempotent and random bases certify") {
  std::mt19937 rng(17);
  const TablePtr t = make_table({"x", "y", "z"}), xy = make_table({"x", "y"});
  for (int i = 0; i < 20; ++i) {
    std::vector<MultiPoly> gens;
    // Lex runs on two variables: random dense lex bases grow too fast for a test.
    const bool lex = i % 2 == 1;
    const TablePtr tt = lex ? xy : t;
    const int nv = lex ? 2 : 3;
    for (int k = 0; k < (lex ? 2 : 3); ++k) gens.push_back(oracle::to_lib(oracle::random_poly(rng, nv, 3, 2), tt));
    const auto ord = lex ? MonomialOrder::lex(2) : MonomialOrder::grevlex(3);
    const GroebnerBasis gb = buchberger(PolySystem::make(tt, gens, ord), GbLimits::seconds(30));
    const GbCheck c = verify_groebner(gb);
    CHECK(c.generators_reduce);
    CHECK(c.spairs_reduce);
    CHECK(c.reduced_form);
    for (int k = 0; k < 5; ++k) {
      const MultiPoly p = oracle::to_lib(oracle::random_poly(rng, nv, 5, 3), tt);
      const MultiPoly r = normal_form(p, gb.basis, ord);
      CHECK(normal_form(r, gb.basis, ord) == r);
      CHECK(ideal_member(p - r, gb));
    }
  }
}

TEST_CASE("principal ideal membership matches exact division") {
  std::mt19937 rng(23);
  const TablePtr t = make_table({"x", "y", "z"});
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const oracle::Poly f = oracle::random_poly(rng, 3, 3, 2);
    if (f.empty()) continue;
    oracle::Poly p = oracle::mul(oracle::random_poly(rng, 3, 3, 2), f);
    if (i % 2) oracle::add_term(p, {0, 1, 0}, 1);  // perturbed negatives
    const GroebnerBasis gb = buchberger(PolySystem::make(t, {oracle::to_lib(f, t)}, MonomialOrder::lex(3)));
    agree += ideal_member(oracle::to_lib(p, t), gb) == oracle::divides(f, p) ? 1 : 0;
  }
  CHECK(agree == 200);
}

TEST_CASE("elimination") {
  const TablePtr t = make_table({"t", "x", "y"});
  const PolySystem sys = PolySystem::make(t, polys(t, {"x - t", "y - t^2"}), MonomialOrder::grevlex(3));
  const PolySystem el = eliminate(sys, {"x", "y"});
  REQUIRE(el.generators.size() == 1);
  const MultiPoly g = el.generators[0];
  CHECK((g == parse_poly("y - x^2", el.table) || g == parse_poly("x^2 - y", el.table)));

  const PolySystem all = eliminate(sys, {"t", "x", "y"});
  const GroebnerBasis a = buchberger(all), b = buchberger(sys);
  for (const auto& p : b.basis) CHECK(ideal_member(p.retarget(all.table), a));

  const TablePtr ux = make_table({"u", "x"});
  const PolySystem incons = PolySystem::make(ux, polys(ux, {"u*x - 1", "x"}), MonomialOrder::grevlex(2));
  const PolySystem e2 = eliminate(incons, {"x"});
  REQUIRE(e2.generators.size() == 1);
  CHECK(e2.generators[0].is_constant());
}

TEST_CASE("membership tiers") {
  const TablePtr t = make_table({"x", "y"});
  const PolySystem sys = PolySystem::make(t, polys(t, {"x^2", "y^3"}), MonomialOrder::grevlex(2));
  const GroebnerBasis gb = buchberger(sys);
  CHECK(power_member(parse_poly("x", t), gb, 4) == 2u);
  CHECK(radical_member(parse_poly("x + y", t), sys));
  CHECK_FALSE(radical_member(parse_poly("x + 1", t), sys));
  const auto m = tiered_membership(parse_poly("x*y", t), gb, 4, {});
  CHECK(m.member());
  CHECK(m.tier == MembershipResult::Tier::Power);
  CHECK(tiered_membership(parse_poly("x^2*y", t), gb, 4, {}).tier == MembershipResult::Tier::Ideal);
  CHECK(tiered_membership(parse_poly("x - 1", t), gb, 4, {}).tier == MembershipResult::Tier::None);
}

TEST_CASE("resource limits fail safely") {
  const TablePtr t = make_table({"a", "b", "c", "d"});
  const PolySystem sys = PolySystem::make(
      t, polys(t, {"a + b + c + d", "a*b + b*c + c*d + d*a", "a*b*c + b*c*d + c*d*a + d*a*b", "a*b*c*d - 1"}),
      MonomialOrder::lex(4));
  GbLimits lim;
  lim.max_pairs = 2;
  CHECK_THROWS_AS(buchberger(sys, lim), ResourceLimitError);
  const GroebnerBasis gb = buchberger(sys, GbLimits::seconds(60));
  CHECK(verify_groebner(gb).ok());
}

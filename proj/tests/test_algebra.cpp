#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cyclelab/hpipoly.hpp"
#include "cyclelab/parampoly.hpp"
#include "cyclelab/planarpoly.hpp"
#include "test_util.hpp"

using namespace cyclelab;
using test_util::random_parampoly;
using test_util::random_rat;

namespace {

SymTab abc() { return SymbolTable::make({"a", "b", "c"}); }

// naive expansion oracle: distributes two term lists without going through
// the production multiply
PlanarPoly naive_product(const PlanarPoly& f, const PlanarPoly& g) {
    PlanarPoly out(f.table());
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) {
            PlanarPoly t(f.table());
            t.add_term({kf.i + kg.i, kf.j + kg.j}, cf * cg);
            out = out + t;
        }
    return out;
}

}  // namespace

TEST_CASE("rat basics") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat_to_string(rat(-6, 4)) == "-3/2");
    CHECK(rat_to_string(Rat(7)) == "7");
    CHECK(rat_from_string("0.05") == rat(1, 20));
    CHECK(rat_from_string("-3/9") == rat(-1, 3));
    CHECK_THROWS_AS(rat(1, 0), Error);
}

TEST_CASE("binomial expansion (x^2+y^2)^2") {
    SymTab t = SymbolTable::make({});
    PlanarPoly r2 = parse_expression("x^2 + y^2", t);
    PlanarPoly sq = r2 * r2;
    CHECK(sq == parse_expression("x^4 + 2*x^2*y^2 + y^4", t));
}

TEST_CASE("cancellation (a*x + b*y) + (-a*x)") {
    SymTab t = abc();
    PlanarPoly s = parse_expression("a*x + b*y", t) + parse_expression("-a*x", t);
    CHECK(s == parse_expression("b*y", t));
}

TEST_CASE("(1-x^2-y^2)(a*x+b*y+c) has 9 terms, coefficients +-a,b,c") {
    SymTab t = abc();
    PlanarPoly circle = parse_expression("1 - x^2 - y^2", t);
    PlanarPoly line = parse_expression("a*x + b*y + c", t);
    PlanarPoly prod = circle * line;
    // independent oracle: naive expansion
    CHECK(prod == naive_product(circle, line));
    std::size_t nterms = 0;
    for (const auto& [k, c] : prod.terms()) nterms += c.terms().size();
    CHECK(nterms == 9);
    CHECK(prod.coeff(3, 0) == test_util::parse_param("-a", t));
    CHECK(prod.coeff(0, 0) == test_util::parse_param("c", t));
    CHECK(prod.coeff(1, 2) == test_util::parse_param("-a", t));
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(12345);
    SymTab t = SymbolTable::make({"a", "b", "c", "d"});
    for (int i = 0; i < 1000; ++i) {
        ParamPoly p = random_parampoly(rng, t), q = random_parampoly(rng, t), r = random_parampoly(rng, t);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("substitution: reduction-chain bindings") {
    SymTab t = SymbolTable::make({"b02", "b20", "b04", "b22", "b40"});
    ParamPoly l1 = test_util::parse_param("1/8*(3*b02 + b20)", t);
    ParamPoly zero = l1.substitute({{"b20", test_util::parse_param("-3*b02", t)}});
    CHECK(zero.is_zero());

    ParamPoly l2 = test_util::parse_param("1/16*(5*b04 + b22 + b40)", t);
    CHECK(l2.substitute({{"b22", test_util::parse_param("-5*b04 - b40", t)}}).is_zero());

    // identity under empty bindings
    ParamPoly p = test_util::parse_param("3*b02^2*b40 - b22", t);
    CHECK(p.substitute({}) == p);

    CHECK_THROWS_AS(p.substitute({{"nope", ParamPoly::zero(t)}}), Error);
}

TEST_CASE("substitution composition when images are free of bound symbols") {
    std::mt19937_64 rng(777);
    SymTab t = SymbolTable::make({"a", "b", "c"});
    SymTab img = SymbolTable::make({"u", "v"});
    for (int i = 0; i < 200; ++i) {
        ParamPoly p = random_parampoly(rng, t, 4, 5);
        ParamPoly ia = random_parampoly(rng, img, 2, 3);
        ParamPoly ib = random_parampoly(rng, img, 2, 3);
        // sigma: a -> ia, then tau: b -> ib equals simultaneous {a->ia', b->ib}
        // where ia' = ia with tau applied (no-op: ia has no b)
        ParamPoly seq = p.substitute({{"a", ia}}).substitute({{"b", ib.remap(merge_tables(t, img))}});
        ParamPoly sim = p.substitute({{"a", ia}, {"b", ib}});
        CHECK(seq == sim);
    }
}

TEST_CASE("partial derivatives") {
    SymTab t = SymbolTable::make({"b02", "b20"});
    PlanarPoly f = parse_expression("x^2 + y^2 - 1", t);
    CHECK(f.dx() == parse_expression("2*x", t));
    CHECK(f.dy() == parse_expression("2*y", t));
    ParamPoly g = test_util::parse_param("3*b02 + b20", t);
    CHECK(g.derivative("b02") == ParamPoly::constant(t, Rat(3)));
}

TEST_CASE("content and primitive") {
    SymTab t = abc();
    ParamPoly p = test_util::parse_param("-1/8*a*b", t);
    auto [content, prim] = p.content_and_primitive();
    CHECK(content == rat(1, 8));
    CHECK(prim == test_util::parse_param("-a*b", t));

    ParamPoly seven = ParamPoly::constant(t, Rat(7));
    auto [c7, p7] = seven.content_and_primitive();
    CHECK(c7 == Rat(7));
    CHECK(p7 == ParamPoly::constant(t, Rat(1)));

    CHECK_THROWS_AS(ParamPoly::zero(t).content_and_primitive(), Error);

    // reconstruction on random inputs
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 300; ++i) {
        ParamPoly q = random_parampoly(rng, t);
        if (q.is_zero()) continue;
        auto [g, prim2] = q.content_and_primitive();
        CHECK(g > 0);
        CHECK(prim2 * g == q);
    }
}

TEST_CASE("evaluation") {
    SymTab t = abc();
    ParamPoly p = test_util::parse_param("-1/8*a*b", t);
    CHECK(p.evaluate({{"a", Rat(2)}, {"b", Rat(4)}, {"c", Rat(0)}}) == Rat(-1));
    CHECK_THROWS_AS(p.evaluate({{"a", Rat(2)}}), Error);

    // ring homomorphism on random instances
    std::mt19937_64 rng(31415);
    std::map<std::string, Rat> pt{{"a", rat(2, 3)}, {"b", rat(-1, 2)}, {"c", Rat(3)}};
    for (int i = 0; i < 300; ++i) {
        ParamPoly f = random_parampoly(rng, t, 4, 4), g = random_parampoly(rng, t, 4, 4);
        CHECK((f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt));
        CHECK((f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt));
    }
}

TEST_CASE("hpipoly: pi bookkeeping and evaluation") {
    SymTab t = abc();
    // M = 2h(2h-1)c pi = (4c h^2 - 2c h) pi
    HPiPoly m(t, 1);
    m.add_term(2, test_util::parse_param("4*c", t));
    m.add_term(1, test_util::parse_param("-2*c", t));

    CHECK(m.evaluate_double({{"c", 3.0}}, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
    double at1 = m.evaluate_double({{"c", 1.0}}, 1.0);
    CHECK(at1 == doctest::Approx(2 * M_PI).epsilon(1e-12));  // 2 pi by direct arithmetic
    CHECK_THROWS_AS(m.evaluate_exact({{"c", Rat(1)}}, Rat(1)), Error);

    HPiPoly no_pi(t, 0);
    no_pi.add_term(1, ParamPoly::constant(t, Rat(2)));
    CHECK(no_pi.evaluate_exact({}, rat(1, 2)) == Rat(1));

    // mismatched pi powers cannot be added
    CHECK_THROWS_AS(m + no_pi, Error);
    // multiplication adds pi powers
    CHECK((m * m).pi_power() == 2);
}

TEST_CASE("hpipoly substitution and powers") {
    SymTab t = abc();
    HPiPoly m(t, 1);
    m.add_term(1, test_util::parse_param("3*b02 + b20", SymbolTable::make({"b02", "b20"})));
    HPiPoly z = m.substitute({{"b20", test_util::parse_param("-3*b02", SymbolTable::make({"b02"}))}});
    CHECK(z.is_zero());

    HPiPoly h(t, 0);
    h.add_term(1, ParamPoly::constant(t, Rat(2)));
    CHECK(h.pow(3).coeff(3) == ParamPoly::constant(t, Rat(8)));
    CHECK(h.pow(0).coeff(0) == ParamPoly::constant(t, Rat(1)));
}

TEST_CASE("rendering is canonical and parseable") {
    SymTab t = abc();
    PlanarPoly f = parse_expression("-1/8*a*b*x^2*y + y^2 - c", t);
    CHECK(parse_expression(f.str(), t) == f);
    CHECK(PlanarPoly::zero(t).str() == "0");
    ParamPoly g = test_util::parse_param("a^2 - 2*b + 1/3", t);
    CHECK(g.str() == "a^2 - 2*b + 1/3");
    // leading -1 coefficients must survive the unary-minus/caret precedence
    PlanarPoly h = parse_expression("0 - x^2*y + y", t);
    CHECK(parse_expression(h.str(), t) == h);
    CHECK(h.str() == "-1*x^2*y + y");
}

TEST_CASE("planar helpers") {
    SymTab t = abc();
    PlanarPoly f = parse_expression("x^2*y + a*y^3", t);
    CHECK(f.reflect_y() == -f);
    CHECK(f.reflect_y() == parse_expression("-1*x^2*y - a*y^3", t));
    CHECK(f.reflect_x() == f);
    CHECK(f.degree() == 3);
    CHECK(f.homogeneous_part(3) == f);
    CHECK(f.mul_truncated(f, 4).is_zero());
    CHECK(f.pow(2) == f * f);
}

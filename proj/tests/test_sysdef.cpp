#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclelab/sysdef.hpp"
#include "test_util.hpp"

using namespace cyclelab;
using test_util::parse_param;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("parse the degree-4 family file") {
    PlanarSystem sys = parse_system(
        "params: a,b,c\n"
        "dx = -y\n"
        "dy = x + y*(x^2+y^2-1)*(a*x+b*y+c)\n");
    CHECK(sys == PlanarSystem{kukles_deg4().params, kukles_deg4().P, kukles_deg4().Q, {}});
}

TEST_CASE("parse the linear center with empty params") {
    PlanarSystem sys = parse_system("params:\ndx = -y\ndy = x\n");
    CHECK(sys.P == -PlanarPoly::var_y(sys.params));
    CHECK(sys.Q == PlanarPoly::var_x(sys.params));
    CHECK(sys.params->size() == 0);
}

TEST_CASE("parser error paths") {
    CHECK(code_of([] { parse_system("params:\ndx = -y\n"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_system("params: a\ndx = -y\ndy = x + q*y\n"); }) ==
          ErrorCode::UndeclaredIdentifier);
    CHECK(code_of([] { parse_system("params: a\ndx = -y\ndx = y\ndy = x\n"); }) ==
          ErrorCode::DuplicateDefinition);
    CHECK(code_of([] { parse_system("params: a, a\ndx = -y\ndy = x\n"); }) ==
          ErrorCode::DuplicateDefinition);
    CHECK(code_of([] { parse_system("params: x\ndx = -y\ndy = x\n"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_system("params: a\ndx = -y$\ndy = x\n"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_system("params: a\ndx = -y\ndy = x + a*\n"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_system("params: a\ndx = -y\ndy = x\nperturb: zz\n"); }) ==
          ErrorCode::UndeclaredIdentifier);
    // x/2 is not in the grammar (no division of expressions)
    CHECK(code_of([] { parse_system("params:\ndx = x/2\ndy = x\n"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("comments, whitespace and perturb lines") {
    PlanarSystem sys = parse_system(
        "# a comment\n"
        "params: a, b, c   # trailing comment\n"
        "\n"
        "dx = -y\n"
        "dy = x + y*(x^2+y^2-1)*(a*x+b*y+c)\n"
        "perturb: a, b\n");
    CHECK(sys.perturbation_params == std::vector<std::string>{"a", "b"});
}

TEST_CASE("round trip: render then parse on constructed families") {
    CHECK(parse_system(render_system(kukles_deg4())) == kukles_deg4());
    CHECK(parse_system(render_system(kukles_cubic())) == kukles_cubic());
    PlanarSystem odd = kukles_odd(3);
    CHECK(parse_system(render_system(odd)) == odd);
}

TEST_CASE("round trip: random systems") {
    std::mt19937_64 rng(909090);
    SymTab t = SymbolTable::make({"a", "b", "c"});
    std::uniform_int_distribution<int> deg(0, 4);
    for (int trial = 0; trial < 100; ++trial) {
        PlanarSystem sys;
        sys.params = t;
        PlanarPoly P(t), Q(t);
        for (int terms = 0; terms < 5; ++terms) {
            int i = deg(rng), j = deg(rng);
            P.add_term({i, j}, test_util::random_parampoly(rng, t, 2, 2));
            Q.add_term({j, i}, test_util::random_parampoly(rng, t, 2, 2));
        }
        sys.P = P;
        sys.Q = Q;
        CHECK(parse_system(render_system(sys)) == sys);
    }
}

TEST_CASE("kukles_cubic structure") {
    PlanarSystem sys = kukles_cubic();
    CHECK(sys.P == -PlanarPoly::var_y(sys.params));
    CHECK(sys.Q.terms().size() == 8);  // x plus seven coefficient monomials
    CHECK(sys.Q.coeff(1, 1) == parse_param("a2", sys.params));
    CHECK(sys.Q.coeff(0, 3) == parse_param("a7", sys.params));

    PlanarSystem zero = kukles_cubic({Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
    CHECK(zero.Q == PlanarPoly::var_x(zero.params));

    // Jin-Wang instance: a2=a6=0, a3=-2a1, a5=-3a7 at a1=1, a7=1/3
    PlanarSystem jw = kukles_cubic({Rat(1), Rat(0), Rat(-2), rat(-1, 3), Rat(-1), Rat(0), rat(1, 3)});
    CHECK(jw.Q.coeff(0, 2).constant_value() == Rat(-2));
    CHECK(jw.Q.coeff(2, 1).constant_value() == Rat(-1));
}

TEST_CASE("kukles_deg4 family invariants") {
    PlanarSystem sys = kukles_deg4();
    CHECK(sys.P == -PlanarPoly::var_y(sys.params));
    CHECK(sys.Q.coeff(0, 0).is_zero());
    CHECK(sys.Q.coeff(1, 0) == ParamPoly::constant(sys.params, Rat(1)));
    CHECK(sys.Q.degree() == 4);

    // a=b=0 leaves ydot = x + c*y*(x^2+y^2-1)
    PlanarSystem sub = sys.substitute({{"a", ParamPoly::constant(Rat(0))},
                                       {"b", ParamPoly::constant(Rat(0))}});
    PlanarPoly expect = parse_expression("x + c*y*(x^2+y^2-1)", sys.params);
    CHECK(sub.Q == expect);
}

TEST_CASE("kukles_odd: degrees, sparsity, index checks") {
    PlanarSystem n3 = kukles_odd(3);
    CHECK(n3.Q.degree() == 9);
    CHECK(n3.params->size() == 10);
    CHECK(n3.P == -PlanarPoly::var_y(n3.params));
    CHECK(n3.Q.coeff(1, 0) == ParamPoly::constant(n3.params, Rat(1)));

    // n=1 with only b00: ydot = x + y(1-x^2-y^2) b00
    PlanarSystem only = kukles_odd(1, {{{0, 0}, Rat(1)}});
    PlanarPoly expect = parse_expression("x + y*(1-x^2-y^2)", only.params);
    CHECK(only.Q == expect);

    // n=2 with missing keys defaults to zero: a valid degree-7 family member
    PlanarSystem sparse = kukles_odd(2, {{{2, 2}, Rat(1)}});
    CHECK(sparse.Q.degree() == 7);

    CHECK(code_of([] { kukles_odd(2, {{{3, 0}, Rat(1)}}); }) == ErrorCode::BadIndex);
    CHECK(code_of([] { kukles_odd(1, {{{4, 0}, Rat(1)}}); }) == ErrorCode::BadIndex);
}

TEST_CASE("kukles conditions") {
    // K2: a7 = a2 = a5 = 0
    auto k2 = kukles_conditions({Rat(2), Rat(0), Rat(5), rat(1, 3), Rat(0), Rat(-7), Rat(0)});
    CHECK(k2.K2);

    // Jin-Wang: substitute into each of the five relations and verify 0 = 0
    std::array<Rat, 7> jw{Rat(1), Rat(0), Rat(-2), rat(-1, 3), Rat(-1), Rat(0), rat(1, 3)};
    CHECK(jw[1] == 0);
    CHECK(jw[5] == 0);
    CHECK(jw[2] == -2 * jw[0]);
    CHECK(jw[4] == -3 * jw[6]);
    CHECK(jw[6] * jw[6] == jw[3] * jw[3]);
    CHECK(-jw[3] == jw[0] * jw[0] / 3);
    auto rep = kukles_conditions(jw);
    CHECK(rep.jin_wang);
    CHECK(rep.jin_wang_branch == -1);  // a7 = -a4 branch

    // all ones: direct evaluation of the defining polynomials, all nonzero
    std::array<Rat, 7> ones;
    ones.fill(Rat(1));
    auto r1 = kukles_conditions(ones);
    Rat lambda = Rat(1) * Rat(1) + 3 * Rat(1);
    CHECK(r1.lambda == lambda);
    CHECK(r1.k_alpha == Rat(1) + lambda);
    CHECK(r1.k_gamma == lambda + Rat(2));
    CHECK(r1.k_delta == Rat(9) + Rat(2) + 9 * lambda * lambda + 27 * lambda);
    CHECK(!r1.any());
}

TEST_CASE("eps_rescale on the degree-4 family") {
    PlanarSystem sys = kukles_deg4();
    PerturbedSystem ps = eps_rescale(sys, {"a", "b", "c"}, true);
    CHECK(ps.f1.is_zero());
    PlanarPoly expect = parse_expression("y*(1-x^2-y^2)*(a*x+b*y+c)", sys.params);
    CHECK(ps.g1 == expect);
    CHECK(ps.time_reversed);
    CHECK(ps.vanishes_at_origin);

    // reassembly at eps = 1 undoing the time reversal reproduces the system
    PlanarSystem back = reassemble(ps);
    CHECK(back.P == sys.P);
    CHECK(back.Q == sys.Q);
}

TEST_CASE("eps_rescale edge cases") {
    PlanarSystem lin = parse_system("params:\ndx = -y\ndy = x\n");
    PerturbedSystem ps = eps_rescale(lin, {}, false);
    CHECK(ps.g1.is_zero());
    CHECK(ps.f1.is_zero());
    CHECK(reassemble(ps).P == lin.P);

    // not a perturbation of the linear center once a changes the eps^0 part
    PlanarSystem bad = parse_system("params: a\ndx = -y\ndy = x + y^3\n");
    CHECK(code_of([&] { eps_rescale(bad, {"a"}, true); }) == ErrorCode::NotPerturbationOfLinearCenter);

    // quadratic in the rescaled parameters
    PlanarSystem quad = parse_system("params: a\ndx = -y\ndy = x + a^2*y^3\n");
    CHECK(code_of([&] { eps_rescale(quad, {"a"}, true); }) == ErrorCode::NonlinearInEps);

    CHECK(code_of([&] { eps_rescale(lin, {"zz"}, true); }) == ErrorCode::UnknownSymbol);
}

TEST_CASE("eps_rescale odd family matches the time-reversed sign") {
    PlanarSystem sys = kukles_odd(1);
    PerturbedSystem ps = eps_rescale(sys, sys.params->names(), true);
    // time reversal flips the perturbation: g1 = y(x^2+y^2-1)(b00 + ...)
    PlanarPoly expect =
        parse_expression("y*(x^2+y^2-1)*(b00 + b20*x^2 + b02*y^2)", sys.params);
    CHECK(ps.g1 == expect);
    CHECK(reassemble(ps).Q == sys.Q);
}

TEST_CASE("round trip through eps_rescale on random rescalable systems") {
    std::mt19937_64 rng(24680);
    SymTab t = SymbolTable::make({"u", "v", "w"});
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        // xdot = -y, ydot = x + sum of monomials each linear in one parameter
        PlanarSystem sys;
        sys.params = t;
        sys.P = -PlanarPoly::var_y(t);
        PlanarPoly q = PlanarPoly::var_x(t);
        for (int terms = 0; terms < 4; ++terms) {
            int i = deg(rng), j = deg(rng);
            if (i + j < 2) i += 2;  // keep the linear part intact
            ParamPoly coeff =
                ParamPoly::symbol(t, t->name(static_cast<std::size_t>(pick(rng)))) *
                test_util::random_nonzero_rat(rng);
            q.add_term({i, j}, coeff);
        }
        sys.Q = q;
        for (bool reversed : {false, true}) {
            PerturbedSystem ps = eps_rescale(sys, t->names(), reversed);
            PlanarSystem back = reassemble(ps);
            CHECK(back.P == sys.P);
            CHECK(back.Q == sys.Q);
        }
    }
}

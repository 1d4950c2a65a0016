#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cyclelab/lyapunov.hpp"
#include "cyclelab/numerics.hpp"
#include "test_util.hpp"

using namespace cyclelab;
using test_util::parse_param;

namespace {

PlanarPoly rotation_apply(const PlanarPoly& v) {
    // -y d/dx + x d/dy
    SymTab t = v.table();
    return -(v.dx() * PlanarPoly::var_y(t)) + v.dy() * PlanarPoly::var_x(t);
}

PlanarSystem deg4_with(const char* sym, long num, long den = 1) {
    return kukles_deg4().substitute({{sym, ParamPoly::constant(rat(num, den))}});
}

}  // namespace

TEST_CASE("linear center: all focal values vanish") {
    PlanarSystem lin = parse_system("params:\ndx = -y\ndy = x\n");
    auto cert = focal_values(lin, 12);
    CHECK(cert.residual_ok);
    for (std::size_t m = 1; m < cert.etas.size(); ++m) CHECK(cert.etas[m].is_zero());
}

TEST_CASE("eta_2 is always zero under the normal-form precondition") {
    auto cert = focal_values(deg4_with("c", 0), 4);
    CHECK(cert.etas[1].is_zero());
}

TEST_CASE("deg4 with c=0: L(1) = -ab/8") {
    PlanarSystem sys = deg4_with("c", 0);
    auto cert = focal_values(sys, 4);
    CHECK(cert.residual_ok);
    CHECK(cert.eta_for_L(1) == parse_param("-1/8*a*b", sys.params));
    auto q = reduce_quantity(1, cert.eta_for_L(1));
    CHECK(q.content == rat(1, 8));
    CHECK(q.primitive == parse_param("-a*b", sys.params));
}

TEST_CASE("example 5.2 with b00=0: L(1) proportional to 3*b02 + b20") {
    PlanarSystem sys = kukles_odd(3).substitute({{"b00", ParamPoly::constant(Rat(0))}});
    auto cert = focal_values(sys, 4);
    CHECK(cert.residual_ok);
    CHECK(cert.eta_for_L(1) == parse_param("1/8*(3*b02 + b20)", sys.params));
}

TEST_CASE("rotation-operator solve reproduces the right-hand side per degree") {
    PlanarSystem sys = deg4_with("c", 0);
    int N = 8;
    auto cert = focal_values(sys, N);
    SymTab t = cert.V_parts[2].table();
    PlanarPoly V(t);
    for (int k = 2; k <= N; ++k) V = V + cert.V_parts[static_cast<std::size_t>(k)];
    PlanarPoly vdot =
        V.dx().mul_truncated(sys.P.remap(t), N) + V.dy().mul_truncated(sys.Q.remap(t), N);
    PlanarPoly r2 = parse_expression("x^2 + y^2", t);
    for (int m = 1; 2 * m <= N; ++m)
        vdot = vdot - r2.pow(static_cast<unsigned>(m)) * cert.etas[static_cast<std::size_t>(m)];
    CHECK(vdot.truncate_degree(N).is_zero());

    // each computed part is homogeneous and rotation maps it within degree
    PlanarPoly v3 = cert.V_parts[3];
    CHECK(v3.homogeneous_part(3) == v3);
    PlanarPoly g3 = rotation_apply(v3);
    CHECK(g3.homogeneous_part(3) == g3);
}

TEST_CASE("nonlinear term in xdot: classic cubic focal value") {
    // xdot = -y + x^3, ydot = x: the first focal value is 3/8 (the standard
    // Hopf coefficient formula gives 16 a1 = f_xxx = 6)
    PlanarSystem sys = parse_system("params:\ndx = -y + x^3\ndy = x\n");
    auto cert = focal_values(sys, 4);
    CHECK(cert.residual_ok);
    CHECK(cert.eta_for_L(1) == ParamPoly::constant(sys.params, rat(3, 8)));

    // numeric cross-check: eta_4 > 0 means the origin repels
    NumericSystem ns(sys, {});
    double d = poincare_return(ns, 0.1, 1e-12).x - 0.1;
    CHECK(d > 0);
}

TEST_CASE("nonzero linear trace is rejected with lambda available from l0") {
    PlanarSystem odd = kukles_odd(1);
    CHECK_THROWS_AS(focal_values(odd, 4), Error);
    ParamPoly l0 = lyapunov_l0(odd);
    CHECK(l0 == parse_param("1/2*b00", odd.params));
    auto red = reduce_quantity(0, l0);
    CHECK(red.primitive == parse_param("b00", odd.params));

    // deg4: lambda = -c/2 (the reference states L(0) = c; zero sets agree)
    CHECK(lyapunov_l0(kukles_deg4()) == parse_param("-1/2*c", kukles_deg4().params));
    CHECK(lyapunov_l0(parse_system("params:\ndx = -y\ndy = x\n")).is_zero());
}

TEST_CASE("wrong linear part errors") {
    PlanarSystem bad = parse_system("params:\ndx = -2*y\ndy = x\n");
    CHECK_THROWS_AS(focal_values(bad, 4), Error);
    CHECK_THROWS_AS(lyapunov_l0(bad), Error);
    PlanarSystem off = parse_system("params:\ndx = x - y\ndy = x - y\n");
    CHECK_THROWS_AS(focal_values(off, 4), Error);
}

TEST_CASE("symmetric systems have identically vanishing focal values") {
    std::mt19937_64 rng(111213);
    std::uniform_int_distribution<int> deg(0, 3);
    SymTab t = SymbolTable::make({});
    for (int trial = 0; trial < 25; ++trial) {
        // q(x, -y) = q(x, y), p = -y: x-axis reversible Kukles system
        PlanarPoly q = PlanarPoly::var_x(t);
        for (int terms = 0; terms < 4; ++terms) {
            int i = deg(rng), j = 2 * deg(rng);
            if (i + j < 2) continue;
            q.add_term({i, j}, ParamPoly::constant(t, test_util::random_rat(rng)));
        }
        PlanarSystem sys{t, -PlanarPoly::var_y(t), q, {}};
        auto cert = focal_values(sys, 12);
        CHECK(cert.residual_ok);
        for (std::size_t m = 1; m < cert.etas.size(); ++m) CHECK(cert.etas[m].is_zero());
    }
}

TEST_CASE("deg4 centers: c=0 with a=0 or b=0 kill all focal values to order 12") {
    for (const char* other : {"a", "b"}) {
        PlanarSystem sys = kukles_deg4().substitute(
            {{"c", ParamPoly::constant(Rat(0))}, {other, ParamPoly::constant(Rat(0))}});
        auto cert = focal_values(sys, 12);
        CHECK(cert.residual_ok);
        for (std::size_t m = 1; m < cert.etas.size(); ++m) CHECK(cert.etas[m].is_zero());
    }
}

TEST_CASE("weak focus order") {
    PlanarSystem sys = kukles_deg4().substitute({{"a", ParamPoly::constant(Rat(1))},
                                                 {"b", ParamPoly::constant(Rat(1))},
                                                 {"c", ParamPoly::constant(Rat(0))}});
    auto r = weak_focus_order(sys, 3);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == 1);
    CHECK(r.first_nonzero.constant_value() == rat(-1, 8));

    PlanarSystem center = kukles_deg4().substitute({{"a", ParamPoly::constant(Rat(0))},
                                                    {"b", ParamPoly::constant(Rat(1))},
                                                    {"c", ParamPoly::constant(Rat(0))}});
    auto rc = weak_focus_order(center, 4);
    CHECK(!rc.order.has_value());
    CHECK(rc.checked_up_to == 4);

    PlanarSystem lin = parse_system("params:\ndx = -y\ndy = x\n");
    CHECK(!weak_focus_order(lin, 4).order.has_value());
}

TEST_CASE("lyapunov_chain on the degree-4 family") {
    // L(0) = -c/2 annihilated by c = 0, then L(1) = -ab/8 is reported
    PlanarSystem sys = kukles_deg4();
    std::vector<ChainStep> steps{{0, {{"c", ParamPoly::constant(Rat(0))}}}};
    FocalSequence seq = lyapunov_chain(sys, steps, 2);
    CHECK(seq.residual_ok);
    REQUIRE(seq.quantities.size() == 2);
    CHECK(seq.quantities[0].k == 0);
    CHECK(seq.quantities[1].k == 1);
    CHECK(seq.quantities[1].primitive == parse_param("-a*b", sys.params));
}

TEST_CASE("lyapunov_chain rejects a non-annihilating binding") {
    PlanarSystem sys = kukles_odd(3);
    std::vector<ChainStep> steps{
        {0, {{"b00", ParamPoly::constant(Rat(0))}}},
        {1, {{"b40", ParamPoly::constant(Rat(0))}}},  // does not kill L(1)
    };
    try {
        lyapunov_chain(sys, steps, 1);
        FAIL("expected SubstitutionDoesNotVanish");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SubstitutionDoesNotVanish);
    }
}

TEST_CASE("example 5.2 chain prefix: quantities through L(4)") {
    PlanarSystem sys = kukles_odd(3);
    SymTab t = sys.params;
    std::vector<ChainStep> steps{
        {0, {{"b00", ParamPoly::zero(t)}}},
        {1, {{"b20", parse_param("-3*b02", t)}}},
        {2, {{"b22", parse_param("-5*b04 - b40", t)}}},
        {3, {{"b42", parse_param("1/3*(6*b02^3 - 35*b06 - 5*b24 - 5*b60)", t)}}},
    };
    FocalSequence seq = lyapunov_chain(sys, steps, 1);
    CHECK(seq.residual_ok);
    REQUIRE(seq.quantities.size() == 5);
    CHECK(proportional(seq.quantities[1].primitive, parse_param("3*b02 + b20", t)));
    CHECK(proportional(seq.quantities[2].primitive, parse_param("5*b04 + b22 + b40", t)));
    CHECK(proportional(seq.quantities[3].primitive,
                       parse_param("-6*b02^3 + 35*b06 + 5*b24 + 3*b42 + 5*b60", t)));
    CHECK(proportional(seq.quantities[4].primitive, parse_param("b02^2*(2*b02 - b04 + b40)", t)));
    // contents match the reference denominators
    CHECK(seq.quantities[1].content == rat(1, 8));
    CHECK(seq.quantities[2].content == rat(1, 16));
    CHECK(seq.quantities[3].content == rat(1, 128));
    CHECK(seq.quantities[4].content == rat(3, 128));
}

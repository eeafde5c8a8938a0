#include <catch2/catch_amalgamated.hpp>

#include "cmkdv/jet.hpp"
#include "cmkdv/model.hpp"

#include <cmath>
#include <random>

using namespace cmkdv;

namespace {

JetPoly u(int comp, int order = 0) { return JetPoly::u(comp, order); }

// Smooth test profile (u1, u2)(x) with analytic derivatives, used as the
// independent oracle for total-derivative checks.
JetPoint profile_point(double x, int max_order) {
    JetPoint pt = JetPoint::zeros(max_order);
    pt.x = x;
    for (int k = 0; k <= max_order; ++k) {
        // d^k/dx^k of sin(a x): a^k sin(a x + k pi/2); likewise for cos.
        double a = 1.3, b = 0.7;
        pt.u(0, k) = std::pow(a, k) * std::sin(a * x + k * M_PI / 2.0);
        pt.u(1, k) = 0.5 * std::pow(b, k) * std::cos(b * x + k * M_PI / 2.0);
    }
    return pt;
}

std::mt19937 rng(20240817);

Rational random_rat() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    return rat(num(rng), den(rng));
}

JetPoly random_poly(int max_order, int max_degree, bool with_tx = true) {
    std::uniform_int_distribution<int> nterms(1, 6), ord(0, max_order), deg(1, max_degree),
        txe(0, 2);
    JetPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        int d = deg(rng);
        for (int j = 0; j < d; ++j) {
            std::uniform_int_distribution<int> comp(0, 1);
            m.e[gen_u(comp(rng), ord(rng))] += 1;
        }
        if (with_tx) {
            m.e[kGenT] = static_cast<std::uint8_t>(txe(rng) / 2);
            m.e[kGenX] = static_cast<std::uint8_t>(txe(rng) / 2);
        }
        Rational c = random_rat();
        if (c.is_zero()) c = rat(1);
        p.add_term(m, c);
    }
    return p;
}

}  // namespace

TEST_CASE("total x derivative basics") {
    CHECK(total_x_derivative(u(0)) == u(0, 1));
    CHECK(total_x_derivative(u(0) * u(0)) == rat(2) * (u(0) * u(0, 1)));
    // D_x(u1*u1_xx + u1_x^2) = u1*u1_xxx + 3 u1_x*u1_xx
    JetPoly p = u(0) * u(0, 2) + u(0, 1) * u(0, 1);
    JetPoly expect = u(0) * u(0, 3) + rat(3) * (u(0, 1) * u(0, 2));
    CHECK(total_x_derivative(p) == expect);
}

TEST_CASE("total x derivative matches finite differences along a profile") {
    JetPoly p = u(0) * u(0, 2) + u(0, 1) * u(0, 1) + u(1) * u(0, 1);
    JetPoly dp = total_x_derivative(p);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        double x0 = xs(rng);
        double h = 1e-5;
        double fd = (p.eval(profile_point(x0 + h, 3)) - p.eval(profile_point(x0 - h, 3))) / (2 * h);
        double analytic = dp.eval(profile_point(x0, 3));
        CHECK(std::abs(fd - analytic) < 1e-7);
    }
}

TEST_CASE("x and t dependence in total x derivative") {
    // D_x(x*u1) = u1 + x*u1_x, D_x(t) = 0
    CHECK(total_x_derivative(JetPoly::x() * u(0)) == u(0) + JetPoly::x() * u(0, 1));
    CHECK(total_x_derivative(JetPoly::t()).is_zero());
    CHECK(total_x_derivative(JetPoly::x()) == JetPoly(rat(1)));
}

TEST_CASE("cap overflow is loud") {
    JetPoly top = u(0, kJetCap);
    CHECK_THROWS_AS(total_x_derivative(top), CapOverflow);
    JetPoly deep = u(0, 5);
    CHECK_THROWS_AS(total_t_derivative(deep, Coefficients(0, 0, 0, 0)), CapOverflow);
}

TEST_CASE("total t derivative via the equation") {
    Coefficients airy(0, 0, 0, 0);
    CHECK(total_t_derivative(u(0), airy) == -u(0, 3));
    CHECK(total_t_derivative(u(0) * u(0), airy) == rat(-2) * (u(0) * u(0, 3)));

    // alpha=2, beta=1 (real): u1_t = -(3u1^2+u2^2)u1_x - 2u1u2*u2_x - u1_xxx
    Coefficients c(2, 0, 1, 0);
    JetPoly dt_u1 = total_t_derivative(u(0), c);
    JetPoly expect = -(rat(3) * (u(0) * u(0)) + u(1) * u(1)) * u(0, 1)
                     - rat(2) * (u(0) * u(1) * u(1, 1)) - u(0, 3);
    CHECK(dt_u1 == expect);

    // spot-check against a direct numeric evaluation of the component equation
    JetPoint pt = profile_point(0.37, 3);
    double u1 = pt.u(0, 0), u2 = pt.u(1, 0), u1x = pt.u(0, 1), u2x = pt.u(1, 1),
           u1xxx = pt.u(0, 3);
    double direct = -((2.0 + 1.0) * u1 * u1 + (2.0 - 1.0) * u2 * u2) * u1x
                    - 2.0 * 1.0 * u1 * u2 * u2x - u1xxx;
    CHECK(dt_u1.eval(pt) == Catch::Approx(direct).epsilon(1e-13));
}

TEST_CASE("euler operator") {
    CHECK(euler_operator(u(0) * u(0, 2) + u(0, 1) * u(0, 1), 0).is_zero());
    JetPoly quartic = Rational(1, 2) * (u(0) * u(0) * u(0) * u(0));
    CHECK(euler_operator(quartic, 0) == rat(2) * (u(0) * u(0) * u(0)));
    CHECK(euler_operator(rat(-3) * (u(0, 1) * u(0, 1)), 0) == rat(6) * u(0, 2));
}

TEST_CASE("is_total_x_derivative") {
    JetPoly cubic = u(0) * u(0) * u(0);
    CHECK(is_total_x_derivative(total_x_derivative(cubic)));
    CHECK_FALSE(is_total_x_derivative(u(0) * u(0)));

    // D_t(u1^2+u2^2) is a total x-derivative when Im alpha = Im beta
    Coefficients c(2, 0, 1, 0);
    JetPoly momentum = u(0) * u(0) + u(1) * u(1);
    CHECK(is_total_x_derivative(total_t_derivative(momentum, c)));
    // ... and is not in a case violating the admissibility condition
    Coefficients bad(2, 1, 1, 0);
    CHECK_FALSE(is_total_x_derivative(total_t_derivative(momentum, bad)));
}

TEST_CASE("invert total x derivative") {
    CHECK(invert_total_x_derivative(rat(2) * (u(0) * u(0, 1))) == u(0) * u(0));
    CHECK(invert_total_x_derivative(u(0, 1) * u(0, 2)) == Rational(1, 2) * (u(0, 1) * u(0, 1)));
    // explicit x dependence
    JetPoly p = u(0) + JetPoly::x() * u(0, 1);
    JetPoly q = invert_total_x_derivative(p);
    CHECK(total_x_derivative(q) == p);
    // pure (t,x) part integrates in x
    JetPoly tx = JetPoly::t() * JetPoly::x();
    JetPoly qtx = invert_total_x_derivative(tx);
    CHECK(total_x_derivative(qtx) == tx);

    CHECK_THROWS_AS(invert_total_x_derivative(u(0) * u(0)), NotExact);
    CHECK_THROWS_AS(invert_total_x_derivative(u(0, 3) * u(1, 3)), NotExact);
}

TEST_CASE("round trip on the image of D_x") {
    for (int trial = 0; trial < 60; ++trial) {
        JetPoly q0 = random_poly(3, 4);
        JetPoly p = total_x_derivative(q0);
        JetPoly q = invert_total_x_derivative(p);
        CHECK(total_x_derivative(q) == p);
    }
}

TEST_CASE("scale substitute") {
    CHECK(scale_substitute(u(0) * u(0), homotopy_weight) == Rational(1, 2) * (u(0) * u(0)));
    JetPoly cubic = u(0) * u(1, 1) * u(0, 2);
    CHECK(scale_substitute(cubic, homotopy_weight) == Rational(1, 3) * cubic);
    CHECK_THROWS_AS(scale_substitute(JetPoly(rat(1)), homotopy_weight), std::domain_error);
    // explicit t, x exponents do not count toward the jet degree
    JetPoly tx_term = JetPoly::t() * u(0);
    CHECK(scale_substitute(tx_term, homotopy_weight) == tx_term);
}

TEST_CASE("evaluation") {
    JetPoint pt = JetPoint::zeros(1);
    pt.u(0, 0) = 3.0;
    CHECK((u(0) * u(0)).eval(pt) == 9.0);
    pt.x = 2.0;
    pt.u(0, 0) = -1.0;
    CHECK((JetPoly::x() * u(0)).eval(pt) == -2.0);
    CHECK(JetPoly().eval(pt) == 0.0);
}

TEST_CASE("linearity of the operators") {
    Coefficients c(3, 0, 1, 0);
    for (int trial = 0; trial < 20; ++trial) {
        JetPoly p = random_poly(4, 3), q = random_poly(4, 3);
        Rational a = random_rat(), b = random_rat();
        JetPoly combo = a * p + b * q;
        CHECK(total_x_derivative(combo) == a * total_x_derivative(p) + b * total_x_derivative(q));
        CHECK(total_t_derivative(combo, c)
              == a * total_t_derivative(p, c) + b * total_t_derivative(q, c));
        // euler on general order-4 polynomials can need jet order 8, beyond
        // the cap; order <= 3 always fits
        JetPoly pe = random_poly(3, 3), qe = random_poly(3, 3);
        JetPoly ce = a * pe + b * qe;
        CHECK(euler_operator(ce, 0) == a * euler_operator(pe, 0) + b * euler_operator(qe, 0));
        CHECK(euler_operator(ce, 1) == a * euler_operator(pe, 1) + b * euler_operator(qe, 1));
    }
}

TEST_CASE("euler annihilates total x derivatives") {
    for (int trial = 0; trial < 100; ++trial) {
        JetPoly p = random_poly(3, 4);
        JetPoly dp = total_x_derivative(p);
        CHECK(euler_operator(dp, 0).is_zero());
        CHECK(euler_operator(dp, 1).is_zero());
    }
}

TEST_CASE("D_t and D_x commute") {
    Coefficients c(2, 1, 1, 1);
    for (int trial = 0; trial < 20; ++trial) {
        JetPoly p = random_poly(3, 3);
        CHECK(total_t_derivative(total_x_derivative(p), c)
              == total_x_derivative(total_t_derivative(p, c)));
    }
}

TEST_CASE("eval is a ring morphism") {
    std::uniform_real_distribution<double> xs(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        JetPoly p = random_poly(2, 2), q = random_poly(2, 2);
        JetPoint pt = profile_point(xs(rng), 4);
        pt.t = xs(rng);
        double lhs = (p * q).eval(pt);
        double rhs = p.eval(pt) * q.eval(pt);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        CHECK(std::abs((p + q).eval(pt) - (p.eval(pt) + q.eval(pt)))
              <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("canonical serialization") {
    JetPoly p = rat(2) * (u(0) * u(0, 1)) - Rational(1, 3) * (JetPoly::x() * u(1));
    CHECK(json_string(p)
          == "{\"cap\":7,\"terms\":[[\"u1*u1_x\",\"2\"],[\"x*u2\",\"-1/3\"]]}");
    CHECK(json_string(JetPoly()) == "{\"cap\":7,\"terms\":[]}");
    CHECK(monomial_string(Monomial{}) == "1");
    // high orders use the numeric suffix
    CHECK(gen_name(gen_u(0, 5)) == "u1_x5");
    CHECK(gen_name(gen_u(1, 2)) == "u2_xx");
}

TEST_CASE("complex jet polynomials") {
    ComplexJetPoly U = ComplexJetPoly::u();
    ComplexJetPoly Ub = ComplexJetPoly::u_bar();
    // u * conj(u) = u1^2 + u2^2, purely real
    ComplexJetPoly mom = U * Ub;
    CHECK(mom.re == u(0) * u(0) + u(1) * u(1));
    CHECK(mom.im.is_zero());
    // i*(u_x conj(u) - conj(u)_x u) is purely real: 2(u2 u1_x - u1 u2_x)
    ComplexJetPoly tw = ComplexJetPoly::i_unit()
                        * (ComplexJetPoly::u(1) * Ub - ComplexJetPoly::u_bar(1) * U);
    CHECK(tw.im.is_zero());
    CHECK(tw.re == rat(2) * (u(1) * u(0, 1)) - rat(2) * (u(0) * u(1, 1)));
}

TEST_CASE("wirtinger derivatives") {
    ComplexJetPoly U = ComplexJetPoly::u();
    ComplexJetPoly Ub = ComplexJetPoly::u_bar();
    ComplexJetPoly p = U * U * Ub;
    // d(u^2 ubar)/du = 2 u ubar, d(u^2 ubar)/dubar = u^2
    CHECK(partial_u(p, 0) == rat(2) * (U * Ub));
    CHECK(partial_u_bar(p, 0) == U * U);
    // d/du_x of u_x * conj(u_x) = conj(u_x)
    ComplexJetPoly px = ComplexJetPoly::u(1) * ComplexJetPoly::u_bar(1);
    CHECK(partial_u(px, 1) == ComplexJetPoly::u_bar(1));
    CHECK(partial_u_bar(px, 1) == ComplexJetPoly::u(1));
}

#include <catch2/catch_amalgamated.hpp>

#include "cmkdv/jet.hpp"
#include "cmkdv/reduction.hpp"

#include <cmath>
#include <complex>

using namespace cmkdv;
using C = std::complex<double>;

namespace {

// Chebyshev-clustered sample points on [-10, 10], optionally excluding a
// neighbourhood of the origin (cusps, poles).
std::vector<double> sample_xi(int n = 100, double exclude = 0.0) {
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
        double x = 10.0 * std::cos(M_PI * (i + 0.5) / n);
        if (std::abs(x) > exclude) xs.push_back(x);
    }
    return xs;
}

void check_solitary_residuals(const TravellingProfile& prof, const Abc& abc_val, double tol,
                              double exclude = 0.0) {
    REQUIRE(std::abs(abc_val.A.imag()) < 1e-14);
    REQUIRE(std::abs(abc_val.B.imag()) < 1e-14);
    REQUIRE(std::abs(abc_val.C.imag()) < 1e-14);
    for (double xi : sample_xi(100, exclude)) {
        OdeResiduals r = ode_residuals(prof.jet(xi), abc_val.A.real(), abc_val.B.real(),
                                       abc_val.C.real(), 0.0, 0.0);
        CHECK(std::abs(r.r3) < tol);
        CHECK(std::abs(r.r2) < tol);
        CHECK(std::abs(r.r1) < tol);
    }
}

}  // namespace

TEST_CASE("abc coefficients") {
    Coefficients c1(CRat(2, 1), CRat(1, -1));
    AbcExact e = abc_exact(c1, CRat(1, 0), rat(1), rat(1));
    CHECK(e.A == CRat(2, 0));
    CHECK(e.B == CRat(6, 0));
    CHECK(e.C == CRat(3, 0));
    CHECK(realness_case(c1, C(1.0, 0.0)) == RealnessCase::OffsetReal);

    // a = 0 gives A = -c, B = 0, C = (alpha+beta)|b|^2
    Abc z = abc(c1, C(0.0), 2.0, 1.5);
    CHECK(z.A == C(-1.5));
    CHECK(z.B == C(0.0));
    CHECK(std::abs(z.C - C(12.0)) < 1e-14);
    CHECK(kink_case(c1, C(0.0)) == KinkCase::OffsetZero);

    // imaginary offset with beta = 0, alpha real: A real exactly
    Coefficients hir(2, 0, 0, 0);
    AbcExact ei = abc_exact(hir, CRat(0, 1), rat(1), rat(2));
    CHECK(ei.A.im.is_zero());
    CHECK(ei.A == CRat(0, 0));  // alpha|a|^2 - c = 2 - 2
    CHECK(ei.B == CRat(0, 0));
    CHECK(realness_case(hir, C(0.0, 1.0)) == RealnessCase::OffsetImaginary);
    CHECK(kink_case(hir, C(0.0, 1.0)) == KinkCase::OffsetImaginary);

    CHECK(realness_case(Coefficients(1, 1, 0, 0), C(0.0, 1.0)) == RealnessCase::None);
}

TEST_CASE("four-branch solitary profile") {
    // (A,B,C) = (-1,0,6): f = sech(xi)
    SolitaryBranch b1;
    for (double xi : {-2.0, -0.3, 0.0, 1.7})
        CHECK(profile_solitary(-1, 0, 6, b1, xi) == Catch::Approx(1.0 / std::cosh(xi)).epsilon(1e-14));

    // (A,B,C) = (-1,0,0): exponentials
    SolitaryBranch b2{false, true, true, -1};
    CHECK(profile_solitary(-1, 0, 0, b2, 0.8) == Catch::Approx(std::exp(-0.8)).epsilon(1e-14));
    b2.sign = +1;
    CHECK(profile_solitary(-1, 0, 0, b2, 0.8) == Catch::Approx(std::exp(0.8)).epsilon(1e-14));

    // (A,B,C) = (0,0,6) violates the sign constraint; (0,0,-6) gives 1/xi
    SolitaryBranch b4{true, true, false, +1};
    CHECK_THROWS_AS(profile_solitary(0, 0, 6, b4, 1.0), BranchDomain);
    CHECK(profile_solitary(0, 0, -6, b4, 2.0) == Catch::Approx(0.5).epsilon(1e-14));
    b4.sign = -1;
    CHECK(profile_solitary(0, 0, -6, b4, 2.0) == Catch::Approx(-0.5).epsilon(1e-14));

    CHECK_THROWS_AS(profile_solitary(1, 0, 6, SolitaryBranch{}, 0.0), BranchDomain);
}

TEST_CASE("branch 1 decays at infinity") {
    SolitaryBranch b1;
    for (auto [B, Cc] : {std::pair{0.0, 6.0}, std::pair{1.0, 2.0}}) {
        CHECK(std::abs(profile_solitary(-1, B, Cc, b1, 50.0)) < 1e-15);
        CHECK(std::abs(profile_solitary(-1, B, Cc, b1, -50.0)) < 1e-15);
    }
}

TEST_CASE("kink profile") {
    CHECK(profile_kink(2, -3, 1.3) == Catch::Approx(std::sqrt(2.0) * std::tanh(1.3)).epsilon(1e-14));
    CHECK(profile_kink(2, -3, 0.0) == 0.0);
    CHECK_THROWS_AS(profile_kink(2, 3, 0.0), BranchDomain);
    CHECK_THROWS_AS(profile_kink(-2, -3, 0.0), BranchDomain);
}

TEST_CASE("ode residuals on reference profiles") {
    // sech with (A,B,C) = (-1,0,6), D = E = 0
    SolitaryBranch b1;
    for (double xi : sample_xi()) {
        OdeResiduals r = ode_residuals(profile_solitary_jet(-1, 0, 6, b1, xi), -1, 0, 6, 0, 0);
        CHECK(std::abs(r.r3) < 1e-12);
        CHECK(std::abs(r.r2) < 1e-12);
        CHECK(std::abs(r.r1) < 1e-12);
    }
    // sqrt(2) tanh(xi) with (A,B,C,D,E) = (2,0,-3,-2,0)
    for (double xi : sample_xi()) {
        OdeResiduals r = ode_residuals(profile_kink_jet(2, -3, xi), 2, 0, -3, -2, 0);
        CHECK(std::abs(r.r3) < 1e-12);
        CHECK(std::abs(r.r2) < 1e-12);
        CHECK(std::abs(r.r1) < 1e-12);
    }
    // the zero profile with D = 0
    OdeResiduals z = ode_residuals(0, 0, 0, 0, 1.0, 2.0, 3.0, 0.0, 0.0);
    CHECK(z.r3 == 0.0);
    CHECK(z.r2 == 0.0);
    CHECK(z.r1 == 0.0);
}

TEST_CASE("differentiating the once-integrated residual recovers the third-order one") {
    double A = 0.7, B = -0.4, Cc = 1.1;
    auto f = [](double xi) {
        TaylorR X = TaylorR::variable(xi);
        return sech(X) + 0.3 * tanh(1.2 * X);  // arbitrary smooth non-solution
    };
    double h = 1e-4;
    for (double xi : {-1.3, 0.2, 0.9, 2.4}) {
        double r2p = ode_residuals(f(xi + h), A, B, Cc, 0, 0).r2;
        double r2m = ode_residuals(f(xi - h), A, B, Cc, 0, 0).r2;
        double r3 = ode_residuals(f(xi), A, B, Cc, 0, 0).r3;
        CHECK(std::abs((r2p - r2m) / (2 * h) - r3) < 1e-8);
    }
}

TEST_CASE("kink conditions") {
    KinkConditions ok = kink_conditions(2, 0, -3, -2, 0);
    CHECK(ok.ok);
    CHECK(ok.f0 == Catch::Approx(std::sqrt(2.0)));

    CHECK_FALSE(kink_conditions(2, 0.5, -3, -2, 0).ok);
    KinkConditions undef = kink_conditions(2, 0, 0, -2, 0);
    CHECK_FALSE(undef.ok);
    CHECK(undef.violations[0] == "C = 0 leaves D = (3/2)A^2/C undefined");
    CHECK_FALSE(kink_conditions(2, 0, -3, -2, 0.1).ok);
    CHECK_FALSE(kink_conditions(2, 0, 3, 2, 0).ok);   // -3A/C < 0
    CHECK_FALSE(kink_conditions(-2, 0, 3, 2, 0).ok);  // no real trajectory for C > 0
}

TEST_CASE("phase-plane quartic factorization is exact") {
    // with B = E = 0 and D = (3/2)A^2/C: (6/C)(D + A f^2 + C f^4/6) = (f^2 - f0^2)^2
    auto check_pair = [](const Rational& A, const Rational& Cc) {
        JetPoly F = JetPoly::u(0);  // f as a single polynomial variable
        Rational D = Rational(3 * A * A) / (2 * Cc);
        Rational f0sq = Rational(-3 * A) / Cc;
        JetPoly lhs = (Rational(6) / Cc)
                      * (JetPoly(D) + A * (F * F) + (Cc / Rational(6)) * (F * F * F * F));
        JetPoly diff = F * F - JetPoly(f0sq);
        CHECK((lhs - diff * diff).is_zero());
    };
    check_pair(rat(2), rat(-3));
    check_pair(rat(5, 3), rat(-7, 2));
    check_pair(rat(-1, 4), rat(9, 5));
}

TEST_CASE("linear phase residuals") {
    Coefficients hirota(1, 0, 0, 0);
    double c = 1.0, k = 0.5;
    double kap = std::sqrt(c + 3 * k * k);
    double w = -(3 * c + 8 * k * k) * k;
    auto soliton = [&](double xi) {
        TaylorR X = TaylorR::variable(xi);
        return std::sqrt(6.0 * (c + 3 * k * k) / 1.0) * sech(kap * X);
    };
    for (double xi : sample_xi()) {
        LinearPhaseResiduals r = linear_phase_residuals(soliton(xi), hirota, c, k, w);
        CHECK(std::abs(r.r1) < 1e-9);
        CHECK(std::abs(r.r2) < 1e-9);
    }

    // k = 0 with Im(alpha+beta) = 0 and w = 0 makes r2 identically zero
    Coefficients real21(2, 0, 1, 0);
    for (double xi : sample_xi(20)) {
        LinearPhaseResiduals r = linear_phase_residuals(soliton(xi), real21, c, 0.0, 0.0);
        CHECK(r.r2 == 0.0);
    }

    // exponential branch: alpha = 3+i, beta = -3+i (sigma = 3), f = e^{+kappa xi}
    // requires k = -kappa/3 from the branch constraints
    Coefficients pk(3, 1, -3, 1);
    double kappa = std::sqrt(1.5), kk = -kappa / 3.0, cc = kappa * kappa - 3 * kk * kk;
    double ww = -(3 * cc + 8 * kk * kk) * kk;
    for (double xi : sample_xi(40)) {
        TaylorR f = exp(kappa * TaylorR::variable(xi));
        LinearPhaseResiduals r = linear_phase_residuals(f, pk, cc, kk, ww);
        double scale = std::max(1.0, std::exp(3 * kappa * xi));
        CHECK(std::abs(r.r1) < 1e-9 * scale);
        CHECK(std::abs(r.r2) < 1e-9 * scale);
    }
}

TEST_CASE("linear phase branch report") {
    BranchReport b1 = linear_phase_branch(Coefficients(1, 0, 0, 0), 1.0, 0.5);
    CHECK(b1.branch == 1);
    CHECK(b1.w == Catch::Approx(-2.5));

    BranchReport none = linear_phase_branch(Coefficients(1, 1, 1, 0), 1.0, 0.5);
    CHECK(none.branch == 0);

    // peakon-type coefficients: sigma = 3, c > 0, k from the side constraints
    Coefficients pk(3, 1, -3, 1);
    double c = 1.0;
    double sg = 3.0;
    double k2 = std::sqrt(c / (sg * sg - 3.0));
    BranchReport b2 = linear_phase_branch(pk, c, sg > 0 ? k2 : -k2);
    CHECK(b2.branch == 2);
    CHECK(b2.sign == -1);  // the decaying side f' = -kappa f
    CHECK(b2.decay_rate == Catch::Approx(std::sqrt(c * sg * sg / (sg * sg - 3.0))));
    REQUIRE(b2.sigma_value.has_value());
    CHECK(*b2.sigma_value == Catch::Approx(3.0));
}

TEST_CASE("solitary profile catalog satisfies the reduced ODEs") {
    Coefficients real21(2, 0, 1, 0);  // alpha2+beta2 = 0, alpha1+beta1 = 3
    Coefficients hirota2(2, 0, 0, 0);
    Coefficients airy_deg(1, 2, -1, -2);  // alpha+beta = 0, alpha != 0
    Coefficients hirota_neg(-2, 0, 0, 0);

    SECTION("rational profile, real offset") {
        TravellingProfile p = prop1_profile(1, real21, 1.5, 0, 0, 1.0);
        check_solitary_residuals(p, abc(real21, p.a, p.bmag, 1.5), 1e-10);
        // matches the A = 0 rational branch
        Abc v = abc(real21, p.a, p.bmag, 1.5);
        SolitaryBranch br{true, false, false, +1};
        for (double xi : sample_xi(20))
            CHECK(p.jet(xi).value()
                  == Catch::Approx(profile_solitary(v.A.real(), v.B.real(), v.C.real(), br, xi))
                         .epsilon(1e-12));
    }
    SECTION("cosh profile, real offset") {
        TravellingProfile p = prop1_profile(2, real21, 1.5, 0.8, 0, 1.0);
        check_solitary_residuals(p, abc(real21, p.a, p.bmag, 1.5), 1e-10);
        Abc v = abc(real21, p.a, p.bmag, 1.5);
        SolitaryBranch br;  // generic cosh branch
        for (double xi : sample_xi(20))
            CHECK(p.jet(xi).value()
                  == Catch::Approx(profile_solitary(v.A.real(), v.B.real(), v.C.real(), br, xi))
                         .epsilon(1e-12));
    }
    SECTION("cusp profile") {
        TravellingProfile p = prop1_profile(3, airy_deg, 2.0, 0.6, 0, 1.0);
        check_solitary_residuals(p, abc(airy_deg, p.a, p.bmag, 2.0), 1e-10, 0.2);
    }
    SECTION("rational profile, rotated offset") {
        TravellingProfile p = prop1_profile(4, hirota2, 1.2, 0, 0.9, 1.0);
        check_solitary_residuals(p, abc(hirota2, p.a, p.bmag, 1.2), 1e-10);
    }
    SECTION("cosh profile, rotated offset") {
        for (double Theta : {0.6, -0.6}) {
            TravellingProfile p = prop1_profile(5, hirota2, 1.2, Theta, 0.9, 1.0);
            check_solitary_residuals(p, abc(hirota2, p.a, p.bmag, 1.2), 1e-10);
        }
    }
    SECTION("blow-up profile") {
        TravellingProfile p = prop1_profile(6, hirota_neg, -1.5, 0, 0, 1.0);
        CHECK(p.singular_at_origin);
        check_solitary_residuals(p, abc(hirota_neg, p.a, p.bmag, -1.5), 1e-9, 0.5);
        // matches the A = B = 0 rational branch
        Abc v = abc(hirota_neg, p.a, p.bmag, -1.5);
        SolitaryBranch br{true, true, false, +1};
        for (double xi : sample_xi(20, 0.5))
            CHECK(p.jet(xi).value()
                  == Catch::Approx(profile_solitary(v.A.real(), v.B.real(), v.C.real(), br, xi))
                         .epsilon(1e-12));
    }
}

TEST_CASE("kink profile catalog satisfies the reduced ODEs") {
    Coefficients hirota_neg(-2, 0, 0, 0);
    Coefficients real_neg(-2, 0, -1, 0);

    auto run = [](const TravellingProfile& p, const Coefficients& co, double c) {
        Abc v = abc(co, p.a, p.bmag, c);
        REQUIRE(std::abs(v.A.imag()) < 1e-14);
        REQUIRE(std::abs(v.B.imag()) < 1e-14);
        double A = v.A.real(), B = v.B.real(), Cc = v.C.real();
        KinkConditions kc = kink_conditions(A, B, Cc, 1.5 * A * A / Cc, 0.0);
        REQUIRE(kc.ok);
        for (double xi : sample_xi()) {
            OdeResiduals r = ode_residuals(p.jet(xi), A, B, Cc, 1.5 * A * A / Cc, 0.0);
            CHECK(std::abs(r.r3) < 1e-10);
            CHECK(std::abs(r.r2) < 1e-10);
            CHECK(std::abs(r.r1) < 1e-10);
        }
        // asymptotic levels +-f0
        CHECK(p.jet(40.0).value() == Catch::Approx(kc.f0).epsilon(1e-12));
        CHECK(p.jet(-40.0).value() == Catch::Approx(-kc.f0).epsilon(1e-12));
    };

    run(prop2_profile(1, hirota_neg, -1.0, 0.7, 1.0), hirota_neg, -1.0);
    run(prop2_profile(2, real_neg, -2.0, 0, 1.0), real_neg, -2.0);

    // profile 1 coincides with the tanh primitive at its ABC
    TravellingProfile p1 = prop2_profile(1, hirota_neg, -1.0, 0.7, 1.0);
    Abc v = abc(hirota_neg, p1.a, p1.bmag, -1.0);
    for (double xi : sample_xi(20))
        CHECK(p1.jet(xi).value()
              == Catch::Approx(profile_kink(v.A.real(), v.C.real(), xi)).margin(1e-12));
}

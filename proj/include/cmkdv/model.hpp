#ifndef CMKDV_MODEL_HPP
#define CMKDV_MODEL_HPP

#include "cmkdv/jet.hpp"
#include "cmkdv/rational.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmkdv {

/// Coefficients of the equation family u_t + alpha*conj(u)*u*u_x
/// + beta*u^2*conj(u)_x + u_xxx = 0, after gamma has been scaled to 1.
/// Held exactly; every case predicate downstream is exact rational equality.
struct Coefficients {
    CRat alpha;
    CRat beta;

    Coefficients() = default;
    Coefficients(CRat a, CRat b) : alpha(std::move(a)), beta(std::move(b)) {}
    Coefficients(long long a1, long long a2, long long b1, long long b2)
        : alpha(a1, a2), beta(b1, b2) {}

    std::complex<double> alpha_c() const { return {to_double(alpha.re), to_double(alpha.im)}; }
    std::complex<double> beta_c() const { return {to_double(beta.re), to_double(beta.im)}; }
};

/// Result of normalizing (alpha, beta, gamma) to gamma = 1 by rescaling
/// t -> sqrt(gamma) t, x -> sqrt(gamma) x.
struct ScaleReport {
    Rational gamma;
    double tx_scale;  // sqrt(gamma)
};

inline std::pair<Coefficients, ScaleReport> normalize(const CRat& alpha, const CRat& beta,
                                                      const Rational& gamma) {
    if (gamma <= 0) throw std::domain_error("gamma must be real and positive");
    return {Coefficients(alpha, beta), ScaleReport{gamma, std::sqrt(to_double(gamma))}};
}

/// Coefficient case flags gating solution families and conservation laws.
/// All predicates are exact; no float tolerances.
struct CaseFlags {
    bool momentum_ok = false;    // Im alpha = Im beta
    bool energy_ok = false;      // Im alpha = Im beta = 0
    bool covmass_ok = false;     // alpha = 2 beta
    bool covmom_ok = false;      // alpha = 3 beta
    bool twist_ok = false;       // Im alpha = 0, beta = 0
    bool sech_case = false;      // Im(alpha + beta) = 0
    bool airy_degenerate = false;  // alpha + beta = 0
    bool peakon_case = false;    // |alpha| = |beta| with sigma well-defined and nonzero
    bool hirota = false;         // Im alpha = 0, beta = 0
    bool sasa_satsuma = false;   // alpha = 3 beta, both real
};

/// sigma = Re(alpha-beta)/Im(alpha+beta) = -Im(alpha-beta)/Re(alpha+beta),
/// evaluated exactly. Either quotient may be vacuous (0/0); if both are,
/// or one is n/0 with n != 0, sigma is undefined.
struct SigmaResult {
    enum class Status { Defined, OneSided, Undefined, Inconsistent, PreconditionFailed };
    Status status = Status::Undefined;
    Rational value;  // valid for Defined and OneSided
    bool q1_defined = false;  // Re(a-b)/Im(a+b)
    bool q2_defined = false;  // -Im(a-b)/Re(a+b)

    bool usable() const { return status == Status::Defined || status == Status::OneSided; }
};

inline SigmaResult sigma(const Coefficients& c) {
    SigmaResult out;
    const CRat& a = c.alpha;
    const CRat& b = c.beta;
    if (a.norm2() != b.norm2()) {
        out.status = SigmaResult::Status::PreconditionFailed;
        return out;
    }
    Rational n1 = a.re - b.re, d1 = a.im + b.im;
    Rational n2 = -(a.im - b.im), d2 = a.re + b.re;
    std::optional<Rational> q1, q2;
    if (!d1.is_zero()) {
        q1 = n1 / d1;
        out.q1_defined = true;
    } else if (!n1.is_zero()) {
        out.status = SigmaResult::Status::Undefined;  // n/0
        return out;
    }
    if (!d2.is_zero()) {
        q2 = n2 / d2;
        out.q2_defined = true;
    } else if (!n2.is_zero()) {
        out.status = SigmaResult::Status::Undefined;
        return out;
    }
    if (q1 && q2) {
        if (*q1 != *q2) {
            out.status = SigmaResult::Status::Inconsistent;
            return out;
        }
        out.status = SigmaResult::Status::Defined;
        out.value = *q1;
    } else if (q1 || q2) {
        out.status = SigmaResult::Status::OneSided;
        out.value = q1 ? *q1 : *q2;
    } else {
        out.status = SigmaResult::Status::Undefined;  // both 0/0
    }
    return out;
}

inline CaseFlags classify(const Coefficients& c) {
    const Rational &a1 = c.alpha.re, &a2 = c.alpha.im;
    const Rational &b1 = c.beta.re, &b2 = c.beta.im;
    CaseFlags f;
    f.momentum_ok = (a2 == b2);
    f.energy_ok = a2.is_zero() && b2.is_zero();
    f.covmass_ok = (c.alpha == CRat(rat(2)) * c.beta);
    f.covmom_ok = (c.alpha == CRat(rat(3)) * c.beta);
    f.twist_ok = a2.is_zero() && c.beta.is_zero();
    f.sech_case = Rational(a2 + b2).is_zero();
    f.airy_degenerate = Rational(a1 + b1).is_zero() && f.sech_case;
    SigmaResult s = sigma(c);
    f.peakon_case = s.usable() && !s.value.is_zero();
    f.hirota = f.twist_ok;
    f.sasa_satsuma = f.covmom_ok && f.energy_ok;
    return f;
}

/// Human-readable witness predicates for the classify report.
struct FlagWitness {
    std::string flag;
    bool value;
    std::string predicate;
};

inline std::vector<FlagWitness> classify_witnesses(const Coefficients& c) {
    CaseFlags f = classify(c);
    auto s = [](const Rational& r) { return rat_string(r); };
    const Rational &a1 = c.alpha.re, &a2 = c.alpha.im;
    const Rational &b1 = c.beta.re, &b2 = c.beta.im;
    return {
        {"momentum_ok", f.momentum_ok, "Im(alpha) = " + s(a2) + " == Im(beta) = " + s(b2)},
        {"energy_ok", f.energy_ok, "Im(alpha) = " + s(a2) + " == 0 and Im(beta) = " + s(b2) + " == 0"},
        {"covmass_ok", f.covmass_ok, "alpha = " + crat_string(c.alpha) + " == 2*beta = " + crat_string(CRat(rat(2)) * c.beta)},
        {"covmom_ok", f.covmom_ok, "alpha = " + crat_string(c.alpha) + " == 3*beta = " + crat_string(CRat(rat(3)) * c.beta)},
        {"twist_ok", f.twist_ok, "Im(alpha) = " + s(a2) + " == 0 and beta = " + crat_string(c.beta) + " == 0"},
        {"sech_case", f.sech_case, "Im(alpha+beta) = " + s(a2 + b2) + " == 0"},
        {"airy_degenerate", f.airy_degenerate, "alpha+beta = " + crat_string(c.alpha + c.beta) + " == 0"},
        {"peakon_case", f.peakon_case, "|alpha|^2 = " + s(c.alpha.norm2()) + " == |beta|^2 = " + s(c.beta.norm2()) + " with sigma defined and nonzero"},
        {"hirota", f.hirota, "Im(alpha) = " + s(a2) + " == 0 and beta = " + crat_string(c.beta) + " == 0"},
        {"sasa_satsuma", f.sasa_satsuma, "alpha = 3*beta with Im(alpha) = " + s(a2) + " == 0, Im(beta) = " + s(b2) + " == 0, Re: " + s(a1) + " vs 3*" + s(b1)},
    };
}

/// Right sides u1_t, u2_t of the component system with gamma = 1:
/// everything but the time derivative moved to the right.
struct PdeRhs {
    JetPoly rhs1;
    JetPoly rhs2;
};

inline PdeRhs pde_rhs(const Coefficients& c) {
    const Rational &a1 = c.alpha.re, &a2 = c.alpha.im;
    const Rational &b1 = c.beta.re, &b2 = c.beta.im;
    JetPoly u1 = JetPoly::u(0), u2 = JetPoly::u(1);
    JetPoly u1x = JetPoly::u(0, 1), u2x = JetPoly::u(1, 1);
    JetPoly u1s = u1 * u1, u2s = u2 * u2, u1u2 = u1 * u2;

    JetPoly rhs1 = -((a1 + b1) * u1s - rat(2) * b2 * u1u2 + (a1 - b1) * u2s) * u1x
                   + ((a2 - b2) * u1s - rat(2) * b1 * u1u2 + (a2 + b2) * u2s) * u2x
                   - JetPoly::u(0, 3);
    JetPoly rhs2 = -((a2 + b2) * u1s + rat(2) * b1 * u1u2 + (a2 - b2) * u2s) * u1x
                   - ((a1 - b1) * u1s + rat(2) * b2 * u1u2 + (a1 + b1) * u2s) * u2x
                   - JetPoly::u(1, 3);
    return {rhs1, rhs2};
}

/// Total t-derivative with u_t eliminated through the equation at the given
/// coefficients.
inline JetPoly total_t_derivative(const JetPoly& p, const Coefficients& c) {
    PdeRhs r = pde_rhs(c);
    return total_t_derivative(p, r.rhs1, r.rhs2);
}
inline ComplexJetPoly total_t_derivative(const ComplexJetPoly& p, const Coefficients& c) {
    PdeRhs r = pde_rhs(c);
    return total_t_derivative(p, r.rhs1, r.rhs2);
}

}  // namespace cmkdv

#endif

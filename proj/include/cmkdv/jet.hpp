#ifndef CMKDV_JET_HPP
#define CMKDV_JET_HPP

#include "cmkdv/rational.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmkdv {

/// Derivative-order cap of the jet space. The 4th-order multiplier
/// verifications need x-derivatives up to 7th order; operations that would
/// need more throw CapOverflow instead of truncating.
inline constexpr int kJetCap = 7;

/// Generators, in fixed order: t, x, u1, u2, u1_x, u2_x, ..., u1^(7), u2^(7).
inline constexpr int kGenT = 0;
inline constexpr int kGenX = 1;
inline constexpr int kNumGen = 2 + 2 * (kJetCap + 1);

constexpr int gen_u(int component, int order) {
    return 2 + 2 * order + component;  // component: 0 -> u1, 1 -> u2
}

struct CapOverflow : std::runtime_error {
    explicit CapOverflow(const std::string& what) : std::runtime_error(what) {}
};
struct NotExact : std::runtime_error {
    explicit NotExact(const std::string& what) : std::runtime_error(what) {}
};

inline std::string gen_name(int g) {
    if (g == kGenT) return "t";
    if (g == kGenX) return "x";
    int k = (g - 2) / 2;
    std::string base = ((g - 2) % 2 == 0) ? "u1" : "u2";
    if (k == 0) return base;
    if (k <= 3) return base + "_" + std::string(k, 'x');
    return base + "_x" + std::to_string(k);
}

/// Exponent record of a single monomial over the fixed generator list.
struct Monomial {
    std::array<std::uint8_t, kNumGen> e{};

    int total_degree() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    /// Degree counting jet generators only (t, x excluded).
    int jet_degree() const {
        int d = 0;
        for (int g = 2; g < kNumGen; ++g) d += e[g];
        return d;
    }
    int jet_order() const {
        for (int g = kNumGen - 1; g >= 2; --g)
            if (e[g]) return (g - 2) / 2;
        return -1;  // no jet generator
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

/// Graded lexicographic order over the fixed generator list; purely
/// internal but fixed so serialization is reproducible.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

/// Evaluation point: t, x and values for u1^(k), u2^(k), k <= K.
struct JetPoint {
    double t = 0.0;
    double x = 0.0;
    std::vector<double> values;  // values[2k + i] = u_{i+1}^(k)

    int max_order() const { return static_cast<int>(values.size()) / 2 - 1; }
    double u(int component, int order) const { return values.at(2 * order + component); }
    double& u(int component, int order) { return values.at(2 * order + component); }
    static JetPoint zeros(int order) {
        JetPoint p;
        p.values.assign(2 * (order + 1), 0.0);
        return p;
    }
};

/// Sparse polynomial in the jet variables with exact rational coefficients.
/// Immutable in spirit: all operations return new values.
class JetPoly {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLex>;

    JetPoly() = default;
    explicit JetPoly(Rational constant) {
        if (!constant.is_zero()) terms_[Monomial{}] = std::move(constant);
    }

    static JetPoly variable(int gen, int exponent = 1) {
        JetPoly p;
        if (gen < 0 || gen >= kNumGen) throw std::out_of_range("generator index");
        Monomial m;
        m.e[gen] = static_cast<std::uint8_t>(exponent);
        p.terms_[m] = rat(1);
        return p;
    }
    static JetPoly t() { return variable(kGenT); }
    static JetPoly x() { return variable(kGenX); }
    static JetPoly u(int component, int order = 0) {
        if (order > kJetCap) throw CapOverflow("jet order beyond cap " + std::to_string(kJetCap));
        return variable(gen_u(component, order));
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int jet_order() const {
        int m = -1;
        for (const auto& [mono, c] : terms_) m = std::max(m, mono.jet_order());
        return m;
    }
    int max_jet_degree() const {
        int d = 0;
        for (const auto& [mono, c] : terms_) d = std::max(d, mono.jet_degree());
        return d;
    }
    bool has_jet_variables() const { return jet_order() >= 0; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    JetPoly& operator+=(const JetPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    JetPoly& operator-=(const JetPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    JetPoly& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
    friend JetPoly operator-(JetPoly a) { return a *= rat(-1); }
    friend JetPoly operator*(JetPoly a, const Rational& s) { return a *= s; }
    friend JetPoly operator*(const Rational& s, JetPoly a) { return a *= s; }

    friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
        JetPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int g = 0; g < kNumGen; ++g) {
                    int e = ma.e[g] + mb.e[g];
                    if (e > 255) throw std::overflow_error("monomial exponent overflow");
                    m.e[g] = static_cast<std::uint8_t>(e);
                }
                r.add_term(m, ca * cb);
            }
        return r;
    }

    friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.terms_ == b.terms_; }

    /// Partial derivative with respect to a single generator.
    JetPoly partial(int gen) const {
        JetPoly r;
        for (const auto& [m, c] : terms_) {
            if (!m.e[gen]) continue;
            Monomial d = m;
            d.e[gen] -= 1;
            r.add_term(d, c * rat(m.e[gen]));
        }
        return r;
    }

    /// Polynomial antiderivative with respect to a single generator.
    JetPoly antiderivative(int gen) const {
        JetPoly r;
        for (const auto& [m, c] : terms_) {
            Monomial d = m;
            if (d.e[gen] == 255) throw std::overflow_error("monomial exponent overflow");
            d.e[gen] += 1;
            r.add_term(d, c / rat(d.e[gen]));
        }
        return r;
    }

    double eval(const JetPoint& pt) const {
        if (jet_order() > pt.max_order())
            throw std::invalid_argument("JetPoint does not cover all generators of the polynomial");
        double acc = 0.0;
        for (const auto& [m, c] : terms_) {
            double term = to_double(c);
            if (m.e[kGenT]) term *= std::pow(pt.t, m.e[kGenT]);
            if (m.e[kGenX]) term *= std::pow(pt.x, m.e[kGenX]);
            for (int g = 2; g < kNumGen; ++g)
                if (m.e[g]) term *= std::pow(pt.values[g - 2], m.e[g]);
            acc += term;
        }
        return acc;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

  private:
    TermMap terms_;
};

/// Total x-derivative: t' = 0, x' = 1, (u_i^(k))' = u_i^(k+1).
inline JetPoly total_x_derivative(const JetPoly& p) {
    if (p.jet_order() >= kJetCap)
        throw CapOverflow("total_x_derivative would exceed jet order cap " + std::to_string(kJetCap));
    JetPoly r;
    for (const auto& [m, c] : p.terms()) {
        // d(x^e)/dx contribution
        if (m.e[kGenX]) {
            Monomial d = m;
            d.e[kGenX] -= 1;
            r.add_term(d, c * rat(m.e[kGenX]));
        }
        for (int g = 2; g < kNumGen; ++g) {
            if (!m.e[g]) continue;
            Monomial d = m;
            d.e[g] -= 1;
            d.e[g + 2] += 1;  // u_i^(k) -> u_i^(k+1)
            r.add_term(d, c * rat(m.e[g]));
        }
    }
    return r;
}

inline JetPoly total_x_derivative(const JetPoly& p, int times) {
    JetPoly r = p;
    for (int i = 0; i < times; ++i) r = total_x_derivative(r);
    return r;
}

/// Total t-derivative with u_{it} eliminated through the evolution right
/// sides rhs1 = u1_t, rhs2 = u2_t (each a jet polynomial of order 3).
inline JetPoly total_t_derivative(const JetPoly& p, const JetPoly& rhs1, const JetPoly& rhs2) {
    int order = p.jet_order();
    if (order + 3 > kJetCap)
        throw CapOverflow("total_t_derivative needs order " + std::to_string(order + 3) +
                          " > cap " + std::to_string(kJetCap));
    JetPoly r = p.partial(kGenT);
    std::array<const JetPoly*, 2> rhs{&rhs1, &rhs2};
    for (int comp = 0; comp < 2; ++comp) {
        JetPoly dk = *rhs[comp];  // D_x^k(rhs_comp), k = 0 upward
        for (int k = 0; k <= order; ++k) {
            JetPoly coeff = p.partial(gen_u(comp, k));
            if (!coeff.is_zero()) r += coeff * dk;
            if (k < order) dk = total_x_derivative(dk);
        }
    }
    return r;
}

/// Euler operator (variational derivative) with respect to one component:
/// sum_k (-D_x)^k (dp/du_i^(k)). Annihilates exactly the total x-derivatives.
inline JetPoly euler_operator(const JetPoly& p, int component) {
    JetPoly r;
    int order = p.jet_order();
    for (int k = 0; k <= order; ++k) {
        JetPoly term = p.partial(gen_u(component, k));
        if (term.is_zero()) continue;
        term = total_x_derivative(term, k);
        if (k % 2) term *= rat(-1);
        r += term;
    }
    return r;
}

/// True iff p is a total x-derivative of some jet polynomial: both Euler
/// components vanish identically (exact zero polynomials).
inline bool is_total_x_derivative(const JetPoly& p) {
    return euler_operator(p, 0).is_zero() && euler_operator(p, 1).is_zero();
}

/// Inverts D_x on its image: returns q with D_x(q) = p exactly. Works level
/// by level from the top jet order; a pure (t,x) remainder is handled by
/// explicit x-integration. Throws NotExact if p is not in the image.
inline JetPoly invert_total_x_derivative(const JetPoly& p) {
    JetPoly q;
    JetPoly r = p;
    while (true) {
        int m = r.jet_order();
        if (m <= 0) break;
        // Order-m part of an exact image is linear in the top derivatives,
        // with cofactors of order < m satisfying the closure condition.
        JetPoly a1 = r.partial(gen_u(0, m));
        JetPoly a2 = r.partial(gen_u(1, m));
        if (a1.jet_order() >= m || a2.jet_order() >= m)
            throw NotExact("top-order structure is not linear; not a total x-derivative");
        JetPoly pot = a1.antiderivative(gen_u(0, m - 1));
        JetPoly b = a2 - pot.partial(gen_u(1, m - 1));
        if (!b.partial(gen_u(0, m - 1)).is_zero())
            throw NotExact("closure condition fails; not a total x-derivative");
        pot += b.antiderivative(gen_u(1, m - 1));
        q += pot;
        r -= total_x_derivative(pot);
        if (r.jet_order() >= m) throw NotExact("top order did not reduce; not a total x-derivative");
    }
    if (r.jet_order() == 0) throw NotExact("remainder depends on u without u_x; not a total x-derivative");
    if (!r.is_zero()) q += r.antiderivative(kGenX);  // pure (t,x) part
    return q;
}

/// Replaces each monomial of total jet-degree d by coefficient * weight(d).
/// The weight d -> 1/d realizes the homotopy integral int_0^1 lambda^(d-1) dlambda.
inline JetPoly scale_substitute(const JetPoly& p, const std::function<Rational(int)>& weight) {
    JetPoly r;
    for (const auto& [m, c] : p.terms()) r.add_term(m, c * weight(m.jet_degree()));
    return r;
}

inline Rational homotopy_weight(int degree) {
    if (degree == 0)
        throw std::domain_error("homotopy weight 1/d undefined for a jet-degree-0 monomial");
    return Rational(1, degree);
}

inline std::string monomial_string(const Monomial& m) {
    std::string s;
    for (int g = 0; g < kNumGen; ++g) {
        if (!m.e[g]) continue;
        if (!s.empty()) s += '*';
        s += gen_name(g);
        if (m.e[g] > 1) s += '^' + std::to_string(int(m.e[g]));
    }
    return s.empty() ? "1" : s;
}

/// Canonical JSON form: monomials in graded-lex order, exact coefficients
/// as "num/den" strings. Stable across runs; used for golden-file tests.
inline std::string json_string(const JetPoly& p) {
    std::string s = "{\"cap\":" + std::to_string(kJetCap) + ",\"terms\":[";
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) s += ',';
        first = false;
        s += "[\"" + monomial_string(m) + "\",\"" + rat_string(c) + "\"]";
    }
    s += "]}";
    return s;
}

/// Complex expression in jet space, stored as real and imaginary parts.
struct ComplexJetPoly {
    JetPoly re;
    JetPoly im;

    ComplexJetPoly() = default;
    ComplexJetPoly(JetPoly r) : re(std::move(r)) {}
    ComplexJetPoly(JetPoly r, JetPoly i) : re(std::move(r)), im(std::move(i)) {}
    explicit ComplexJetPoly(const CRat& z) : re(JetPoly(z.re)), im(JetPoly(z.im)) {}

    /// u^(k) = u1^(k) + i u2^(k)
    static ComplexJetPoly u(int order = 0) { return {JetPoly::u(0, order), JetPoly::u(1, order)}; }
    static ComplexJetPoly u_bar(int order = 0) {
        return {JetPoly::u(0, order), -JetPoly::u(1, order)};
    }
    static ComplexJetPoly i_unit() { return {JetPoly(), JetPoly(rat(1))}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    ComplexJetPoly conj() const { return {re, -im}; }

    friend ComplexJetPoly operator+(const ComplexJetPoly& a, const ComplexJetPoly& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexJetPoly operator-(const ComplexJetPoly& a, const ComplexJetPoly& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexJetPoly operator-(const ComplexJetPoly& a) { return {-a.re, -a.im}; }
    friend ComplexJetPoly operator*(const ComplexJetPoly& a, const ComplexJetPoly& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexJetPoly operator*(const CRat& z, const ComplexJetPoly& a) {
        return ComplexJetPoly(z) * a;
    }
    friend ComplexJetPoly operator*(const Rational& s, const ComplexJetPoly& a) {
        return {s * a.re, s * a.im};
    }
    friend bool operator==(const ComplexJetPoly& a, const ComplexJetPoly& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline ComplexJetPoly total_x_derivative(const ComplexJetPoly& p) {
    return {total_x_derivative(p.re), total_x_derivative(p.im)};
}
inline ComplexJetPoly total_x_derivative(const ComplexJetPoly& p, int times) {
    return {total_x_derivative(p.re, times), total_x_derivative(p.im, times)};
}
inline ComplexJetPoly total_t_derivative(const ComplexJetPoly& p, const JetPoly& rhs1,
                                         const JetPoly& rhs2) {
    return {total_t_derivative(p.re, rhs1, rhs2), total_t_derivative(p.im, rhs1, rhs2)};
}

/// Wirtinger derivative d/du^(k) = (d/du1^(k) - i d/du2^(k))/2 of a complex
/// jet expression.
inline ComplexJetPoly partial_u(const ComplexJetPoly& p, int order) {
    int g1 = gen_u(0, order), g2 = gen_u(1, order);
    JetPoly re = (p.re.partial(g1) + p.im.partial(g2)) * Rational(1, 2);
    JetPoly im = (p.im.partial(g1) - p.re.partial(g2)) * Rational(1, 2);
    return {re, im};
}

/// Wirtinger derivative d/du_bar^(k) = (d/du1^(k) + i d/du2^(k))/2.
inline ComplexJetPoly partial_u_bar(const ComplexJetPoly& p, int order) {
    int g1 = gen_u(0, order), g2 = gen_u(1, order);
    JetPoly re = (p.re.partial(g1) - p.im.partial(g2)) * Rational(1, 2);
    JetPoly im = (p.im.partial(g1) + p.re.partial(g2)) * Rational(1, 2);
    return {re, im};
}

}  // namespace cmkdv

#endif

#ifndef CMKDV_RATIONAL_HPP
#define CMKDV_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cmkdv {

/// Exact rational coefficient type. All symbolic verification in this
/// library is exact; floating point enters only at evaluation boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline bool is_zero(const Rational& r) { return r.is_zero(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical "num/den" rendering ("num" alone when den == 1).
inline std::string rat_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

/// Parses "p", "p/q", or a plain decimal like "-1.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);  // cpp_int rejects a leading '+'
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-") throw bad();
    // strip leading zeros so cpp_int does not read the string as octal
    bool neg = digits[0] == '-';
    std::string mag = neg ? digits.substr(1) : digits;
    std::size_t nz = mag.find_first_not_of('0');
    mag = (nz == std::string::npos) ? "0" : mag.substr(nz);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    BigInt num(mag);
    if (neg) num = -num;
    return Rational(num, den);
}

/// Exact complex number with rational real and imaginary parts. Used for
/// the equation coefficients alpha, beta and for complex multipliers.
struct CRat {
    Rational re;
    Rational im;

    CRat() = default;
    CRat(Rational r) : re(std::move(r)) {}
    CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    CRat(long long r, long long i = 0) : re(rat(r)), im(rat(i)) {}

    CRat conj() const { return {re, -im}; }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    Rational norm2() const { return re * re + im * im; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator*(const Rational& s, const CRat& a) { return {s * a.re, s * a.im}; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
};

inline std::string crat_string(const CRat& z) {
    if (z.im.is_zero()) return rat_string(z.re);
    Rational mag = z.im < 0 ? Rational(-z.im) : z.im;
    std::string imag = (mag == 1) ? "i" : rat_string(mag) + "i";
    if (z.re.is_zero()) return (z.im < 0 ? "-" : "") + imag;
    return rat_string(z.re) + (z.im < 0 ? "-" : "+") + imag;
}

/// Parses a complex coefficient written as "a", "a+bi", "a-bi", "bi", "i",
/// or as a comma pair "a,b"; components may be rationals or decimals.
inline CRat parse_crat(std::string_view text) {
    std::string s(text);
    // strip spaces
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    auto comma = t.find(',');
    if (comma != std::string::npos)
        return {parse_rational(t.substr(0, comma)), parse_rational(t.substr(comma + 1))};
    // locate a '+' or '-' separating the two parts (skip position 0 and any
    // sign directly following '/', 'e' never occurs in our rational syntax)
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] == '+' || t[i] == '-') split = i;  // last sign wins: a/b has no signs inside
    auto parse_imag = [](std::string part) -> Rational {
        // part ends with 'i'
        part.pop_back();
        if (part.empty() || part == "+") return rat(1);
        if (part == "-") return rat(-1);
        return parse_rational(part);
    };
    bool ends_i = t.back() == 'i' || t.back() == 'I';
    if (split == std::string::npos) {
        if (ends_i) return {rat(0), parse_imag(t)};
        return {parse_rational(t), rat(0)};
    }
    if (!ends_i) throw std::invalid_argument("cannot parse complex literal: '" + std::string(text) + "'");
    return {parse_rational(t.substr(0, split)), parse_imag(t.substr(split))};
}

}  // namespace cmkdv

#endif

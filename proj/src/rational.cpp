#include "copos/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace copos {

Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("exact_rational: value is not finite");
    // cpp_rational constructs exactly from binary64
    return Rational(v);
}

Rational rationalize(double v, double rel_tol) {
    if (!std::isfinite(v)) throw std::invalid_argument("rationalize: value is not finite");
    if (v == 0.0) return Rational(0);
    const double tol = rel_tol * std::fabs(v);
    const bool neg = v < 0;
    double x = std::fabs(v);

    // Continued fraction convergents p_k/q_k of x.
    BigInt p_prev = 1, q_prev = 0;
    BigInt p_cur = BigInt(std::floor(x)), q_cur = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        Rational approx(p_cur, q_cur);
        double err = std::fabs(to_double(approx) - x);
        if (err <= tol) break;
        if (frac <= 0) break;
        double inv = 1.0 / frac;
        double a = std::floor(inv);
        if (a > 9.0e15) break;  // beyond double integer resolution
        BigInt ai = BigInt(a);
        BigInt p_next = ai * p_cur + p_prev;
        BigInt q_next = ai * q_cur + q_prev;
        p_prev = p_cur; q_prev = q_cur;
        p_cur = p_next; q_cur = q_next;
        frac = inv - a;
    }
    Rational r(p_cur, q_cur);
    if (std::fabs(to_double(r) - x) > tol) r = exact_rational(x);  // fall back to the exact value
    return neg ? -r : r;
}

Rational rational_from_literal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in literal: " + text);
        return Rational(num, den);
    }
    std::string digits;
    digits.reserve(text.size());
    bool neg = false;
    long long exp10 = 0;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') { neg = text[i] == '-'; ++i; }
    bool seen_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        digits += text[i];
        seen_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            digits += text[i];
            --exp10;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed numeric literal: " + text);
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i >= text.size()) throw std::invalid_argument("malformed exponent in literal: " + text);
        exp10 += std::strtoll(text.c_str() + i, nullptr, 10);
        bool ok = text[i] == '+' || text[i] == '-' || std::isdigit(static_cast<unsigned char>(text[i]));
        std::size_t j = i + 1;
        for (; j < text.size(); ++j) ok = ok && std::isdigit(static_cast<unsigned char>(text[j]));
        if (!ok) throw std::invalid_argument("malformed exponent in literal: " + text);
    } else if (i != text.size()) {
        throw std::invalid_argument("malformed numeric literal: " + text);
    }
    Rational r(BigInt(digits.empty() ? "0" : digits));
    if (exp10 > 0) r *= pow_rational(Rational(10), exp10);
    if (exp10 < 0) r /= pow_rational(Rational(10), -exp10);
    return neg ? -r : r;
}

Rational pow_rational(const Rational& base, long long e) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (base == 0) throw std::invalid_argument("pow_rational: zero base with negative exponent");
        return Rational(1) / pow_rational(base, -e);
    }
    Rational acc(1), b = base;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k > 0) {
        if (k & 1ULL) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace copos

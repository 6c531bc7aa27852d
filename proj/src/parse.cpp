#include "copos/parse.hpp"

#include <cctype>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

namespace copos {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    int column() const { return static_cast<int>(pos) + 1; }
};

std::string read_number(Cursor& c) {
    std::size_t start = c.pos;
    auto& s = c.s;
    auto digits = [&] {
        while (c.pos < s.size() && std::isdigit(static_cast<unsigned char>(s[c.pos]))) ++c.pos;
    };
    digits();
    if (c.pos < s.size() && s[c.pos] == '.') {
        ++c.pos;
        digits();
    }
    if (c.pos < s.size() && (s[c.pos] == 'e' || s[c.pos] == 'E')) {
        std::size_t mark = c.pos;
        ++c.pos;
        if (c.pos < s.size() && (s[c.pos] == '+' || s[c.pos] == '-')) ++c.pos;
        if (c.pos < s.size() && std::isdigit(static_cast<unsigned char>(s[c.pos]))) {
            digits();
        } else {
            c.pos = mark;  // 'e' belongs to something else
        }
    }
    if (c.pos < s.size() && s[c.pos] == '/') {
        std::size_t mark = c.pos;
        ++c.pos;
        if (c.pos < s.size() && std::isdigit(static_cast<unsigned char>(s[c.pos]))) {
            digits();
        } else {
            c.pos = mark;
        }
    }
    return s.substr(start, c.pos - start);
}

long long read_int(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    if (c.pos < c.s.size() && (c.s[c.pos] == '-' || c.s[c.pos] == '+')) ++c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
    if (c.pos == start || (c.pos == start + 1 && !std::isdigit(static_cast<unsigned char>(c.s[start]))))
        throw ParseError("expected an integer", c.column());
    return std::stoll(c.s.substr(start, c.pos - start));
}

}  // namespace

Signomial parse_polynomial_text(const std::string& text, int min_vars) {
    Cursor c{text};
    std::map<LatticePoint, Rational> terms_by_exp;  // pre-width exponents
    std::vector<std::pair<std::vector<std::pair<int, long long>>, Rational>> raw_terms;
    int n = min_vars;

    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char p = c.peek();
        if (p == '+' || p == '-') {
            sign = p == '-' ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", c.column());
        }
        first = false;

        c.skip_ws();
        Rational coeff(1);
        bool saw_coeff = false;
        if (c.pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[c.pos])) || text[c.pos] == '.')) {
            int col = c.column();
            std::string lit = read_number(c);
            try {
                coeff = rational_from_literal(lit);
            } catch (const std::exception& e) {
                throw ParseError(e.what(), col);
            }
            saw_coeff = true;
        }

        std::vector<std::pair<int, long long>> powers;
        bool expect_factor = false;
        while (true) {
            c.skip_ws();
            if (c.pos < text.size() && text[c.pos] == '*') {
                ++c.pos;
                expect_factor = true;
                c.skip_ws();
            }
            if (c.pos >= text.size() || text[c.pos] != 'x') {
                if (expect_factor) throw ParseError("expected a variable after '*'", c.column());
                break;
            }
            ++c.pos;
            int col = c.column();
            if (c.pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[c.pos])))
                throw ParseError("variables are written x1, x2, ...", col);
            std::size_t start = c.pos;
            while (c.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[c.pos]))) ++c.pos;
            int var = std::stoi(text.substr(start, c.pos - start));
            if (var < 1) throw ParseError("variable indices start at 1", col);
            long long e = 1;
            c.skip_ws();
            if (c.pos < text.size() && text[c.pos] == '^') {
                ++c.pos;
                e = read_int(c);
            }
            powers.emplace_back(var - 1, e);
            n = std::max(n, var);
            expect_factor = false;
        }
        if (!saw_coeff && powers.empty())
            throw ParseError("expected a term", c.column());
        if (coeff == 0) throw ParseError("zero coefficient is not allowed", c.column());
        raw_terms.push_back({std::move(powers), sign > 0 ? coeff : -coeff});
    }
    if (raw_terms.empty()) throw ParseError("empty polynomial", 1);

    std::vector<std::pair<LatticePoint, Rational>> terms;
    for (const auto& [powers, coeff] : raw_terms) {
        LatticePoint e(n, 0);
        for (const auto& [var, exp] : powers) e[var] += exp;
        if (terms_by_exp.count(e))
            throw ParseError("duplicate exponent vector (degenerate input)", 1);
        terms_by_exp[e] = coeff;
        terms.emplace_back(std::move(e), coeff);
    }
    return Signomial::from_exact_terms(n, terms);
}

Signomial parse_polynomial_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw std::invalid_argument("polynomial json: expected {\"n\": int, \"terms\": [...]}");
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("polynomial json: n must be >= 1");
    std::vector<std::pair<LatticePoint, double>> terms;
    for (const auto& t : j.at("terms")) {
        LatticePoint e = t.at("e").get<LatticePoint>();
        if (static_cast<int>(e.size()) != n)
            throw std::invalid_argument("polynomial json: exponent length differs from n");
        terms.emplace_back(std::move(e), t.at("c").get<double>());
    }
    // duplicate detection happens in the support constructor
    return Signomial::from_terms(n, terms);
}

nlohmann::json signomial_to_json(const Signomial& f) {
    nlohmann::json terms = nlohmann::json::array();
    for (int i = 0; i < f.num_terms(); ++i)
        terms.push_back({{"e", f.support.point(i)}, {"c", f.coeff[i]}});
    return {{"n", f.dim()}, {"terms", terms}};
}

std::string signomial_to_text(const Signomial& f) {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < f.num_terms(); ++i) {
        double c = f.coeff[i];
        if (i == 0)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        double mag = std::fabs(c);
        const LatticePoint& e = f.support.point(i);
        bool any_var = false;
        for (long long v : e) any_var = any_var || v != 0;
        if (mag != 1.0 || !any_var) out << mag;
        bool first = true;
        for (int j = 0; j < f.dim(); ++j) {
            if (e[j] == 0) continue;
            if (!first || mag != 1.0 || !any_var) out << "*";
            out << "x" << j + 1;
            if (e[j] != 1) out << "^" << e[j];
            first = false;
        }
    }
    return out.str();
}

}  // namespace copos

#ifndef COPOS_PARSE_HPP
#define COPOS_PARSE_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "copos/signomial.hpp"

namespace copos {

// Parse error with a 1-based column into the input line.
struct ParseError : std::invalid_argument {
    int column;
    ParseError(const std::string& msg, int col)
        : std::invalid_argument(msg + " (column " + std::to_string(col) + ")"), column(col) {}
};

// Grammar: signed sum of terms; term := [coefficient] ['*'] {var '^' int};
// variables x1..xn. Example: "1 + x1^2 + x2^2 + x1^2*x2^2 - x1*x2".
// Coefficients may be integers, decimals, scientific notation, or p/q; the
// exact-rational mirror is populated from the literal.
Signomial parse_polynomial_text(const std::string& text, int min_vars = 0);

// JSON form: {"n": int, "terms": [{"e": [ints], "c": number}]}.
Signomial parse_polynomial_json(const nlohmann::json& j);

nlohmann::json signomial_to_json(const Signomial& f);

std::string signomial_to_text(const Signomial& f);

}  // namespace copos

#endif

#pragma once

// Polynomials with coefficients in F_p, parsed from the shared text syntax:
// integers, variable names, + - * ^ and parentheses, whitespace ignored.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "homolocal/linalg.hpp"

namespace homolocal {

using Exponents = std::vector<int>;
// Monomial -> nonzero coefficient.
using Polynomial = std::map<Exponents, linalg::Elem>;

// Throws ParseError (message carries the column) or UnknownReference for
// names outside `vars`.
Polynomial parse_polynomial(std::string_view text,
                            const std::vector<std::string>& vars,
                            const linalg::PrimeField& field);

// Degree of a monomial under a weight vector.
int weighted_degree(const Exponents& e, const std::vector<int>& weights);

std::string format_monomial(const Exponents& e, const std::vector<std::string>& vars);
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& vars);

}  // namespace homolocal

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ffr/field.hpp"

namespace ffr {

using Monomial = std::vector<std::uint16_t>;  // exponent per variable, length d

// Polynomial over F_q in variables x1..xd, kept as a canonical expanded term
// list: no zero coefficients, no repeated monomials.
struct PolynomialExpr {
  FieldPtr field;
  int dim = 0;
  std::map<Monomial, Elt> terms;

  bool is_zero() const { return terms.empty(); }
  int total_degree() const;

  PolynomialExpr& add_term(const Monomial& mono, Elt coeff);
};

inline constexpr int kDefaultDegreeCap = 8;

// Grammar: integer literals, variables x1..xd, the extension generator
// literal `a` (only when n > 1), operators + - * ^ with nonnegative integer
// exponents, parentheses; whitespace insensitive. Errors carry the 1-based
// character position.
PolynomialExpr parse_polynomial(const std::string& text, FieldPtr field, int dim,
                                int degree_cap = kDefaultDegreeCap);

// Canonical form; parse_polynomial(print_polynomial(P)) == P.
std::string print_polynomial(const PolynomialExpr& poly);

PolynomialExpr poly_add(const PolynomialExpr& a, const PolynomialExpr& b);
PolynomialExpr poly_sub(const PolynomialExpr& a, const PolynomialExpr& b);
PolynomialExpr poly_mul(const PolynomialExpr& a, const PolynomialExpr& b);
PolynomialExpr poly_neg(const PolynomialExpr& a);

Elt evaluate(const PolynomialExpr& poly, std::span<const Elt> coords);

// Exact division step used by the linear-factor search: divisor must be
// monic linear with leading variable `axis`. Returns {quotient, remainder};
// the remainder is free of x_{axis+1}.
std::pair<PolynomialExpr, PolynomialExpr> divide_by_monic_linear(const PolynomialExpr& poly,
                                                                 const PolynomialExpr& divisor,
                                                                 int axis);

}  // namespace ffr

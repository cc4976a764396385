#include "ffr/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace ffr {

int PolynomialExpr::total_degree() const {
  int deg = 0;
  for (const auto& [mono, coeff] : terms)
    deg = std::max(deg, std::accumulate(mono.begin(), mono.end(), 0));
  return deg;
}

PolynomialExpr& PolynomialExpr::add_term(const Monomial& mono, Elt coeff) {
  auto it = terms.find(mono);
  Elt sum = (it == terms.end()) ? coeff : field->add(it->second, coeff);
  if (sum == field->zero()) {
    if (it != terms.end()) terms.erase(it);
  } else {
    terms[mono] = sum;
  }
  return *this;
}

PolynomialExpr poly_add(const PolynomialExpr& a, const PolynomialExpr& b) {
  PolynomialExpr out = a;
  for (const auto& [mono, coeff] : b.terms) out.add_term(mono, coeff);
  return out;
}

PolynomialExpr poly_sub(const PolynomialExpr& a, const PolynomialExpr& b) {
  PolynomialExpr out = a;
  for (const auto& [mono, coeff] : b.terms) out.add_term(mono, b.field->neg(coeff));
  return out;
}

PolynomialExpr poly_neg(const PolynomialExpr& a) {
  PolynomialExpr out = a;
  for (auto& [mono, coeff] : out.terms) coeff = a.field->neg(coeff);
  return out;
}

PolynomialExpr poly_mul(const PolynomialExpr& a, const PolynomialExpr& b) {
  PolynomialExpr out{a.field, a.dim, {}};
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Monomial mono(a.dim);
      for (int i = 0; i < a.dim; ++i)
        mono[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
      out.add_term(mono, a.field->mul(ca, cb));
    }
  return out;
}

Elt evaluate(const PolynomialExpr& poly, std::span<const Elt> coords) {
  const Field& f = *poly.field;
  Elt acc = f.zero();
  for (const auto& [mono, coeff] : poly.terms) {
    Elt term = coeff;
    for (int i = 0; i < poly.dim; ++i)
      if (mono[i] > 0) term = f.mul(term, f.pow(coords[i], mono[i]));
    acc = f.add(acc, term);
  }
  return acc;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what, std::size_t pos) {
  throw std::invalid_argument("parse error at position " + std::to_string(pos + 1) + ": " + what);
}

class Parser {
 public:
  Parser(const std::string& text, FieldPtr field, int dim, int cap)
      : text_(text), field_(std::move(field)), dim_(dim), cap_(cap) {}

  PolynomialExpr run() {
    PolynomialExpr p = expr();
    skip_ws();
    if (pos_ != text_.size()) parse_fail("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void check_cap(const PolynomialExpr& p, std::size_t pos) {
    if (p.total_degree() > cap_)
      parse_fail("exponent overflow: total degree exceeds cap " + std::to_string(cap_), pos);
  }

  PolynomialExpr expr() {
    bool negate = eat('-');
    PolynomialExpr acc = term();
    if (negate) acc = poly_neg(acc);
    for (;;) {
      if (eat('+')) {
        acc = poly_add(acc, term());
      } else if (eat('-')) {
        acc = poly_sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  PolynomialExpr term() {
    PolynomialExpr acc = factor();
    while (eat('*')) {
      std::size_t at = pos_;
      acc = poly_mul(acc, factor());
      check_cap(acc, at);
    }
    return acc;
  }

  PolynomialExpr factor() {
    PolynomialExpr base = atom();
    if (eat('^')) {
      std::size_t at = pos_;
      long exponent = integer_literal("exponent");
      PolynomialExpr acc = constant(field_->one());
      for (long i = 0; i < exponent; ++i) {
        acc = poly_mul(acc, base);
        check_cap(acc, at);
      }
      return acc;
    }
    return base;
  }

  PolynomialExpr atom() {
    skip_ws();
    if (pos_ >= text_.size()) parse_fail("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      PolynomialExpr inner = expr();
      if (!eat(')')) parse_fail("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // reduced mod p digit by digit, so literals of any length are fine
      Elt v = field_->zero();
      Elt ten = field_->from_int(10);
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = field_->add(field_->mul(v, ten), field_->from_int(text_[pos_] - '0'));
        ++pos_;
      }
      return constant(v);
    }
    if (c == 'a') {
      if (field_->n() == 1)
        parse_fail("generator literal 'a' needs an extension field (n > 1)", pos_);
      ++pos_;
      if (field_->q() > 0xFFFF) parse_fail("field too large", pos_);
      // the generator of the polynomial basis: index p
      PolynomialExpr g{field_, dim_, {}};
      g.add_term(Monomial(dim_, 0), Elt(static_cast<std::uint16_t>(field_->p())));
      return g;
    }
    if (c == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        parse_fail("variable must be x1..x" + std::to_string(dim_), at);
      long k = integer_literal("variable index");
      if (k < 1 || k > dim_)
        parse_fail("unknown variable x" + std::to_string(k) + " (d = " + std::to_string(dim_) + ")", at);
      PolynomialExpr v{field_, dim_, {}};
      Monomial mono(dim_, 0);
      mono[k - 1] = 1;
      v.add_term(mono, field_->one());
      return v;
    }
    parse_fail("unexpected '" + std::string(1, c) + "'", pos_);
  }

  long integer_literal(const std::string& what) {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      parse_fail("expected " + what, pos_);
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 100000) parse_fail(what + " too large", at);
      ++pos_;
    }
    return v;
  }

  PolynomialExpr constant(Elt v) {
    PolynomialExpr c{field_, dim_, {}};
    c.add_term(Monomial(dim_, 0), v);
    return c;
  }

  const std::string& text_;
  FieldPtr field_;
  int dim_;
  int cap_;
  std::size_t pos_ = 0;
};

// coefficient as a sub-expression in the generator literal; parenthesized
// when it has several summands and precedes a variable part
std::string coeff_string(const Field& f, Elt c, bool has_vars) {
  if (f.n() == 1) return std::to_string(c.v);
  auto digits = f.coeffs(c);
  std::vector<std::string> parts;
  for (int i = 0; i < f.n(); ++i) {
    if (digits[i] == 0) continue;
    std::string s;
    if (i == 0) {
      s = std::to_string(digits[i]);
    } else {
      if (digits[i] != 1) s = std::to_string(digits[i]) + "*";
      s += "a";
      if (i > 1) s += "^" + std::to_string(i);
    }
    parts.push_back(std::move(s));
  }
  if (parts.empty()) return "0";
  std::string joined = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) joined += " + " + parts[i];
  if (parts.size() > 1 && has_vars) return "(" + joined + ")";
  return joined;
}

}  // namespace

PolynomialExpr parse_polynomial(const std::string& text, FieldPtr field, int dim, int degree_cap) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  Parser parser(text, std::move(field), dim, degree_cap);
  return parser.run();
}

std::string print_polynomial(const PolynomialExpr& poly) {
  if (poly.terms.empty()) return "0";
  const Field& f = *poly.field;
  std::string out;
  // descending monomial order, highest x1-power first
  for (auto it = poly.terms.rbegin(); it != poly.terms.rend(); ++it) {
    const auto& [mono, coeff] = *it;
    bool has_vars = std::any_of(mono.begin(), mono.end(), [](std::uint16_t e) { return e > 0; });
    std::string term;
    if (!has_vars || !(coeff == f.one())) {
      term = coeff_string(f, coeff, has_vars);
    }
    for (int i = 0; i < poly.dim; ++i) {
      if (mono[i] == 0) continue;
      if (!term.empty()) term += "*";
      term += "x" + std::to_string(i + 1);
      if (mono[i] > 1) term += "^" + std::to_string(mono[i]);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

std::pair<PolynomialExpr, PolynomialExpr> divide_by_monic_linear(const PolynomialExpr& poly,
                                                                 const PolynomialExpr& divisor,
                                                                 int axis) {
  const Field& f = *poly.field;
  Monomial lead(poly.dim, 0);
  lead[axis] = 1;
  {
    auto it = divisor.terms.find(lead);
    if (divisor.total_degree() != 1 || it == divisor.terms.end() || !(it->second == f.one()))
      throw std::invalid_argument("divisor must be monic linear in the chosen variable");
  }
  PolynomialExpr quotient{poly.field, poly.dim, {}};
  PolynomialExpr rem = poly;
  for (;;) {
    // lex-largest term with positive exponent in the leading variable
    auto pick = rem.terms.rend();
    for (auto it = rem.terms.rbegin(); it != rem.terms.rend(); ++it)
      if (it->first[axis] > 0) {
        pick = it;
        break;
      }
    if (pick == rem.terms.rend()) break;
    Monomial shifted = pick->first;
    --shifted[axis];
    Elt c = pick->second;
    PolynomialExpr step{poly.field, poly.dim, {}};
    step.add_term(shifted, c);
    quotient = poly_add(quotient, step);
    rem = poly_sub(rem, poly_mul(step, divisor));
  }
  return {quotient, rem};
}

}  // namespace ffr

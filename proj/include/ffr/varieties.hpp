#pragma once

#include <optional>
#include <vector>

#include "ffr/fourier.hpp"
#include "ffr/pointset.hpp"
#include "ffr/polynomial.hpp"

namespace ffr {

// Measured size and Fourier-decay constants of a variety V in F_q^d:
// c_size = |V| / q^(d-1), c_decay = max_{m != 0} |Vhat(m)| * q^((d+1)/2).
// The verdict applies the thresholds; the raw constants are always reported
// so callers can re-judge.
struct RegularityReport {
  std::uint64_t size = 0;
  double c_size = 0.0;
  double c_decay = 0.0;
  bool is_regular = false;
  PointIndex argmax_m = 0;
  double size_lo = 0.5, size_hi = 2.0, decay_cap = 2.0;
};

PointSet zero_set(const PolynomialExpr& poly);

// S_j = {x in F_q^d : ||x|| = j}; cardinality is checked against the
// closed form at construction for d >= 2.
PointSet sphere(FieldPtr field, int dim, Elt radius);
// every sphere at once, indexed by the norm value
std::vector<PointSet> all_spheres(FieldPtr field, int dim);

// closed-form |S_t| for d >= 2
std::uint64_t sphere_cardinality_formula(const Field& field, int dim, Elt t);

// {x : x_1^2 + ... + x_{d-1}^2 = x_d}, exactly q^(d-1) points
PointSet paraboloid(FieldPtr field, int dim);

RegularityReport regularity_report(const PointSet& variety, double size_lo = 0.5,
                                   double size_hi = 2.0, double decay_cap = 2.0);

// All monic linear divisors of a bivariate polynomial, found by exact trial
// division over the q^2 + q candidates x1 + b*x2 + c and x2 + c. An empty
// result makes a regular curve nondegenerate.
std::vector<PolynomialExpr> linear_factor_test(const PolynomialExpr& poly);

// E = {(t_1, i*t_1, ..., t_n, i*t_n, s)} in odd dimension d = 2n+1;
// |E| = q^((d+1)/2) and every k-fold resultant value is a square.
PointSet construct_sharp_example(FieldPtr field, int dim);

// E = {(t_1, i*t_1, ..., t_{d/2}, i*t_{d/2})} in even dimension;
// |E| = q^(d/2) and all resultant sets collapse to {0}.
PointSet construct_isotropic_example(FieldPtr field, int dim);

// E = F_p^d inside F_{p^2}^d; |E| = p^d and distance values stay in the
// prime subfield.
PointSet construct_subfield_example(FieldPtr field, int dim);

// defining polynomials, for reports and the nondegeneracy test
PolynomialExpr sphere_polynomial(FieldPtr field, int dim, Elt radius);
PolynomialExpr paraboloid_polynomial(FieldPtr field, int dim);

}  // namespace ffr

#pragma once

#include <complex>
#include <vector>

#include "ffr/field.hpp"
#include "ffr/pointset.hpp"

namespace ffr {

using cplx = std::complex<double>;

// Complex-valued function on F_q^d, stored densely. Entry for the point
// x = (x_1,...,x_d) sits at the mixed-radix index sum index(x_i) * q^(i-1),
// so x_1 is the fastest-varying coordinate.
struct GridFunction {
  FieldPtr field;
  int dim = 0;
  std::vector<cplx> values;

  GridFunction() = default;
  GridFunction(FieldPtr f, int d);

  static GridFunction indicator(const PointSet& set);
};

// Normalized Fourier transform of a grid function:
// fhat(m) = q^{-d} sum_x chi(-m.x) f(x). Same storage shape as the input.
struct Spectrum {
  FieldPtr field;
  int dim = 0;
  std::vector<cplx> values;
};

// Computed by d successive length-q transforms along each axis; summation
// order is fixed, so results are bit-for-bit deterministic.
Spectrum forward_transform(const GridFunction& f);

// f(x) = sum_m chi(m.x) F(m); no normalization on this side.
GridFunction inverse_transform(const Spectrum& spectrum);

// | sum_m |fhat(m)|^2 - q^{-d} sum_x |f(x)|^2 |
double plancherel_residual(const GridFunction& f);

}  // namespace ffr

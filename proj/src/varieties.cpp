#include "ffr/varieties.hpp"

#include <algorithm>
#include <cmath>

namespace ffr {
namespace {

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

// odometer over F_q^d coordinate vectors in mixed-radix index order
template <typename Fn>
void for_each_point(const Field& field, int dim, Fn&& fn) {
  const std::uint64_t cells = grid_cells(field, dim);
  std::vector<Elt> coords(dim, Elt(0));
  for (std::uint64_t idx = 0; idx < cells; ++idx) {
    fn(static_cast<PointIndex>(idx), coords);
    for (int i = 0; i < dim; ++i) {
      if (++coords[i].v < field.q()) break;
      coords[i].v = 0;
    }
  }
}

}  // namespace

PointSet zero_set(const PolynomialExpr& poly) {
  const Field& f = *poly.field;
  const int d = poly.dim;
  // pow table: x^e for every element and exponent up to the degree
  const int maxdeg = poly.total_degree();
  std::vector<std::vector<Elt>> pow_xe(f.q(), std::vector<Elt>(maxdeg + 1));
  for (std::uint32_t x = 0; x < f.q(); ++x) {
    pow_xe[x][0] = f.one();
    for (int e = 1; e <= maxdeg; ++e) pow_xe[x][e] = f.mul(pow_xe[x][e - 1], Elt(static_cast<std::uint16_t>(x)));
  }
  std::vector<PointIndex> pts;
  for_each_point(f, d, [&](PointIndex idx, const std::vector<Elt>& coords) {
    Elt acc = f.zero();
    for (const auto& [mono, coeff] : poly.terms) {
      Elt term = coeff;
      for (int i = 0; i < d; ++i)
        if (mono[i] > 0) term = f.mul(term, pow_xe[coords[i].v][mono[i]]);
      acc = f.add(acc, term);
    }
    if (acc == f.zero()) pts.push_back(idx);
  });
  return PointSet(poly.field, d, std::move(pts));
}

PolynomialExpr sphere_polynomial(FieldPtr field, int dim, Elt radius) {
  PolynomialExpr p{field, dim, {}};
  for (int i = 0; i < dim; ++i) {
    Monomial mono(dim, 0);
    mono[i] = 2;
    p.add_term(mono, field->one());
  }
  p.add_term(Monomial(dim, 0), field->neg(radius));
  return p;
}

PolynomialExpr paraboloid_polynomial(FieldPtr field, int dim) {
  if (dim < 2) throw std::invalid_argument("paraboloid needs d >= 2");
  PolynomialExpr p{field, dim, {}};
  for (int i = 0; i + 1 < dim; ++i) {
    Monomial mono(dim, 0);
    mono[i] = 2;
    p.add_term(mono, field->one());
  }
  Monomial last(dim, 0);
  last[dim - 1] = 1;
  p.add_term(last, field->neg(field->one()));
  return p;
}

std::vector<PointSet> all_spheres(FieldPtr field, int dim) {
  const Field& f = *field;
  std::vector<std::vector<PointIndex>> buckets(f.q());
  for_each_point(f, dim, [&](PointIndex idx, const std::vector<Elt>& coords) {
    buckets[norm_of(f, coords).v].push_back(idx);
  });
  std::vector<PointSet> spheres;
  spheres.reserve(f.q());
  for (std::uint32_t t = 0; t < f.q(); ++t)
    spheres.emplace_back(field, dim, std::move(buckets[t]));
  if (dim >= 2)
    for (std::uint32_t t = 0; t < f.q(); ++t)
      if (spheres[t].size() != sphere_cardinality_formula(f, dim, Elt(static_cast<std::uint16_t>(t))))
        throw std::logic_error("sphere cardinality disagrees with the closed form");
  return spheres;
}

PointSet sphere(FieldPtr field, int dim, Elt radius) {
  const Field& f = *field;
  std::vector<PointIndex> pts;
  for_each_point(f, dim, [&](PointIndex idx, const std::vector<Elt>& coords) {
    if (norm_of(f, coords) == radius) pts.push_back(idx);
  });
  PointSet s(field, dim, std::move(pts));
  if (dim >= 2 && s.size() != sphere_cardinality_formula(f, dim, radius))
    throw std::logic_error("sphere cardinality disagrees with the closed form");
  return s;
}

std::uint64_t sphere_cardinality_formula(const Field& field, int dim, Elt t) {
  if (dim < 2) throw std::invalid_argument("sphere cardinality formula needs d >= 2");
  const std::uint64_t q = field.q();
  const Elt minus_one = field.neg(field.one());
  if (dim % 2 == 0) {
    const long long v = (t == field.zero()) ? static_cast<long long>(q) - 1 : -1;
    const int eta = field.eta(field.pow(minus_one, dim / 2));
    const long long corr = v * static_cast<long long>(ipow(q, (dim - 2) / 2)) * eta;
    return static_cast<std::uint64_t>(static_cast<long long>(ipow(q, dim - 1)) + corr);
  }
  const int eta = field.eta(field.mul(field.pow(minus_one, (dim - 1) / 2), t));
  const long long corr = static_cast<long long>(ipow(q, (dim - 1) / 2)) * eta;
  return static_cast<std::uint64_t>(static_cast<long long>(ipow(q, dim - 1)) + corr);
}

PointSet paraboloid(FieldPtr field, int dim) {
  if (dim < 2) throw std::invalid_argument("paraboloid needs d >= 2");
  const Field& f = *field;
  grid_cells(f, dim);
  std::vector<PointIndex> pts;
  for_each_point(f, dim - 1, [&](PointIndex, const std::vector<Elt>& prefix) {
    std::vector<Elt> coords(prefix.begin(), prefix.end());
    coords.push_back(norm_of(f, prefix));
    pts.push_back(encode_point(f, coords));
  });
  PointSet p(field, dim, std::move(pts));
  if (p.size() != ipow(f.q(), dim - 1)) throw std::logic_error("paraboloid size mismatch");
  return p;
}

RegularityReport regularity_report(const PointSet& variety, double size_lo, double size_hi,
                                   double decay_cap) {
  if (variety.members.empty()) throw std::invalid_argument("regularity report needs a nonempty variety");
  const Field& f = *variety.field;
  const int d = variety.dim;
  RegularityReport rep;
  rep.size_lo = size_lo;
  rep.size_hi = size_hi;
  rep.decay_cap = decay_cap;
  rep.size = variety.size();
  rep.c_size = static_cast<double>(variety.size()) / std::pow(static_cast<double>(f.q()), d - 1);

  Spectrum spec = forward_transform(GridFunction::indicator(variety));
  double best = -1.0;
  PointIndex best_m = 0;
  for (std::size_t m = 1; m < spec.values.size(); ++m) {
    double mag = std::abs(spec.values[m]);
    if (mag > best) {
      best = mag;
      best_m = static_cast<PointIndex>(m);
    }
  }
  rep.c_decay = (spec.values.size() > 1) ? best * std::pow(static_cast<double>(f.q()), (d + 1) / 2.0) : 0.0;
  rep.argmax_m = best_m;
  rep.is_regular = rep.c_size >= size_lo && rep.c_size <= size_hi && rep.c_decay <= decay_cap;
  return rep;
}

std::vector<PolynomialExpr> linear_factor_test(const PolynomialExpr& poly) {
  if (poly.dim != 2) throw std::invalid_argument("linear-factor test is for bivariate polynomials");
  if (poly.is_zero()) throw std::invalid_argument("linear-factor test rejects the zero polynomial");
  const Field& f = *poly.field;
  FieldPtr fp = poly.field;
  std::vector<PolynomialExpr> factors;

  auto try_divisor = [&](const PolynomialExpr& divisor, int axis) {
    auto [quot, rem] = divide_by_monic_linear(poly, divisor, axis);
    if (rem.is_zero()) factors.push_back(divisor);
  };

  const Monomial mx1{1, 0}, mx2{0, 1}, m1{0, 0};
  for (std::uint32_t b = 0; b < f.q(); ++b)
    for (std::uint32_t c = 0; c < f.q(); ++c) {
      PolynomialExpr cand{fp, 2, {}};
      cand.add_term(mx1, f.one());
      if (b) cand.add_term(mx2, Elt(static_cast<std::uint16_t>(b)));
      if (c) cand.add_term(m1, Elt(static_cast<std::uint16_t>(c)));
      try_divisor(cand, 0);
    }
  for (std::uint32_t c = 0; c < f.q(); ++c) {
    PolynomialExpr cand{fp, 2, {}};
    cand.add_term(mx2, f.one());
    if (c) cand.add_term(m1, Elt(static_cast<std::uint16_t>(c)));
    try_divisor(cand, 1);
  }
  return factors;
}

PointSet construct_sharp_example(FieldPtr field, int dim) {
  if (dim < 3 || dim % 2 == 0) throw std::invalid_argument("sharp example needs odd d >= 3");
  const Field& f = *field;
  grid_cells(f, dim);
  const Elt i = f.sqrt_minus_one();
  const int pairs = (dim - 1) / 2;
  std::vector<PointIndex> pts;
  // free coordinates: (t_1, ..., t_pairs, s)
  for_each_point(f, pairs + 1, [&](PointIndex, const std::vector<Elt>& free) {
    std::vector<Elt> coords;
    coords.reserve(dim);
    for (int j = 0; j < pairs; ++j) {
      coords.push_back(free[j]);
      coords.push_back(f.mul(i, free[j]));
    }
    coords.push_back(free[pairs]);
    pts.push_back(encode_point(f, coords));
  });
  return PointSet(field, dim, std::move(pts));
}

PointSet construct_isotropic_example(FieldPtr field, int dim) {
  if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("isotropic example needs even d >= 2");
  const Field& f = *field;
  grid_cells(f, dim);
  const Elt i = f.sqrt_minus_one();
  const int pairs = dim / 2;
  std::vector<PointIndex> pts;
  for_each_point(f, pairs, [&](PointIndex, const std::vector<Elt>& free) {
    std::vector<Elt> coords;
    coords.reserve(dim);
    for (int j = 0; j < pairs; ++j) {
      coords.push_back(free[j]);
      coords.push_back(f.mul(i, free[j]));
    }
    pts.push_back(encode_point(f, coords));
  });
  return PointSet(field, dim, std::move(pts));
}

PointSet construct_subfield_example(FieldPtr field, int dim) {
  const Field& f = *field;
  if (f.n() != 2) throw std::invalid_argument("subfield example needs a quadratic extension (n = 2)");
  if (dim < 2) throw std::invalid_argument("subfield example needs d >= 2");
  grid_cells(f, dim);
  // prime-subfield elements are exactly the indices below p
  std::vector<PointIndex> pts;
  std::vector<Elt> coords(dim, Elt(0));
  const int p = f.p();
  std::uint64_t count = ipow(static_cast<std::uint64_t>(p), dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t v = i;
    for (int j = 0; j < dim; ++j) {
      coords[j] = Elt(static_cast<std::uint16_t>(v % p));
      v /= p;
    }
    pts.push_back(encode_point(f, coords));
  }
  return PointSet(field, dim, std::move(pts));
}

}  // namespace ffr
